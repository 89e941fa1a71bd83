"""How far R_{alpha,beta} strays from sin(pi x), and a look at the point x = 1.

The L2 fluctuation does not depend on the integer beta, while interval
means approach the mean of sin(pi x) as beta grows. At x = 1 the (2, 2)
transform has two independent evaluations, a direct sum and its theta
dual, and their decay saturates at slope 1.

    python3 demos/fluctuation_and_theta.py
"""

import numpy as np

from riemannwave import (SeriesParams, fit_line, interval_mean, l2_fluctuation,
                         theta_w_at_one_direct, theta_w_at_one_poisson, zeta)


def main():
    print("L2 fluctuation around sin(pi x), alpha = 2 (expected zeta(4) - 1 = "
          f"{zeta(4) - 1:.7f})")
    for beta in (1, 2, 3, 5, 10):
        print(f"  beta = {beta:>2}: {l2_fluctuation(SeriesParams(2, beta)):.7f}")

    print("\nmean over [0.3, 1.1] against the mean of sin(pi x)")
    for beta in (2, 4, 6, 10):
        rep = interval_mean(SeriesParams(2, beta), 0.3, 1.1)
        print(f"  beta = {beta:>2}: mean R {rep.mean_r:+.6f}  mean sin {rep.mean_s:+.6f}  "
              f"gap {rep.deviation:.2e} <= {rep.bound:.2e}")

    print("\ntransform at b = 1 for (2, 2): direct sum vs theta dual")
    for a in (0.05, 0.2, 1.0, 5.0):
        d, q = theta_w_at_one_direct(a), theta_w_at_one_poisson(a)
        print(f"  a = {a:<5} direct {d.imag:+.15e}  dual {q.imag:+.15e}")
    a = np.logspace(-5, -2, 24)
    w = [abs(theta_w_at_one_poisson(x)) for x in a]
    slope = fit_line(np.log(a), np.log(w)).slope
    print(f"  decay slope on [1e-5, 1e-2]: {slope:.4f} (one vanishing moment caps it at 1)")


if __name__ == "__main__":
    main()
