"""Recover R_{2,2} from its wavelet transform.

The inverse transform is truncated to scales in [eps, r]; shrinking eps
and growing r drives the result towards the series value. Takes about a
minute.

    python3 demos/reconstruction_demo.py
"""

import time

from riemannwave import ReconParams, SeriesParams, reconstruct_approx, riemann_eval


def main():
    p = SeriesParams(2, 2)
    for x in (0.3, 0.7):
        target = riemann_eval(p, x, 1e-7)
        print(f"x = {x}: R = {target:+.8f}")
        for eps, r in ((1e-2, 1e2), (1e-3, 1e3), (5e-4, 2e3)):
            t0 = time.perf_counter()
            value = reconstruct_approx(p, x, ReconParams(eps=eps, r=r))
            print(f"  eps = {eps:.0e}, r = {r:.0e}: {value:+.8f}  error {abs(value - target):.2e}"
                  f"  ({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
