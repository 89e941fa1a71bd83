"""Command-line front end.

Every subcommand writes a CSV table to ``--out`` (standard output by
default) and, where a curve makes sense, an SVG plot to ``--svg``.

Exit codes: 0 success, 2 invalid arguments, 3 convergence or consistency
failure, 4 parameters outside the scope of a result, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import cwt, fluctuation, holder, reconstruction, series
from .errors import (ArgumentError, ConsistencyError, ConvergenceError, DomainError,
                     ScopeError, SpecificationError)
from .io import emit_svg, write_csv
from .numerics import QuadSpec, fit_line, zeta_minus_one

__all__ = ["build_parser", "main", "run"]

EXIT_OK = 0
EXIT_ARGUMENT = 2
EXIT_CONVERGENCE = 3
EXIT_SCOPE = 4
EXIT_IO = 5


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGUMENT, f"{self.prog}: error: {message}\n")


def _params(ns) -> series.SeriesParams:
    return series.SeriesParams(ns.alpha, ns.beta)


def _scales(ns):
    if not (0 < ns.amin < ns.amax):
        raise ArgumentError(f"need 0 < --amin < --amax, got {ns.amin}, {ns.amax}")
    if ns.nscales < 2:
        raise ArgumentError("--nscales must be at least 2")
    return np.logspace(math.log10(ns.amin), math.log10(ns.amax), ns.nscales)


def _svg(ns, points, **labels):
    if getattr(ns, "svg", None):
        emit_svg(points, ns.svg, **labels)


# ------------------------------------------------------------------ commands


def cmd_eval(ns, out):
    p = _params(ns)
    if ns.points < 2:
        raise ArgumentError("--points must be at least 2")
    xs = np.linspace(ns.x_from, ns.x_to, ns.points)
    n_terms = series.truncation_terms(p, ns.tol).n_terms
    if n_terms > series.MAX_TERMS:
        raise ConvergenceError(f"--tol {ns.tol} needs {n_terms} terms")
    values = series.riemann_partial(p, xs, n_terms)
    write_csv(out, ["x", "r", "sin_pi_x"],
              zip(xs, values, series.sin_baseline(xs)))
    _svg(ns, list(zip(xs, values)), title=f"R_{{{ns.alpha:g},{ns.beta:g}}}", xlabel="x")


def cmd_cwt(ns, out):
    p = _params(ns)
    scales = _scales(ns)
    if ns.npos < 1:
        raise ArgumentError("--npos must be at least 1")
    positions = np.linspace(ns.bmin, ns.bmax, ns.npos)
    sg = cwt.scalogram(p, scales, positions, ns.tol)
    rows = ((a, b, w.real, w.imag, abs(w))
            for a, row in zip(sg.scales, sg.values) for b, w in zip(sg.positions, row))
    write_csv(out, ["a", "b", "re_w", "im_w", "abs_w"], rows)
    peak = sg.modulus.max(axis=1)
    if np.all(peak > 0):
        _svg(ns, list(zip(np.log10(scales), np.log10(peak))),
             title="max_b |W(a,b)|", xlabel="log10 a", ylabel="log10 |W|")


def _exponent_table(out, ns, fit: holder.ExponentFit):
    la, lw = np.log(fit.scales), np.log(fit.moduli)
    write_csv(out, ["a", "abs_w", "log_a", "log_abs_w"],
              zip(fit.scales, fit.moduli, la, lw), footer=fit.summary())
    _svg(ns, list(zip(np.log10(fit.scales), np.log10(fit.moduli))),
         title=f"slope {fit.slope:.4f}", xlabel="log10 a", ylabel="log10 |W(a,0)|")


def cmd_exponent(ns, out):
    fit = holder.estimate_uniform_exponent(_params(ns), ns.amin, ns.amax, ns.nscales,
                                           abs_tol=ns.tol)
    _exponent_table(out, ns, fit)


def cmd_nonharmonic(ns, out):
    if ns.preset == "riemann":
        spec = series.riemann_spec(_params(ns))
    else:
        spec = series.perturbed_spec(ns.alpha, ns.beta)
    fit = holder.estimate_nonharmonic_exponent(spec, ns.amin, ns.amax, ns.nscales)
    _exponent_table(out, ns, fit)


def cmd_envelope(ns, out):
    p = _params(ns)
    scales = _scales(ns)
    rows = []
    for a in scales:
        env = holder.envelope(p, a)
        c = a * math.pi
        w = abs(cwt.cwt_analytic(p, a, 0.0, 1e-10 * c * math.exp(-c)))
        rows.append((a, env.lower, w, env.upper))
    write_csv(out, ["a", "lower", "abs_w", "upper"], rows)
    _svg(ns, [(math.log10(r[0]), math.log10(r[2])) for r in rows],
         title="|W(a,0)|", xlabel="log10 a", ylabel="log10 |W|")


def cmd_fluct(ns, out):
    quad = QuadSpec(abs_tol=ns.tol)
    rows = []
    for beta in ns.beta:
        p = series.SeriesParams(ns.alpha, beta)
        measured = fluctuation.l2_fluctuation(p, quad)
        theory = zeta_minus_one(2.0 * ns.alpha)
        rows.append((beta, measured, theory, abs(measured - theory)))
    write_csv(out, ["beta", "l2_measured", "l2_theoretical", "abs_err"], rows)


def cmd_mean(ns, out):
    rows = []
    for beta in ns.beta:
        rep = fluctuation.interval_mean(series.SeriesParams(ns.alpha, beta), ns.lo, ns.hi, ns.tol)
        rows.append((beta, ns.lo, ns.hi, rep.mean_r, rep.mean_s, rep.bound))
    write_csv(out, ["beta", "lo", "hi", "mean_r", "mean_s", "bound"], rows)


def cmd_reconstruct(ns, out):
    p = _params(ns)
    rp = reconstruction.ReconParams(ns.eps, ns.r, ns.halfwidth, QuadSpec(abs_tol=ns.tol))
    rows = []
    for x in ns.x:
        f_true = series.riemann_eval(p, x, ns.eval_tol)
        f_recon = reconstruction.reconstruct_approx(p, x, rp)
        rows.append((x, f_true, f_recon, abs(f_recon - f_true), ns.eps, ns.r))
    write_csv(out, ["x", "f_true", "f_recon", "abs_err", "eps", "r"], rows)


def cmd_theta_check(ns, out):
    rows = []
    for a in ns.a:
        d = holder.theta_w_at_one_direct(a)
        q = holder.theta_w_at_one_poisson(a)
        rows.append((a, d.imag, q.imag, abs(d - q) / abs(d)))
    scales = np.logspace(math.log10(ns.amin), math.log10(ns.amax), ns.nscales)
    moduli = np.array([abs(holder.theta_w_at_one_poisson(a)) for a in scales])
    fit = fit_line(np.log(scales), np.log(moduli))
    write_csv(out, ["a", "direct_im", "poisson_im", "rel_diff"], rows,
              footer={"slope": fit.slope, "intercept": fit.intercept,
                      "r_squared": fit.r_squared, "window": [ns.amin, ns.amax]})
    _svg(ns, list(zip(np.log10(scales), np.log10(moduli))),
         title="|W(a,1)| for R_{2,2}", xlabel="log10 a", ylabel="log10 |W|")


def cmd_pointwise(ns, out):
    rep = holder.pointwise_decay_check(_params(ns), ns.x0, ns.exponent, ns.window,
                                       (ns.nscales, ns.npos))
    rows = ((a, b, ratio) for a, row in zip(rep.scales, rep.ratio)
            for b, ratio in zip(rep.positions, row))
    write_csv(out, ["a", "b", "ratio"], rows,
              footer={"x0": rep.x0, "exponent": rep.exponent, "c_min": rep.c_min,
                      "local_slope": rep.local_slope, "growth_rate": rep.growth_rate,
                      "growing": rep.growing})


# ------------------------------------------------------------------ parser


def _add_params(p, beta_many=False):
    p.add_argument("--alpha", type=float, required=True)
    if beta_many:
        p.add_argument("--beta", type=float, nargs="+", required=True)
    else:
        p.add_argument("--beta", type=float, required=True)


def _add_output(p, svg=True):
    p.add_argument("--out", default="-", help="CSV destination (default: stdout)")
    if svg:
        p.add_argument("--svg", help="optional SVG plot path")


def _add_window(p, amin=1e-6, amax=1e-3, nscales=32):
    p.add_argument("--amin", type=float, default=amin)
    p.add_argument("--amax", type=float, default=amax)
    p.add_argument("--nscales", type=int, default=nscales)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="riemannwave",
                     description="Wavelet analysis of generalized Riemann functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="sample R_{alpha,beta} on a grid")
    _add_params(p)
    p.add_argument("--from", dest="x_from", type=float, default=-1.0)
    p.add_argument("--to", dest="x_to", type=float, default=3.0)
    p.add_argument("--points", type=int, default=4001)
    p.add_argument("--tol", type=float, default=1e-4, help="series truncation error")
    _add_output(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cwt", help="scalogram of the closed-form transform")
    _add_params(p)
    _add_window(p, 1e-4, 1.0, 16)
    p.add_argument("--bmin", type=float, default=-1.0)
    p.add_argument("--bmax", type=float, default=1.0)
    p.add_argument("--npos", type=int, default=41)
    p.add_argument("--tol", type=float, default=1e-12)
    _add_output(p)
    p.set_defaults(func=cmd_cwt)

    p = sub.add_parser("exponent", help="log-log fit of |W(a,0)|")
    _add_params(p)
    _add_window(p)
    p.add_argument("--tol", type=float, default=None,
                   help="absolute accuracy of each |W| (default: relative 1e-9)")
    _add_output(p)
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("envelope", help="analytic bounds around |W(a,0)|")
    _add_params(p)
    _add_window(p, 1e-6, 10.0, 64)
    _add_output(p)
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("fluct", help="squared deviation from sin(pi x) over a period")
    _add_params(p, beta_many=True)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_output(p, svg=False)
    p.set_defaults(func=cmd_fluct)

    p = sub.add_parser("mean", help="interval means of R and sin(pi x)")
    _add_params(p, beta_many=True)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    _add_output(p, svg=False)
    p.set_defaults(func=cmd_mean)

    p = sub.add_parser("reconstruct", help="truncated inverse wavelet transform")
    _add_params(p)
    p.add_argument("--x", type=float, nargs="+", required=True)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--r", type=float, default=1e3)
    p.add_argument("--halfwidth", type=float, default=1e3)
    p.add_argument("--tol", type=float, default=1e-6, help="quadrature tolerance")
    p.add_argument("--eval-tol", type=float, default=1e-6, help="accuracy of the reference R(x)")
    _add_output(p, svg=False)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("theta-check", help="W(a,1) of R_{2,2} by direct and dual theta sums")
    p.add_argument("--a", type=float, nargs="+", default=[0.05, 0.2, 1.0, 5.0])
    _add_window(p, 1e-5, 1e-2, 32)
    _add_output(p)
    p.set_defaults(func=cmd_theta_check)

    p = sub.add_parser("pointwise", help="pointwise decay scan around x0")
    _add_params(p)
    p.add_argument("--x0", type=float, required=True)
    p.add_argument("--exponent", type=float, required=True)
    p.add_argument("--window", type=float, default=1e-2)
    p.add_argument("--nscales", type=int, default=24)
    p.add_argument("--npos", type=int, default=41)
    _add_output(p, svg=False)
    p.set_defaults(func=cmd_pointwise)

    p = sub.add_parser("nonharmonic", help="log-log fit for a preset nonharmonic series")
    p.add_argument("--preset", choices=["riemann", "perturbed"], default="perturbed")
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--beta", type=float, default=2.0)
    _add_window(p)
    _add_output(p)
    p.set_defaults(func=cmd_nonharmonic)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if ns.out == "-":
            ns.func(ns, sys.stdout)
        else:
            with open(ns.out, "w", encoding="utf-8", newline="") as fh:
                ns.func(ns, fh)
    except ScopeError as exc:
        print(f"scope error: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except (ArgumentError, DomainError, SpecificationError) as exc:
        print(f"argument error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except (ConvergenceError, ConsistencyError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


run = main


if __name__ == "__main__":
    sys.exit(main())
