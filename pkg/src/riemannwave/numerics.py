"""Special functions, adaptive quadrature and line fitting.

Everything here is built on one adaptive Gauss-Kronrod integrator so the
special functions can be checked directly against their defining integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ArgumentError, ConvergenceError, DomainError

__all__ = [
    "QuadSpec",
    "LineFit",
    "compensated_sum",
    "zeta",
    "zeta_minus_one",
    "gamma",
    "upper_incomplete_gamma",
    "incomplete_gamma_any",
    "exp_integral_e1",
    "integrate",
    "fit_line",
]

_EPS = np.finfo(float).eps

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[[1, 3, 5]] = _WG[:3]
_GAUSS[[13, 11, 9]] = _WG[:3]
_GAUSS[7] = _WG[3]


@dataclass(frozen=True)
class QuadSpec:
    """Tolerance and refinement limit for :func:`integrate`."""

    abs_tol: float = 1e-10
    max_depth: int = 50

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ArgumentError(f"abs_tol must be positive, got {self.abs_tol}")
        if int(self.max_depth) < 1:
            raise ArgumentError(f"max_depth must be >= 1, got {self.max_depth}")


@dataclass(frozen=True)
class LineFit:
    slope: float
    intercept: float
    r_squared: float
    n_points: int


def compensated_sum(x, axis: int = -1):
    """Sum along ``axis`` with error-free pairwise transformations.

    Each pairwise addition is split into its rounded sum and exact rounding
    error (TwoSum); the collected errors are added back at the end. The
    result is independent of how the caller chunks or schedules work.
    """
    x = np.asarray(x)
    if np.iscomplexobj(x):
        return compensated_sum(x.real, axis) + 1j * compensated_sum(x.imag, axis)
    x = np.moveaxis(x.astype(float, copy=False), axis, -1)
    if x.shape[-1] == 0:
        return np.zeros(x.shape[:-1]) if x.ndim > 1 else 0.0
    err = np.zeros(x.shape[:-1])
    while x.shape[-1] > 1:
        if x.shape[-1] % 2:
            x = np.concatenate([x, np.zeros(x.shape[:-1] + (1,))], axis=-1)
        a = x[..., 0::2]
        b = x[..., 1::2]
        s = a + b
        bb = s - a
        err = err + ((a - (s - bb)) + (b - bb)).sum(axis=-1)
        x = s
    out = x[..., 0] + err
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------- zeta


def _zeta_from(s: float, start: int) -> float:
    # sum_{n >= start} n^-s: direct terms below N, Euler-Maclaurin tail
    # through the B2 term; N makes the first omitted term ~1e-14 relative.
    lead = max(1.0, 1.0 / (s - 1.0)) if start == 1 else float(start) ** (-s)
    omitted = s * (s + 1.0) * (s + 2.0) / 720.0
    N = max(start + 8, 8)
    while omitted * N ** (-s - 3.0) > 1e-15 * lead:
        N *= 2
    n = np.arange(start, N, dtype=float)
    head = compensated_sum(n ** (-s))
    Nf = float(N)
    tail = Nf ** (1.0 - s) / (s - 1.0) + 0.5 * Nf ** (-s) + s * Nf ** (-s - 1.0) / 12.0
    return math.fsum([head, tail])


def zeta(s: float) -> float:
    """Riemann zeta function for real ``s > 1``."""
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"zeta requires s > 1, got {s}")
    return _zeta_from(s, 1)


def zeta_minus_one(s: float) -> float:
    """``zeta(s) - 1`` without the cancellation of forming ``zeta(s)`` first."""
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"zeta requires s > 1, got {s}")
    return _zeta_from(s, 2)


# ---------------------------------------------------------------- quadrature


def _call_vectorized(f, x):
    try:
        y = np.asarray(f(x))
    except (TypeError, ValueError):
        y = np.asarray(np.vectorize(f)(x))
    if y.shape != x.shape:
        if y.ndim == 0:
            y = np.broadcast_to(y, x.shape)
        else:
            y = np.asarray(np.vectorize(f)(x))
    return y


def _map_interval(f, lo, hi):
    """Return finite-interval pieces ``(g, a, b, to_s)`` covering ``[lo, hi]``."""
    lo_inf = math.isinf(lo)
    hi_inf = math.isinf(hi)
    if not lo_inf and not hi_inf:
        return [(f, lo, hi, lambda p: p)]
    if lo_inf and hi_inf:
        return _map_interval(f, -math.inf, 0.0) + _map_interval(f, 0.0, math.inf)

    sign = 1.0 if hi_inf else -1.0
    base = lo if hi_inf else hi

    def g(s):
        one_minus = 1.0 - s
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            t = base + sign * s / one_minus
            jac = 1.0 / (one_minus * one_minus)
            safe = one_minus > 0
            val = _call_vectorized(f, np.where(safe, t, base)) * jac
        return np.where(safe & np.isfinite(val), val, 0.0)

    def to_s(p):
        d = sign * (p - base)
        return d / (1.0 + d)

    return [(g, 0.0, 1.0, to_s)]


def _gk_panels(g, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    y = _call_vectorized(g, x.ravel()).reshape(x.shape)
    kron = half * (y @ _KRONROD)
    gauss = half * (y @ _GAUSS)
    err = np.abs(kron - gauss)
    floor = 50.0 * _EPS * np.abs(half) * (np.abs(y) @ _KRONROD)
    err = np.where(err <= floor, 0.0, err)
    return kron, err


def _adaptive(g, edges, tol, max_depth):
    lo = np.asarray(edges[:-1], dtype=float)
    hi = np.asarray(edges[1:], dtype=float)
    depth = np.zeros(lo.size, dtype=int)
    val, err = _gk_panels(g, lo, hi)
    while True:
        total_err = float(np.sum(err))
        if total_err <= tol:
            return compensated_sum(val), total_err
        # split the fewest largest-error panels that leave <= tol/2 behind
        order = np.argsort(-err, kind="stable")
        remaining = total_err - np.cumsum(err[order])
        k = int(np.searchsorted(-remaining, -0.5 * tol)) + 1
        pick = order[:k]
        pick = pick[err[pick] > 0]
        if pick.size == 0:
            return compensated_sum(val), total_err
        if np.any(depth[pick] >= max_depth):
            raise ConvergenceError(
                f"adaptive quadrature hit max_depth={max_depth} with error "
                f"estimate {total_err:.3g} > {tol:.3g}",
                estimate=compensated_sum(val), error=total_err,
            )
        keep = np.ones(lo.size, dtype=bool)
        keep[pick] = False
        m = 0.5 * (lo[pick] + hi[pick])
        new_lo = np.concatenate([lo[pick], m])
        new_hi = np.concatenate([m, hi[pick]])
        new_depth = np.concatenate([depth[pick], depth[pick]]) + 1
        new_val, new_err = _gk_panels(g, new_lo, new_hi)
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        depth = np.concatenate([depth[keep], new_depth])
        val = np.concatenate([val[keep], new_val])
        err = np.concatenate([err[keep], new_err])


def integrate(f: Callable, lo: float, hi: float, spec: Optional[QuadSpec] = None,
              points: Optional[Sequence[float]] = None, full_output: bool = False):
    """Adaptive Gauss-Kronrod (7/15) quadrature of ``f`` over ``[lo, hi]``.

    Parameters
    ----------
    f : callable
        Integrand. It is called with 1-d float arrays and should return an
        array of the same shape (real or complex); scalar-only callables are
        wrapped with ``np.vectorize``.
    lo, hi : float
        Limits; either may be infinite. A semi-infinite range is mapped onto
        ``[0, 1)`` by ``t = lo + u / (1 - u)``.
    spec : QuadSpec
        Absolute error target and maximal bisection depth.
    points : sequence of float, optional
        Interior break points used for the initial partition.
    full_output : bool
        Also return the final error estimate.

    Returns
    -------
    value or (value, error)

    Raises
    ------
    ConvergenceError
        If a panel that still needs refinement is at ``max_depth``. The
        exception carries the best estimate.
    """
    spec = spec or QuadSpec()
    lo = float(lo)
    hi = float(hi)
    if math.isnan(lo) or math.isnan(hi):
        raise ArgumentError("integration limits must not be NaN")
    if lo == hi:
        return (0.0, 0.0) if full_output else 0.0
    if lo > hi:
        res = integrate(f, hi, lo, spec, points, full_output)
        return (-res[0], res[1]) if full_output else -res

    pieces = _map_interval(f, lo, hi)
    tol = spec.abs_tol / len(pieces)
    total = []
    total_err = 0.0
    for g, a, b, to_s in pieces:
        inner = []
        for p in points or ():
            if a < to_s(p) < b and _inside(p, lo, hi):
                inner.append(to_s(p))
        edges = [a] + sorted(set(inner)) + [b]
        v, e = _adaptive(g, edges, tol, int(spec.max_depth))
        total.append(v)
        total_err += e
    if any(np.iscomplexobj(v) for v in total):
        value = complex(math.fsum(complex(v).real for v in total),
                        math.fsum(complex(v).imag for v in total))
    else:
        value = math.fsum(float(v) for v in total)
    return (value, total_err) if full_output else value


def _inside(p, lo, hi):
    return lo < p < hi


# ---------------------------------------------------------------- Gamma family


def _log_gamma_integrand(x, t):
    with np.errstate(divide="ignore", invalid="ignore"):
        if x == 1.0:
            return -t
        return -t + (x - 1.0) * np.log(t)


def _gamma_piece(x: float, lo: float, hi: float) -> float:
    """``int_lo^hi t^(x-1) e^-t dt`` for ``x >= 1`` or ``lo > 0``.

    The integrand is scaled by its maximum on the range so that an absolute
    tolerance on the scaled integral is a relative tolerance on the result.
    """
    if x > 1.0:
        peak = min(max(x - 1.0, lo), hi)
    else:
        peak = lo
    log_scale = float(_log_gamma_integrand(x, np.float64(peak)))

    def scaled(t):
        return np.exp(_log_gamma_integrand(x, t) - log_scale)

    spec = QuadSpec(abs_tol=1e-14, max_depth=60)
    v = integrate(scaled, lo, hi, spec)
    if v < 1e-2:
        v = integrate(scaled, lo, hi, QuadSpec(abs_tol=max(1e-14 * v, 1e-300), max_depth=60))
    return v * math.exp(log_scale)


def _gamma_head_small_x(x: float, lo: float) -> float:
    """``int_lo^1 t^(x-1) e^-t dt`` for ``0 < x < 1`` via ``u = t^x``."""
    inv = 1.0 / x

    def h(u):
        return np.exp(-np.power(u, inv))

    u0 = lo ** x if lo > 0 else 0.0
    v = integrate(h, u0, 1.0, QuadSpec(abs_tol=1e-15, max_depth=60))
    return v / x


@lru_cache(maxsize=4096)
def _gamma_upper_from(x: float, m: float) -> float:
    return _gamma_piece(x, m, math.inf)


@lru_cache(maxsize=4096)
def gamma(x: float) -> float:
    """Euler Gamma function for real ``x > 0`` from its defining integral."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"gamma requires x > 0, got {x}")
    m = max(1.0, x)
    head = _gamma_head_small_x(x, 0.0) if x < 1.0 else _gamma_piece(x, 0.0, m)
    return head + _gamma_upper_from(x, m)


def upper_incomplete_gamma(x: float, y: float) -> float:
    """Upper incomplete Gamma ``int_y^inf e^-t t^(x-1) dt`` for ``x > 0, y >= 0``."""
    x = float(x)
    y = float(y)
    if not x > 0:
        raise DomainError(f"upper_incomplete_gamma requires x > 0, got x={x}")
    if not y >= 0:
        raise DomainError(f"upper_incomplete_gamma requires y >= 0, got y={y}")
    if y == 0.0:
        return gamma(x)
    m = max(1.0, x)
    if y >= m:
        return _gamma_piece(x, y, math.inf)
    if x < 1.0:
        head = _gamma_head_small_x(x, y)
    else:
        head = _gamma_piece(x, y, m)
    return head + _gamma_upper_from(x, m)


def exp_integral_e1(x: float) -> float:
    """Exponential integral ``E1(x) = int_1^inf e^(-xt) / t dt`` for ``x > 0``."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"exp_integral_e1 requires x > 0, got {x}")
    if x >= 1.0:
        # u = x t, then u = x + s: E1 = e^-x int_0^inf e^-s / (x + s) ds
        v = integrate(lambda s: np.exp(-s) / (x + s), 0.0, math.inf,
                      QuadSpec(abs_tol=1e-15 / x, max_depth=60))
        return v * math.exp(-x)
    # u = x t = e^w: E1 = int_{ln x}^inf exp(-e^w) dw
    return integrate(lambda w: np.exp(-np.exp(w)), math.log(x), math.inf,
                     QuadSpec(abs_tol=1e-14, max_depth=60))


def incomplete_gamma_any(s: float, y: float) -> float:
    """``Gamma(s, y)`` for any real ``s`` and ``y > 0``.

    Non-positive ``s`` is reached from ``s + k`` (or from ``E1`` when ``s`` is
    an integer) through ``Gamma(s, y) = (Gamma(s+1, y) - y^s e^-y) / s``.
    """
    if s > 0:
        return upper_incomplete_gamma(s, y)
    if not y > 0:
        raise DomainError("Gamma(s, y) with s <= 0 requires y > 0")
    k = int(math.floor(-s)) + 1
    top = s + k
    if abs(top - 1.0) < 1e-15 or abs(s - round(s)) < 1e-15:
        k = int(round(-s))
        top = 0.0
        value = exp_integral_e1(y)
    else:
        value = upper_incomplete_gamma(top, y)
    for j in range(1, k + 1):
        sj = top - j
        value = (value - math.exp(sj * math.log(y) - y)) / sj
    return value


# ---------------------------------------------------------------- fitting


def fit_line(xs: Sequence[float], ys: Sequence[float]) -> LineFit:
    """Ordinary least-squares line through ``(xs, ys)``."""
    x = np.asarray(xs, dtype=float).ravel()
    y = np.asarray(ys, dtype=float).ravel()
    if x.size != y.size:
        raise ArgumentError("xs and ys must have the same length")
    if x.size < 2:
        raise ArgumentError("fit_line needs at least 2 points")
    xc = x - x.mean()
    sxx = float(np.dot(xc, xc))
    if sxx == 0.0:
        raise ArgumentError("fit_line needs at least two distinct xs")
    yc = y - y.mean()
    slope = float(np.dot(xc, yc)) / sxx
    intercept = float(y.mean() - slope * x.mean())
    ss_tot = float(np.dot(yc, yc))
    resid = y - (slope * x + intercept)
    ss_res = float(np.dot(resid, resid))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return LineFit(slope=slope, intercept=intercept,
                   r_squared=min(1.0, max(0.0, r2)), n_points=int(x.size))
