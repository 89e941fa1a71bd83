"""Uniform Hölder exponents read off the decay of the Lusin transform.

For a bounded function the uniform exponent ``h`` is tied to the decay
``sup_b |W(a, b)| <= C a^h`` as ``a -> 0``. For ``R_{alpha,beta}`` every
term of the transform at ``b = 0`` is positive, so the supremum over ``b``
is attained there and the decay is a one-variable problem::

    |W(a, 0)| = a pi sum_n n^(beta - alpha) exp(-a pi n^beta)

This module gives the exponents predicted by theory, explicit envelopes
for ``|W(a, 0)|``, log-log regressions of the scalogram, a pointwise decay
scan and the theta-function computation of ``W(a, 1)`` for ``R_{2,2}``.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .cwt import cwt_analytic, cwt_nonharmonic
from .errors import ArgumentError, DomainError, ScopeError
from .numerics import (LineFit, QuadSpec, compensated_sum, exp_integral_e1, fit_line,
                       gamma, integrate, upper_incomplete_gamma)
from .series import NonharmonicSpec, SeriesParams

__all__ = [
    "TheoreticalExponent",
    "EnvelopePair",
    "ExponentFit",
    "PointwiseReport",
    "theoretical_exponent",
    "envelope",
    "envelope_index",
    "estimate_uniform_exponent",
    "estimate_nonharmonic_exponent",
    "pointwise_decay_check",
    "theta_w_at_one_direct",
    "theta_w_at_one_poisson",
    "decay_integral",
    "decay_integral_closed_form",
]

DEFAULT_REL_TOL = 1e-9
GROWTH_THRESHOLD = 0.05


@dataclass(frozen=True)
class TheoreticalExponent:
    value: float
    regime: str


@dataclass(frozen=True)
class EnvelopePair:
    """Analytic bounds ``lower <= |W(a, 0)| <= upper`` at one scale."""

    lower: float
    upper: float
    scale: float

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ArgumentError(f"envelope lower {self.lower} exceeds upper {self.upper}")

    def contains(self, value: float, rel_slack: float = 1e-12) -> bool:
        return (self.lower * (1 - rel_slack) <= value <= self.upper * (1 + rel_slack))


@dataclass(frozen=True)
class ExponentFit:
    """Log-log fit of ``|W(a, 0)|`` against ``a``.

    ``log_correction`` is set in the critical regime, where the modulus
    behaves like ``a log(1/a)`` and the fitted slope approaches 1 only
    logarithmically slowly.
    """

    fit: LineFit
    theoretical: TheoreticalExponent
    scale_window: Tuple[float, float]
    n_scales: int
    scales: np.ndarray
    moduli: np.ndarray
    log_correction: bool = False

    @property
    def slope(self) -> float:
        return self.fit.slope

    def summary(self) -> dict:
        return {
            "slope": self.fit.slope,
            "intercept": self.fit.intercept,
            "r_squared": self.fit.r_squared,
            "theoretical": self.theoretical.value,
            "regime": self.theoretical.regime,
            "log_correction": self.log_correction,
        }


@dataclass(frozen=True)
class PointwiseReport:
    """Outcome of :func:`pointwise_decay_check`.

    ``c_min`` is the smallest constant for which
    ``|W(a,b)| <= C a^h (1 + (|b - x0| / a)^h)`` holds on the grid.
    ``growth_rate`` is the power-law rate at which the largest ratio per
    scale increases as ``a`` decreases over the finer half of the scales;
    ``growing`` flags a rate above ``GROWTH_THRESHOLD``, a hint that no finite
    constant works as ``a -> 0``.
    """

    x0: float
    exponent: float
    c_min: float
    local_slope: float
    growth_rate: float
    growing: bool
    scales: np.ndarray
    positions: np.ndarray
    ratio: np.ndarray


# ------------------------------------------------------------------ theory


def theoretical_exponent(params: SeriesParams) -> TheoreticalExponent:
    regime = params.regime
    if regime == "rough":
        return TheoreticalExponent((params.alpha - 1.0) / params.beta, regime)
    return TheoreticalExponent(1.0, regime)


def envelope_index(params: SeriesParams, a: float) -> int:
    """``N_a = floor(((beta - alpha) / (a pi beta))^(1/beta)) + 1``, the summand's peak."""
    alpha, beta = params.alpha, params.beta
    if beta < alpha:
        return 1
    return math.floor(((beta - alpha) / (a * math.pi * beta)) ** (1.0 / beta)) + 1


def _gamma_constant(alpha, beta):
    """``(1/beta) pi^((alpha-1)/beta) Gamma((1+beta-alpha)/beta)``."""
    return math.pi ** ((alpha - 1.0) / beta) * gamma((1.0 + beta - alpha) / beta) / beta


def envelope(params: SeriesParams, a: float) -> EnvelopePair:
    """Explicit lower and upper bounds for ``|W(a, 0)|``.

    The bounds come from comparing the positive series with integrals of
    ``x^(beta-alpha) exp(-a pi x^beta)``, split at the summand's peak when
    ``beta >= alpha``. Outside ``beta >= alpha - 1`` no such bounds are
    available and :class:`ScopeError` is raised.
    """
    a = float(a)
    if not a > 0:
        raise DomainError(f"scale must be positive, got {a}")
    alpha, beta = params.alpha, params.beta
    regime = params.regime
    if regime == "differentiable":
        raise ScopeError(f"envelopes need beta >= alpha - 1, got alpha={alpha}, beta={beta}")
    c = a * math.pi
    if regime == "critical":
        tail = c / (alpha - 1.0) * exp_integral_e1(c)
        return EnvelopePair(lower=tail, upper=c * math.exp(-c) + tail, scale=a)

    h = (alpha - 1.0) / beta
    s = (beta - alpha + 1.0) / beta
    if beta < alpha or a > 1.0:
        lower = c ** h * upper_incomplete_gamma(s, c) / beta
        upper = c * math.exp(-c) + c * _gamma_constant(alpha, beta) * a ** (h - 1.0)
    else:
        shift = ((beta - alpha) / beta) ** (1.0 / beta) + c ** (1.0 / beta)
        lower = c ** h * upper_incomplete_gamma(s, shift ** beta) / beta
        peak = (((beta - alpha) / (math.pi * beta)) ** (1.0 / beta) + 1.0) ** (beta - alpha + 1.0)
        upper = a ** h * math.pi * (peak + _gamma_constant(alpha, beta))
    return EnvelopePair(lower=lower, upper=upper, scale=a)


def decay_integral(params: SeriesParams, a: float, quad: Optional[QuadSpec] = None) -> float:
    """Quadrature of ``int_0^inf exp(-a pi x^beta) x^(beta-alpha) dx``.

    With ``x = u^k`` and ``k = 1/(beta - alpha + 1)`` the integrand becomes
    ``k exp(-a pi u^(k beta))``, which is bounded at the origin.
    """
    alpha, beta = params.alpha, params.beta
    if not beta > alpha - 1.0:
        raise ScopeError("the decay integral converges only for beta > alpha - 1")
    k = 1.0 / (beta - alpha + 1.0)
    c = float(a) * math.pi
    p = k * beta
    # the integrand is k at the origin and decays past u ~ c^(-1/p)
    width = c ** (-1.0 / p)
    points = [width * 2.0 ** j for j in range(-4, 7)]
    spec = quad or QuadSpec(abs_tol=1e-13 * k * width)
    return integrate(lambda u: k * np.exp(-c * u ** p), 0.0, math.inf, spec, points=points)


def decay_integral_closed_form(params: SeriesParams, a: float) -> float:
    """``(1/beta) (a pi)^((alpha-1)/beta - 1) Gamma((1+beta-alpha)/beta)``.

    Obtained from ``u = a pi x^beta``. Note that the constant
    ``(1/beta) pi^((alpha-1)/beta) Gamma(...)`` used by :func:`envelope` for
    its upper bound is ``pi`` times larger, which keeps that bound valid.
    """
    alpha, beta = params.alpha, params.beta
    if not beta > alpha - 1.0:
        raise ScopeError("the decay integral converges only for beta > alpha - 1")
    h = (alpha - 1.0) / beta
    c = float(a) * math.pi
    return c ** (h - 1.0) * gamma((1.0 + beta - alpha) / beta) / beta


# ------------------------------------------------------------------ estimation


def _log_scales(a_min, a_max, n_scales):
    if not (0 < a_min < a_max):
        raise ArgumentError(f"need 0 < a_min < a_max, got {a_min}, {a_max}")
    if int(n_scales) < 8:
        raise ArgumentError(f"n_scales must be >= 8, got {n_scales}")
    return np.logspace(math.log10(a_min), math.log10(a_max), int(n_scales))


def _modulus_at_zero(params, a, abs_tol, rel_tol):
    if abs_tol is None:
        # every term is positive, so |W(a,0)| >= a pi exp(-a pi)
        c = a * math.pi
        abs_tol = max(rel_tol * c * math.exp(-c), 1e-300)
    return abs(cwt_analytic(params, a, 0.0, abs_tol))


def estimate_uniform_exponent(params: SeriesParams, a_min: float = 1e-6, a_max: float = 1e-3,
                              n_scales: int = 32, abs_tol: Optional[float] = None,
                              rel_tol: float = DEFAULT_REL_TOL) -> ExponentFit:
    """Fit ``log |W(a, 0)|`` against ``log a`` on log-spaced scales.

    ``abs_tol`` fixes the accuracy of every transform value. When it is
    omitted each value is computed to ``rel_tol`` relative accuracy, which
    keeps the regression meaningful at scales where ``|W|`` is tiny.
    """
    scales = _log_scales(a_min, a_max, n_scales)
    moduli = np.array([_modulus_at_zero(params, a, abs_tol, rel_tol) for a in scales])
    fit = fit_line(np.log(scales), np.log(moduli))
    theory = theoretical_exponent(params)
    return ExponentFit(fit=fit, theoretical=theory, scale_window=(float(a_min), float(a_max)),
                       n_scales=int(n_scales), scales=scales, moduli=moduli,
                       log_correction=theory.regime == "critical")


def estimate_nonharmonic_exponent(spec: NonharmonicSpec, a_min: float = 1e-6,
                                  a_max: float = 1e-3, n_scales: int = 32, b: float = 0.0,
                                  rel_tol: float = DEFAULT_REL_TOL) -> ExponentFit:
    """Log-log fit of ``|W S(a, b)|`` for a nonharmonic series.

    For coefficients of a common phase the modulus at ``b = 0`` is the
    supremum over ``b``; the reported theory is ``(alpha - 1) / beta`` when
    ``beta > alpha - 1``.
    """
    scales = _log_scales(a_min, a_max, n_scales)
    moduli = np.empty(scales.size)
    for i, a in enumerate(scales):
        rough = abs(cwt_nonharmonic(spec, a, b, 1e-3 * a * spec.C1 * spec.C3))
        tol = rel_tol * rough if rough > 0 else 1e-300
        moduli[i] = abs(cwt_nonharmonic(spec, a, b, tol))
    fit = fit_line(np.log(scales), np.log(moduli))
    theory = theoretical_exponent(SeriesParams(spec.alpha, spec.beta))
    return ExponentFit(fit=fit, theoretical=theory, scale_window=(float(a_min), float(a_max)),
                       n_scales=int(n_scales), scales=scales, moduli=moduli,
                       log_correction=theory.regime == "critical")


def pointwise_decay_check(params: SeriesParams, x0: float, exponent: float, window: float,
                          grid: Sequence[int] = (24, 41), decades: float = 4.0,
                          rel_tol: float = DEFAULT_REL_TOL) -> PointwiseReport:
    """Scan ``|W(a, b)|`` around ``x0`` against the pointwise profile of exponent ``h``.

    Scales are ``grid[0]`` log-spaced values in ``[window 10^-decades, window]``
    and positions ``grid[1]`` equispaced values in ``[x0 - window, x0 + window]``
    (``x0`` itself is always included). The local slope is the log-log
    regression of ``|W(a, x0)|`` over the scales.
    """
    if not 0 < exponent < 1:
        raise DomainError(f"exponent must lie in (0, 1), got {exponent}")
    if not window > 0:
        raise DomainError(f"window must be positive, got {window}")
    n_a, n_b = (int(g) for g in grid)
    if n_a < 2 or n_b < 1:
        raise ArgumentError("grid needs at least 2 scales and 1 position")
    scales = np.logspace(math.log10(window) - decades, math.log10(window), n_a)
    offsets = np.linspace(-window, window, n_b)
    offsets = np.union1d(offsets, [0.0])
    positions = x0 + offsets
    moduli = np.empty((n_a, positions.size))
    for i, a in enumerate(scales):
        c = a * math.pi
        moduli[i] = np.abs(cwt_analytic(params, a, positions, rel_tol * c * math.exp(-c)))
    h = float(exponent)
    profile = scales[:, None] ** h * (1.0 + (np.abs(offsets)[None, :] / scales[:, None]) ** h)
    ratio = moduli / profile
    row_max = ratio.max(axis=1)
    finest = max(2, n_a // 2)
    growth = -fit_line(np.log(scales[:finest]), np.log(row_max[:finest])).slope
    centre = int(np.flatnonzero(offsets == 0.0)[0])
    slope = fit_line(np.log(scales), np.log(moduli[:, centre])).slope
    return PointwiseReport(x0=float(x0), exponent=h, c_min=float(ratio.max()),
                           local_slope=float(slope), growth_rate=float(growth),
                           growing=bool(growth > GROWTH_THRESHOLD), scales=scales,
                           positions=positions, ratio=ratio)


# ------------------------------------------------------------------ theta at b = 1


def theta_w_at_one_direct(a: float) -> complex:
    """``W R_{2,2}(a, 1) = i a pi sum_{n>=1} (-1)^n exp(-a pi n^2)`` by direct summation."""
    a = float(a)
    if not a > 0:
        raise DomainError(f"scale must be positive, got {a}")
    # exp(-a pi n^2) < 1e-17 beyond this n
    n_max = max(1, math.ceil(math.sqrt(17.0 * math.log(10.0) / (a * math.pi))))
    n = np.arange(1, n_max + 1, dtype=float)
    terms = np.where(n % 2 == 0, 1.0, -1.0) * np.exp(-a * math.pi * n * n)
    return 1j * a * math.pi * compensated_sum(terms)


def _decimal_pi() -> decimal.Decimal:
    """``pi`` to the current decimal precision (Machin-free series of the decimal docs)."""
    decimal.getcontext().prec += 2
    three = decimal.Decimal(3)
    lasts, t, s, n, na, d, da = 0, three, 3, 1, 0, 0, 24
    while s != lasts:
        lasts = s
        n, na = n + na, na + 8
        d, da = d + da, da + 32
        t = (t * n) / d
        s += t
    decimal.getcontext().prec -= 2
    return +s


def theta_w_at_one_poisson(a: float) -> complex:
    """The same value through the Poisson-dual theta series.

    Poisson summation gives
    ``sum_{n in Z} (-1)^n exp(-a pi n^2) = (2/sqrt(a)) sum_{n>=0} exp(-pi (2n+1)^2 / (4a))``,
    so ``W(a, 1) = (i a pi / 2) ((2/sqrt(a)) sum_{n>=0} exp(-pi (2n+1)^2 / (4a)) - 1)``.
    For large ``a`` the bracket is a difference of nearly equal numbers that
    cancel to about ``exp(-a pi)``, so the dual sum is accumulated in decimal
    arithmetic with 30 digits beyond that cancellation.
    """
    a = float(a)
    if not a > 0:
        raise DomainError(f"scale must be positive, got {a}")
    with decimal.localcontext() as ctx:
        ctx.prec = 30 + math.ceil(a * math.pi / math.log(10.0))
        pi = _decimal_pi()
        ad = decimal.Decimal(a)
        cutoff = decimal.Decimal(10) ** (-ctx.prec)
        total = decimal.Decimal(0)
        n = 0
        while True:
            term = (-pi * (2 * n + 1) ** 2 / (4 * ad)).exp()
            total += term
            if term <= cutoff * total:
                break
            n += 1
        bracket = 2 * total / ad.sqrt() - 1
        value = float(bracket)
    return 1j * a * math.pi * 0.5 * value
