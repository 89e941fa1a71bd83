"""How far ``R_{alpha,beta}`` strays from its first term ``sin(pi x)``.

Everything here rests on the decomposition
``R(x) - sin(pi x) = sum_{n>=2} sin(pi n^beta x) / n^alpha``: interval means
of the remainder shrink like ``zeta(alpha+beta) - 1``, its squared mean
over a period is ``zeta(2 alpha) - 1`` for integer ``beta``, and its sup
norm is at most ``zeta(alpha) - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import ArgumentError, ConvergenceError, DomainError, ScopeError
from .numerics import QuadSpec, compensated_sum, zeta_minus_one
from .series import SeriesParams, half_turns

__all__ = [
    "MeanReport",
    "interval_mean",
    "l2_fluctuation",
    "l2_nodes",
    "fourier_b",
    "parseval_check",
    "sup_deviation_bound",
]

MAX_MEAN_TERMS = 50_000_000
MAX_NODES = 2_000_000
_CHUNK = 1 << 20


@dataclass(frozen=True)
class MeanReport:
    """Means of ``R`` and of ``sin(pi x)`` over ``(lo, hi)``.

    ``bound`` is ``2 (zeta(alpha+beta) - 1) / (pi (hi - lo))``, which
    dominates ``|mean_r - mean_s|``; ``abs_tol`` is the truncation error
    allowed in ``mean_r``.
    """

    interval: Tuple[float, float]
    mean_r: float
    mean_s: float
    bound: float
    abs_tol: float

    @property
    def deviation(self) -> float:
        return abs(self.mean_r - self.mean_s)


def _integer_beta(params: SeriesParams, what: str) -> int:
    if not params.integer_beta:
        raise ScopeError(f"{what} needs an integer beta, because only then is "
                         f"R_{{alpha,beta}} periodic with period 2 (got beta={params.beta})")
    return int(params.beta)


def interval_mean(params: SeriesParams, lo: float, hi: float,
                  abs_tol: float = 1e-12) -> MeanReport:
    """Mean of ``R_{alpha,beta}`` over ``(lo, hi)`` from exact termwise integrals.

    ``int_lo^hi sin(pi f x) dx = 2 sin(pi f m) sin(pi f h) / (pi f)`` with
    ``m`` the midpoint and ``h`` the half width, which avoids cancellation
    between the two cosines. Terms beyond ``N`` contribute at most
    ``2 N^(1-alpha-beta) / (pi (alpha+beta-1) (hi-lo))`` to the mean.
    """
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise ArgumentError(f"need lo < hi, got ({lo}, {hi})")
    if not abs_tol > 0:
        raise DomainError(f"abs_tol must be positive, got {abs_tol}")
    alpha, beta = params.alpha, params.beta
    width = hi - lo
    mid, half = 0.5 * (lo + hi), 0.5 * width
    e = alpha + beta - 1.0
    n_terms = max(1, math.ceil((0.5 * math.pi * e * width * abs_tol) ** (-1.0 / e)))
    if n_terms > MAX_MEAN_TERMS:
        raise ConvergenceError(f"interval mean needs {n_terms} terms")

    mean_s = 2.0 * math.sin(math.pi * mid) * math.sin(math.pi * half) / (math.pi * width)
    parts = []
    for start in range(2, n_terms + 1, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, n_terms + 1), dtype=float)
        f = n ** beta
        terms = (2.0 * np.sin(np.pi * half_turns(n, beta, mid))
                 * np.sin(np.pi * half_turns(n, beta, half)) / (np.pi * f * n ** alpha))
        parts.append(compensated_sum(terms))
    excess = math.fsum(parts) / width
    bound = 2.0 * zeta_minus_one(alpha + beta) / (math.pi * width)
    return MeanReport(interval=(lo, hi), mean_r=mean_s + excess, mean_s=mean_s,
                      bound=bound, abs_tol=float(abs_tol))


def l2_nodes(freqs) -> int:
    """Smallest node count ``K`` for which the trapezoid rule on ``[-1, 1]`` is exact.

    The squared remainder only contains ``cos(pi (f - g) x)`` and
    ``cos(pi (f + g) x)`` for frequencies ``f, g`` in ``freqs``. The rule
    with ``K`` nodes integrates ``cos(pi m x)`` exactly unless ``m`` is a
    nonzero multiple of ``K``, so it suffices that the residues of the
    frequencies mod ``K`` are distinct and no two of them sum to 0 mod ``K``.
    """
    freqs = [int(f) for f in freqs]
    if not freqs:
        return 2
    k = max(2, 2 * len(freqs) + 1)
    while k <= MAX_NODES:
        r = np.array([f % k for f in freqs], dtype=np.int64)
        if np.unique(r).size == r.size and not _pairs_cancel(r, k):
            return k
        k += 1
    raise ConvergenceError(f"no alias-free node count below {MAX_NODES}")


def _pairs_cancel(r, k):
    """True if ``r_i + r_j = 0 mod k`` for some ``i, j`` (including ``i = j``)."""
    return bool(np.any(np.isin(np.mod(-r, k), r)))


def l2_fluctuation(params: SeriesParams, quad: Optional[QuadSpec] = None) -> float:
    """``int_{-1}^{1} (R(x) - sin(pi x))^2 dx`` by quadrature of sampled values.

    The remainder is truncated at ``N`` terms with
    ``sum_{n>N} n^(-2 alpha) <= quad.abs_tol / 2``; by orthogonality that
    is exactly the loss in the integral. The truncated remainder is then
    sampled on ``K`` equispaced nodes of the period, with ``K`` from
    :func:`l2_nodes`, and summed by the trapezoid rule, which is exact for
    it. Phases ``n^beta x_j mod 2`` are reduced in integer arithmetic so that
    frequencies far beyond ``2^53`` keep full accuracy.
    """
    beta = _integer_beta(params, "the L2 fluctuation")
    quad = quad or QuadSpec(abs_tol=1e-6)
    alpha = params.alpha
    e = 2.0 * alpha - 1.0
    target = 0.5 * quad.abs_tol
    n_max = max(2, math.ceil((e * target) ** (-1.0 / e)))
    if n_max > 20_000:
        raise ConvergenceError(f"L2 fluctuation needs {n_max} terms")
    freqs = [n ** beta for n in range(2, n_max + 1)]
    k = l2_nodes(freqs)
    j = np.arange(k, dtype=np.int64)
    values = np.zeros(k)
    for n, f in zip(range(2, n_max + 1), freqs):
        # x_j = -1 + 2 j / K, so f x_j = (2 f j - f K) / K; reduce mod 2K
        fr = f % (2 * k)
        turns = np.mod(2 * fr * j - fr * k, 2 * k)
        values += np.sin(np.pi * turns / k) / float(n) ** alpha
    return float(2.0 / k * compensated_sum(values * values))


def _integer_root(m: int, beta: int) -> Optional[int]:
    k = round(m ** (1.0 / beta))
    for cand in (k - 1, k, k + 1):
        if cand >= 1 and cand ** beta == m:
            return cand
    return None


def fourier_b(m: int, params: SeriesParams) -> float:
    """Sine coefficient of ``R - sin(pi x)`` at frequency ``m``.

    It is ``k^-alpha = m^(-alpha/beta)`` when ``m = k^beta`` with ``k >= 2``
    and zero otherwise. The root is rounded from floating point and then
    confirmed with exact integer powers.
    """
    beta = _integer_beta(params, "the Fourier coefficients")
    m = int(m)
    if m < 1:
        raise ArgumentError(f"m must be >= 1, got {m}")
    k = _integer_root(m, beta)
    if k is None or k < 2:
        return 0.0
    return float(k) ** (-params.alpha)


def parseval_check(params: SeriesParams, M: int) -> Tuple[float, float]:
    """``(sum_{m<=M} b_m^2, zeta(2 alpha) - 1)``.

    Only perfect powers contribute, so the sum runs over ``k >= 2`` with
    ``k^beta <= M``.
    """
    beta = _integer_beta(params, "the Parseval check")
    M = int(M)
    if M < 1:
        raise ArgumentError(f"M must be >= 1, got {M}")
    k_max = _integer_root_floor(M, beta)
    if k_max < 2:
        partial = 0.0
    else:
        k = np.arange(2, k_max + 1, dtype=float)
        partial = float(compensated_sum(k ** (-2.0 * params.alpha)))
    return partial, zeta_minus_one(2.0 * params.alpha)


def _integer_root_floor(m: int, beta: int) -> int:
    k = int(round(m ** (1.0 / beta)))
    while k ** beta > m:
        k -= 1
    while (k + 1) ** beta <= m:
        k += 1
    return k


def sup_deviation_bound(alpha: float) -> float:
    """``zeta(alpha) - 1``, a uniform bound on ``|R(x) - sin(pi x)|``."""
    if not alpha > 1:
        raise DomainError(f"alpha must be > 1, got {alpha}")
    return zeta_minus_one(alpha)
