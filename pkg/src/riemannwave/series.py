"""The generalized Riemann function and nonharmonic Fourier series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, SpecificationError
from .numerics import compensated_sum

__all__ = [
    "SeriesParams",
    "NonharmonicSpec",
    "TruncationBudget",
    "truncation_terms",
    "riemann_eval",
    "riemann_partial",
    "nonharmonic_eval",
    "sin_baseline",
    "half_turns",
    "riemann_spec",
    "perturbed_spec",
]

CRITICAL_TOL = 1e-12
MAX_TERMS = 50_000_000
ENVELOPE_CHECK_TERMS = 10_000
_CHUNK = 1 << 20


@dataclass(frozen=True)
class SeriesParams:
    """Exponents of ``R(x) = sum_n sin(pi n^beta x) / n^alpha``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 1.0):
            raise DomainError(f"alpha must be > 1, got {self.alpha}")
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise DomainError(f"beta must be > 0, got {self.beta}")

    @property
    def regime(self) -> str:
        gap = self.beta - (self.alpha - 1.0)
        if abs(gap) <= CRITICAL_TOL:
            return "critical"
        return "rough" if gap > 0 else "differentiable"

    @property
    def integer_beta(self) -> bool:
        return float(self.beta).is_integer()


@dataclass(frozen=True)
class TruncationBudget:
    abs_tol: float
    n_terms: int


def truncation_terms(params: SeriesParams, abs_tol: float) -> TruncationBudget:
    """Smallest ``N`` with ``N^(1-alpha) / (alpha-1) <= abs_tol``.

    That quantity bounds ``sum_{n>N} n^-alpha`` by comparison with the
    integral of the decreasing function ``x^-alpha``.
    """
    if not abs_tol > 0:
        raise DomainError(f"abs_tol must be positive, got {abs_tol}")
    a1 = params.alpha - 1.0

    def bound(n):
        return n ** (-a1) / a1

    log_n = -math.log(a1 * abs_tol) / a1
    if log_n > 600.0:
        raise ConvergenceError(f"tail below {abs_tol:g} needs more than 1e260 terms")
    n = max(1, math.ceil(math.exp(log_n)))
    # float rounding in the closed form can be off by one either way; past
    # 2^52 neighbouring integers are no longer distinguishable in the bound
    if n < 2 ** 52:
        while n > 1 and bound(n - 1) <= abs_tol:
            n -= 1
        while bound(n) > abs_tol:
            n += 1
    return TruncationBudget(abs_tol=float(abs_tol), n_terms=int(n))


def half_turns(n, beta: float, x):
    """``n^beta * x`` reduced mod 2, so that ``sin(pi * result)`` keeps precision.

    ``n`` holds positive integers below ``2^53`` and broadcasts against ``x``.
    For integer ``beta`` the reduction is exact up to the final rounding:
    writing ``|x| = m 2^e`` with an integer ``m``, the wanted value is
    ``(n^beta m mod 2^(1-e)) 2^e``, and unsigned 64-bit products wrap modulo
    ``2^64``, a multiple of ``2^(1-e)`` whenever ``1-e <= 63``. Smaller
    ``|x|`` (below about ``2^-10``) and non-integer ``beta`` use the double
    product ``n^beta x``, accurate to about ``2^-52 n^beta |x|``.
    """
    n = np.asarray(n, dtype=float)
    x = np.asarray(x, dtype=float)
    if not (float(beta).is_integer() and beta >= 1):
        return np.fmod(n ** beta * x, 2.0)
    n, x = np.broadcast_arrays(n, x)
    frac, exp = np.frexp(np.abs(x))
    m = np.ldexp(frac, 53).astype(np.uint64)
    e = exp.astype(np.int64) - 53
    shift = 1 - e
    exact = shift <= 63
    mask = np.where(exact, (np.uint64(1) << np.clip(shift, 0, 63).astype(np.uint64)) - np.uint64(1),
                    np.uint64(0))
    acc = m.copy()
    nu = n.astype(np.uint64)
    for _ in range(int(beta)):
        acc = acc * nu
    out = np.ldexp((acc & mask).astype(float), e)
    if not np.all(exact):
        out = np.where(exact, out, np.fmod(n ** beta * np.abs(x), 2.0))
    return np.copysign(out, x) * (x != 0)


def riemann_partial(params: SeriesParams, x, n_terms: int):
    """Partial sum ``sum_{n<=n_terms} sin(pi n^beta x) / n^alpha`` on an array of x."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.empty(flat.size)
    n = np.arange(1, int(n_terms) + 1, dtype=float)
    amp = n ** (-params.alpha)
    step = max(1, _CHUNK // max(1, n.size))
    for i in range(0, flat.size, step):
        xs = flat[i:i + step, None]
        terms = amp * np.sin(np.pi * half_turns(n, params.beta, xs))
        out[i:i + step] = compensated_sum(terms, axis=-1)
    return out.reshape(x.shape) if x.ndim else float(out[0])


def riemann_eval(params: SeriesParams, x: float, abs_tol: float = 1e-8) -> float:
    """``R_{alpha,beta}(x)`` to within ``abs_tol``.

    The series is truncated by :func:`truncation_terms` and summed in
    ascending ``n`` with compensated accumulation.
    """
    x = float(x)
    if x == 0.0:
        return 0.0
    budget = truncation_terms(params, abs_tol)
    if budget.n_terms > MAX_TERMS:
        raise ConvergenceError(
            f"R_{{{params.alpha},{params.beta}}} to {abs_tol:g} needs "
            f"{budget.n_terms} terms (limit {MAX_TERMS})")
    parts = []
    for start in range(1, budget.n_terms + 1, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, budget.n_terms + 1), dtype=float)
        terms = np.sin(np.pi * half_turns(n, params.beta, x)) * n ** (-params.alpha)
        parts.append(compensated_sum(terms))
    return math.fsum(parts)


def sin_baseline(x):
    """First term of the series, ``sin(pi x)``."""
    return np.sin(np.pi * np.asarray(x, dtype=float)) if np.ndim(x) else math.sin(math.pi * x)


@dataclass(frozen=True)
class NonharmonicSpec:
    """``S(x) = sum_n a_n exp(i lambda_n x)`` with polynomial envelopes.

    ``coeff`` and ``freq`` map an integer array ``n >= 1`` to ``a_n`` and
    ``lambda_n``. The envelope ``|a_n| <= C1 n^-alpha`` and
    ``C2 n^beta <= lambda_n <= C3 n^beta`` is only verified for
    ``n <= 10^4``; the rules are opaque so nothing beyond that is checked.
    """

    coeff: Callable
    freq: Callable
    C1: float
    C2: float
    C3: float
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("C1", "C2", "C3", "beta"):
            if not getattr(self, name) > 0:
                raise SpecificationError(f"{name} must be positive")
        if not self.alpha > 1:
            raise SpecificationError("alpha must be > 1")
        n = np.arange(1, ENVELOPE_CHECK_TERMS + 1)
        a = np.asarray(self.coeff(n), dtype=complex)
        lam = np.asarray(self.freq(n), dtype=float)
        nf = n.astype(float)
        slack = 1.0 + 1e-12
        if np.any(lam <= 0) or np.any(np.diff(lam) <= 0):
            raise SpecificationError("frequencies must be positive and strictly increasing")
        if np.any(np.abs(a) > slack * self.C1 * nf ** (-self.alpha)):
            raise SpecificationError("|a_n| <= C1 n^-alpha violated")
        if np.any(lam < self.C2 * nf ** self.beta / slack) or np.any(lam > slack * self.C3 * nf ** self.beta):
            raise SpecificationError("C2 n^beta <= lambda_n <= C3 n^beta violated")


def nonharmonic_eval(spec: NonharmonicSpec, x: float, abs_tol: float = 1e-8) -> complex:
    """``S(x)`` to within ``abs_tol``, using the tail bound ``C1 sum_{n>N} n^-alpha``."""
    budget = truncation_terms(SeriesParams(spec.alpha, 1.0), abs_tol / spec.C1)
    if budget.n_terms > MAX_TERMS:
        raise ConvergenceError(f"nonharmonic series needs {budget.n_terms} terms")
    parts = []
    for start in range(1, budget.n_terms + 1, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, budget.n_terms + 1))
        a = np.asarray(spec.coeff(n), dtype=complex)
        lam = np.asarray(spec.freq(n), dtype=float)
        parts.append(compensated_sum(a * np.exp(1j * np.fmod(lam * x, 2 * np.pi))))
    return complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))


def riemann_spec(params: SeriesParams) -> NonharmonicSpec:
    """``T(x) = -i sum n^-alpha exp(i pi n^beta x)``; its odd part is ``R``."""
    alpha, beta = params.alpha, params.beta
    return NonharmonicSpec(
        coeff=lambda n: -1j * np.asarray(n, dtype=float) ** (-alpha),
        freq=lambda n: np.pi * np.asarray(n, dtype=float) ** beta,
        C1=1.0, C2=math.pi, C3=math.pi, alpha=alpha, beta=beta,
    )


def perturbed_spec(alpha: float, beta: float) -> NonharmonicSpec:
    """``a_n = n^-alpha`` with shifted frequencies ``lambda_n = pi n^beta + 1``."""
    return NonharmonicSpec(
        coeff=lambda n: np.asarray(n, dtype=float) ** (-alpha) + 0j,
        freq=lambda n: np.pi * np.asarray(n, dtype=float) ** beta + 1.0,
        C1=1.0, C2=math.pi, C3=math.pi + 1.0, alpha=alpha, beta=beta,
    )
