"""Continuous wavelet transform with the Lusin wavelet.

The Lusin wavelet ``psi(x) = 1 / (pi (x + i)^2)`` has
``psi_hat(xi) = -2 xi exp(-xi)`` on ``xi >= 0`` and vanishes for negative
frequencies, which makes the transform of ``R_{alpha,beta}`` explicit::

    W(a, b) = i a pi sum_n n^(beta - alpha) exp(i pi n^beta (b + i a))

This module evaluates that closed form, its nonharmonic analogue, and a
brute-force quadrature of the defining integral used as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ArgumentError, ConvergenceError, DomainError
from .numerics import QuadSpec, compensated_sum, incomplete_gamma_any, integrate
from .series import NonharmonicSpec, SeriesParams, half_turns

__all__ = [
    "LusinWavelet",
    "Scalogram",
    "lusin_eval",
    "lusin_ft",
    "cwt_analytic",
    "cwt_nonharmonic",
    "cwt_numeric",
    "scalogram",
    "truncation_index",
]

# Sums up to DIRECT_LIMIT terms are always formed directly. Longer sums with
# trivial phases use an Euler-Maclaurin tail; others are summed directly up
# to HARD_LIMIT terms.
DIRECT_LIMIT = 4_000_000
HARD_LIMIT = 200_000_000
_BLOCK = 1 << 22


def lusin_eval(x):
    """``psi(x) = 1 / (pi (x + i)^2)``."""
    z = np.asarray(x, dtype=float) + 1j
    out = 1.0 / (np.pi * z * z)
    return complex(out) if out.ndim == 0 else out


def lusin_ft(xi):
    """Fourier transform ``-2 xi e^-xi`` for ``xi >= 0``, zero otherwise."""
    xi = np.asarray(xi, dtype=float)
    out = np.where(xi >= 0, -2.0 * xi * np.exp(-np.abs(xi)), 0.0)
    return float(out) if out.ndim == 0 else out


class LusinWavelet:
    """Namespace object bundling the Lusin wavelet and its transform."""

    eval = staticmethod(lusin_eval)
    ft = staticmethod(lusin_ft)

    def __repr__(self):
        return "LusinWavelet()"


@dataclass(frozen=True)
class Scalogram:
    scales: np.ndarray
    positions: np.ndarray
    values: np.ndarray
    params: SeriesParams
    abs_tol: float

    @property
    def modulus(self) -> np.ndarray:
        return np.abs(self.values)


# ------------------------------------------------------------------ sums


def truncation_index(alpha: float, beta: float, c: float, tol: float) -> int:
    """Smallest ``N`` past the peak of ``x^(beta-alpha) e^(-c x^beta)`` whose tail is <= tol.

    Beyond the peak the summand decreases, so ``sum_{n>N}`` is bounded by
    ``int_N^inf``, which in turn is at most ``N^(1-alpha) e^(-c N^beta) / (c beta)``
    (from ``Gamma(s, y) <= y^(s-1) e^-y`` for ``s <= 1``).
    """
    if not tol > 0:
        raise ArgumentError(f"tolerance must be positive, got {tol}")
    log_tol = math.log(tol)
    lead = math.log(c * beta)

    def log_bound(n):
        return (1.0 - alpha) * math.log(n) - c * n ** beta - lead

    n0 = 1
    if beta > alpha:
        n0 = max(1, math.ceil(((beta - alpha) / (c * beta)) ** (1.0 / beta)))
    if log_bound(n0) <= log_tol:
        return n0
    lo, hi = n0, 2 * n0
    while log_bound(hi) > log_tol:
        lo, hi = hi, 2 * hi
        if hi > 1e18:
            raise ConvergenceError("series truncation index exceeds 1e18")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if log_bound(mid) <= log_tol:
            hi = mid
        else:
            lo = mid
    return hi


def _unit_phase(turns):
    """``exp(i pi turns)`` with exact values at multiples of a quarter turn."""
    c = np.cos(np.pi * turns)
    s = np.sin(np.pi * turns)
    twice = 2.0 * turns
    quarter = twice == np.round(twice)
    if np.any(quarter):
        k = np.mod(np.round(twice), 4.0)
        c = np.where(quarter, np.choose(k.astype(int) % 4, [1.0, 0.0, -1.0, 0.0]), c)
        s = np.where(quarter, np.choose(k.astype(int) % 4, [0.0, 1.0, 0.0, -1.0]), s)
    return c + 1j * s


def _direct_sum(alpha, beta, c, b, start, stop):
    """``sum_{start<=n<stop} n^(beta-alpha) e^(-c n^beta) e^(i pi n^beta b)`` per b."""
    b = np.asarray(b, dtype=float)
    if stop <= start:
        return np.zeros(b.size, dtype=complex)
    step = max(1, _BLOCK // max(1, b.size))
    parts = []
    for s0 in range(start, stop, step):
        n = np.arange(s0, min(s0 + step, stop), dtype=float)
        t = n ** beta
        mag = np.exp((beta - alpha) * np.log(n) - c * t)
        turns = half_turns(n[None, :], beta, b[:, None])
        parts.append(compensated_sum(mag[None, :] * _unit_phase(turns), axis=-1))
    if len(parts) == 1:
        return parts[0]
    return compensated_sum(np.stack(parts, axis=-1), axis=-1)


def _em_tail_sum(alpha, beta, c, tol, n_direct):
    """``sum_{n>=1} n^(beta-alpha) e^(-c n^beta)`` via an Euler-Maclaurin tail.

    Returns ``None`` when no cut point makes the estimated tail error
    smaller than ``tol``.
    """
    e = beta - alpha
    s = (e + 1.0) / beta
    m = 64
    while m < min(n_direct, DIRECT_LIMIT):
        kappa = max((abs(e) + 3.0) / m, c * beta * m ** (beta - 1.0))
        if kappa <= 0.5:
            f = math.exp(e * math.log(m) - c * m ** beta)
            g1 = e / m - c * beta * m ** (beta - 1.0)
            g2 = -e / m ** 2 - c * beta * (beta - 1.0) * m ** (beta - 2.0)
            g3 = 2.0 * e / m ** 3 - c * beta * (beta - 1.0) * (beta - 2.0) * m ** (beta - 3.0)
            f1 = f * g1
            f3 = f * (g3 + 3.0 * g1 * g2 + g1 ** 3)
            y = c * m ** beta
            integral = math.exp(-s * math.log(c)) * incomplete_gamma_any(s, y) / beta
            # next Euler-Maclaurin term is smaller by ~(kappa / 2 pi)^2; the
            # incomplete Gamma is accurate to a few 1e-12 relative (tested
            # against an arbitrary-precision reference)
            est = 10.0 * abs(f3) / 720.0 * (kappa / (2 * math.pi)) ** 2 + 1e-11 * abs(integral)
            if est <= tol:
                head = _direct_sum(alpha, beta, c, np.zeros(1), 1, m)[0].real
                return math.fsum([head, integral, 0.5 * f, -f1 / 12.0, f3 / 720.0])
        m *= 2
    return None


def _trivial_phase(beta, b):
    """Positions where every ``n^beta b`` is an even integer."""
    b = np.asarray(b, dtype=float)
    if float(beta).is_integer():
        return (b == 0.0) | (np.mod(b, 2.0) == 0.0)
    return b == 0.0


def _lusin_sum(alpha, beta, c, b, tol):
    b = np.asarray(b, dtype=float).ravel()
    n = truncation_index(alpha, beta, c, tol)
    if n <= DIRECT_LIMIT:
        return _direct_sum(alpha, beta, c, b, 1, n + 1)
    out = np.empty(b.size, dtype=complex)
    trivial = _trivial_phase(beta, b)
    if np.any(trivial):
        value = _em_tail_sum(alpha, beta, c, tol, n)
        if value is None:
            if n > HARD_LIMIT:
                raise ConvergenceError(f"wavelet sum needs {n} terms (limit {HARD_LIMIT})")
            value = _direct_sum(alpha, beta, c, np.zeros(1), 1, n + 1)[0]
        out[trivial] = value
    if not np.all(trivial):
        if n > HARD_LIMIT:
            raise ConvergenceError(f"wavelet sum needs {n} terms (limit {HARD_LIMIT})")
        out[~trivial] = _direct_sum(alpha, beta, c, b[~trivial], 1, n + 1)
    return out


# ------------------------------------------------------------------ transforms


def cwt_analytic(params: SeriesParams, a: float, b, abs_tol: float = 1e-12):
    """Closed-form transform ``W(a, b)`` of ``R_{alpha,beta}``.

    ``b`` may be a scalar or an array; the result has the same shape. The
    series is cut once the remaining terms are provably below ``abs_tol``.
    """
    a = float(a)
    if not a > 0:
        raise DomainError(f"scale must be positive, got {a}")
    if not abs_tol > 0:
        raise ArgumentError(f"abs_tol must be positive, got {abs_tol}")
    c = a * math.pi
    s = _lusin_sum(params.alpha, params.beta, c, b, abs_tol / c)
    w = 1j * c * s
    return complex(w[0]) if np.ndim(b) == 0 else w.reshape(np.shape(b))


def cwt_nonharmonic(spec: NonharmonicSpec, a: float, b, abs_tol: float = 1e-12):
    """``W S(a, b) = -2a sum_n a_n lambda_n exp(i lambda_n (b + i a))``."""
    a = float(a)
    if not a > 0:
        raise DomainError(f"scale must be positive, got {a}")
    if not abs_tol > 0:
        raise ArgumentError(f"abs_tol must be positive, got {abs_tol}")
    bb = np.atleast_1d(np.asarray(b, dtype=float))
    n_max = truncation_index(spec.alpha, spec.beta, spec.C2 * a,
                             abs_tol / (2.0 * a * spec.C1 * spec.C3))
    if n_max > DIRECT_LIMIT:
        raise ConvergenceError(f"nonharmonic transform needs {n_max} terms")
    n = np.arange(1, n_max + 1)
    coef = np.asarray(spec.coeff(n), dtype=complex)
    lam = np.asarray(spec.freq(n), dtype=float)
    weights = coef * lam * np.exp(-a * lam)
    phase = np.exp(1j * np.fmod(lam[None, :] * bb[:, None], 2.0 * np.pi))
    w = -2.0 * a * compensated_sum(weights[None, :] * phase, axis=-1)
    return complex(w[0]) if np.ndim(b) == 0 else w.reshape(np.shape(b))


def cwt_numeric(f: Callable, a: float, b: float, quad: Optional[QuadSpec] = None,
                bound: float = 1.0, antiderivative: Optional[Callable] = None,
                antiderivative_bound: Optional[float] = None) -> complex:
    """Quadrature of ``int f(x) (1/a) conj(psi((x - b)/a)) dx``.

    Parameters
    ----------
    f : callable
        Vectorized, bounded integrand with ``|f| <= bound``.
    quad : QuadSpec
        Total absolute error target, split evenly between the truncated
        range and the discarded tails.
    antiderivative, antiderivative_bound : optional
        A bounded primitive ``F`` of ``f``. With it the tails are integrated
        by parts: the boundary terms are kept and the remainder is bounded
        by ``2 sup|F| / (a pi U^2)``, which allows a much shorter range than
        the plain ``2 sup|f| / (pi U)`` bound.
    """
    quad = quad or QuadSpec(abs_tol=1e-8)
    a = float(a)
    b = float(b)
    if not a > 0:
        raise DomainError(f"scale must be positive, got {a}")
    half_tol = 0.5 * quad.abs_tol
    if antiderivative is None:
        # 2 bound / (pi U) <= tol/2
        U = 2.0 * bound / (math.pi * half_tol)
    else:
        if antiderivative_bound is None:
            raise ArgumentError("antiderivative_bound is required with antiderivative")
        U = math.sqrt(2.0 * antiderivative_bound / (a * math.pi * half_tol))
    U = max(U, 8.0)

    def integrand(u):
        return np.asarray(f(b + a * u)) * np.conj(lusin_eval(u))

    edges = [0.0]
    k = 1.0
    while k < U:
        edges.append(k)
        k *= 2.0
    points = sorted({-p for p in edges} | set(edges))
    value = integrate(integrand, -U, U, QuadSpec(half_tol, quad.max_depth), points=points)
    if antiderivative is not None:
        psi_bar = np.conj(lusin_eval(np.array([U, -U])))
        F = np.asarray(antiderivative(np.array([b + a * U, b - a * U])), dtype=float)
        value = value + (-F[0] * psi_bar[0] + F[1] * psi_bar[1]) / a
    return complex(value)


def scalogram(params: SeriesParams, scales: Sequence[float], positions: Sequence[float],
              abs_tol: float = 1e-12) -> Scalogram:
    """Grid of ``cwt_analytic`` values, rows indexed by scale."""
    a = np.asarray(scales, dtype=float).ravel()
    b = np.asarray(positions, dtype=float).ravel()
    if a.size == 0 or b.size == 0:
        raise ArgumentError("scalogram needs at least one scale and one position")
    if np.any(a <= 0):
        raise DomainError("scales must be positive")
    if np.any(np.diff(a) <= 0):
        raise ArgumentError("scales must be strictly increasing")
    if np.any(np.diff(b) < 0):
        raise ArgumentError("positions must be sorted")
    values = np.empty((a.size, b.size), dtype=complex)
    for i, ai in enumerate(a):
        values[i] = cwt_analytic(params, ai, b, abs_tol)
    return Scalogram(scales=a, positions=b, values=values, params=params, abs_tol=float(abs_tol))
