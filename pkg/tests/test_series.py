import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from riemannwave.errors import ConvergenceError, DomainError, SpecificationError
from riemannwave.numerics import zeta
from riemannwave.series import (NonharmonicSpec, SeriesParams, nonharmonic_eval, perturbed_spec,
                                riemann_eval, riemann_partial, riemann_spec, sin_baseline,
                                truncation_terms, half_turns)

CATALAN = 0.915965594177219015


@pytest.mark.parametrize("alpha, beta, regime", [
    (2, 2, "rough"), (2, 1, "critical"), (2, 0.5, "differentiable"),
    (3, 2 + 1e-13, "critical"), (3, 2 + 1e-9, "rough"),
])
def test_regime_classification(alpha, beta, regime):
    assert SeriesParams(alpha, beta).regime == regime


@pytest.mark.parametrize("alpha, beta", [(1.0, 2.0), (0.5, 1.0), (2.0, 0.0), (2.0, -1.0),
                                         (math.nan, 1.0), (2.0, math.inf)])
def test_params_domain(alpha, beta):
    with pytest.raises(DomainError):
        SeriesParams(alpha, beta)


@pytest.mark.parametrize("alpha, tol, n", [(2, 1e-6, 10 ** 6), (3, 1e-6, 708), (2, 1.0, 1)])
def test_truncation_terms_examples(alpha, tol, n):
    assert truncation_terms(SeriesParams(alpha, 1.0), tol).n_terms == n


@given(st.floats(1.1, 6.0), st.floats(1e-9, 1.0))
@settings(max_examples=80, deadline=None)
def test_truncation_terms_minimal(alpha, tol):
    n = truncation_terms(SeriesParams(alpha, 1.0), tol).n_terms
    bound = lambda k: k ** (1 - alpha) / (alpha - 1)
    assert bound(n) <= tol * (1 + 1e-12)
    if n < 2 ** 52:
        assert n == 1 or bound(n - 1) > tol


def test_truncation_terms_rejects_bad_tol():
    with pytest.raises(DomainError):
        truncation_terms(SeriesParams(2, 2), 0.0)


def test_riemann_eval_examples():
    p22 = SeriesParams(2, 2)
    assert riemann_eval(p22, 0.0) == 0.0
    assert riemann_eval(p22, 0.5, 1e-7) == pytest.approx(math.pi ** 2 / 8, abs=1e-7)
    assert riemann_eval(SeriesParams(2, 1), 0.5, 1e-7) == pytest.approx(CATALAN, abs=1e-7)


def test_riemann_eval_refuses_huge_budgets():
    with pytest.raises(ConvergenceError):
        riemann_eval(SeriesParams(1.01, 1.0), 0.3, 1e-8)


def test_partial_matches_eval():
    p = SeriesParams(2.5, 3.0)
    n = truncation_terms(p, 1e-9).n_terms
    xs = np.array([-1.3, 0.1, 0.77])
    vals = riemann_partial(p, xs, n)
    for x, v in zip(xs, vals):
        assert v == pytest.approx(riemann_eval(p, x, 1e-9), abs=1e-15)


SAMPLES = np.linspace(-3.1, 3.3, 23)


@pytest.mark.parametrize("alpha, beta, tol", [(2, 2, 1e-5), (3, 1.5, 1e-5), (2.5, 10, 1e-5),
                                              (1.5, 1, 1e-2)])
def test_oddness_and_bounds(alpha, beta, tol):
    p = SeriesParams(alpha, beta)
    n = truncation_terms(p, tol).n_terms
    plus = riemann_partial(p, SAMPLES, n)
    minus = riemann_partial(p, -SAMPLES, n)
    assert np.all(np.abs(plus + minus) <= 2 * tol)
    assert np.all(np.abs(plus) <= zeta(alpha) + tol)
    assert np.all(np.abs(plus - sin_baseline(SAMPLES)) <= zeta(alpha) - 1 + tol)


@pytest.mark.parametrize("beta", [1, 2, 3, 7])
def test_periodicity_integer_beta(beta):
    p = SeriesParams(2, beta)
    tol = 1e-5
    n = truncation_terms(p, tol).n_terms
    # dyadic samples, so that x + 2 is the exact shift of x
    xs = np.round(SAMPLES * 64) / 64
    diff = riemann_partial(p, xs + 2.0, n) - riemann_partial(p, xs, n)
    assert np.all(np.abs(diff) <= 2 * tol)


@given(st.integers(1, 10 ** 7), st.integers(1, 12), st.floats(-5, 5))
@settings(max_examples=300, deadline=None)
def test_half_turns_integer_beta_matches_exact(n, beta, x):
    exact = Fraction(n) ** beta * Fraction(x)
    got = float(half_turns(np.array([float(n)]), beta, x)[0])
    if abs(x) >= 2.0 ** -9:
        allowed = 4.0 * 2.0 ** -52
    else:
        allowed = 4.0 * 2.0 ** -52 * float(abs(exact)) + 1e-300
    # compare on the circle of circumference 2
    gap = float((Fraction(got) - exact) % 2)
    assert min(gap, 2.0 - gap) <= allowed


def test_sin_baseline():
    assert sin_baseline(0.0) == 0.0
    assert sin_baseline(0.5) == 1.0
    assert sin_baseline(1 / 6) == pytest.approx(0.5, abs=1e-15)
    assert np.allclose(sin_baseline(np.array([0.0, 0.5])), [0.0, 1.0])


# ------------------------------------------------------------------ nonharmonic


def test_nonharmonic_odd_part_is_riemann():
    p = SeriesParams(2, 2)
    tol = 1e-6
    for x in (0.3, -0.71, 1.9):
        s = nonharmonic_eval(riemann_spec(p), x, tol)
        # T(x) = -i sum n^-a e^{i pi n^b x}, so Re T = R
        assert s.real == pytest.approx(riemann_eval(p, x, tol), abs=2 * tol)
        spec = NonharmonicSpec(coeff=lambda n: np.asarray(n, float) ** -2.0 + 0j,
                               freq=lambda n: np.pi * np.asarray(n, float) ** 2,
                               C1=1, C2=math.pi, C3=math.pi, alpha=2, beta=2)
        assert nonharmonic_eval(spec, x, tol).imag == pytest.approx(riemann_eval(p, x, tol),
                                                                    abs=2 * tol)


def test_nonharmonic_zero_and_zeta():
    zero = NonharmonicSpec(coeff=lambda n: np.zeros(np.shape(n)), freq=lambda n: np.asarray(n, float),
                           C1=1, C2=1, C3=1, alpha=2, beta=1)
    assert nonharmonic_eval(zero, 0.4, 1e-6) == 0
    spec = NonharmonicSpec(coeff=lambda n: np.asarray(n, float) ** -2.0,
                           freq=lambda n: np.pi * np.asarray(n, float) ** 2,
                           C1=1, C2=math.pi, C3=math.pi, alpha=2, beta=2)
    assert nonharmonic_eval(spec, 0.0, 1e-7).real == pytest.approx(zeta(2), abs=1e-7)


@pytest.mark.parametrize("kwargs", [
    dict(coeff=lambda n: np.asarray(n, float) ** -1.5, freq=lambda n: np.asarray(n, float),
         C1=1, C2=1, C3=1, alpha=2, beta=1),                     # |a_n| too large
    dict(coeff=lambda n: np.asarray(n, float) ** -2.0, freq=lambda n: 5.0 - np.asarray(n, float),
         C1=1, C2=1, C3=1, alpha=2, beta=1),                     # decreasing frequencies
    dict(coeff=lambda n: np.asarray(n, float) ** -2.0, freq=lambda n: np.asarray(n, float) ** 2,
         C1=1, C2=1, C3=1, alpha=2, beta=1),                     # above C3 n^beta
    dict(coeff=lambda n: np.asarray(n, float) ** -2.0, freq=lambda n: np.asarray(n, float),
         C1=1, C2=1, C3=1, alpha=1, beta=1),                     # alpha <= 1
])
def test_nonharmonic_envelope_violations(kwargs):
    with pytest.raises(SpecificationError):
        NonharmonicSpec(**kwargs)


def test_presets_respect_envelopes():
    spec = perturbed_spec(2.0, 2.0)
    assert (spec.C1, spec.C2, spec.C3) == (1.0, math.pi, math.pi + 1.0)
    assert spec.freq(np.array([1, 2])) == pytest.approx([math.pi + 1, 4 * math.pi + 1])
    riemann_spec(SeriesParams(3, 1.5))
