"""Contract tests for the adaptive integration engine."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mfbs.quadrature import Interval, QuadratureConfig, QuadratureError, integrate

CFG = QuadratureConfig()


def normal_pdf(x):
    return np.exp(-0.5 * np.asarray(x) ** 2) / math.sqrt(2.0 * math.pi)


def normal_cdf(t):
    # error-function oracle, independent of the adaptive engine
    return 0.5 * (1.0 + math.erf(t / math.sqrt(2.0)))


def test_total_probability():
    assert integrate(normal_pdf, Interval(-math.inf, math.inf)) == pytest.approx(1.0, abs=1e-10)


def test_linear_monomial():
    assert integrate(lambda x: x, Interval(0.0, 1.0)) == pytest.approx(0.5, abs=1e-12)


def test_normal_cdf_at_0_525():
    value = integrate(normal_pdf, Interval(-math.inf, 0.525))
    assert value == pytest.approx(normal_cdf(0.525), abs=1e-12)
    assert value == pytest.approx(0.70021, abs=5e-6)


@pytest.mark.parametrize(
    "coeffs,a,b",
    [
        ((3, 0, -2, 1, 0, 4), -1.0, 2.0),
        ((1, 1, 1, 1, 1, 1), 0.0, 1.0),
        ((-2, 5, 0, 0, 0, -7), -3.0, -0.5),
    ],
)
def test_polynomial_exactness_degree_5(coeffs, a, b):
    # antiderivative oracle in exact rational arithmetic
    exact = sum(
        Fraction(c, 1) * (Fraction(b).limit_denominator() ** (k + 1) - Fraction(a).limit_denominator() ** (k + 1)) / (k + 1)
        for k, c in enumerate(coeffs)
    )
    f = lambda x: sum(c * x**k for k, c in enumerate(coeffs))
    assert integrate(f, Interval(a, b)) == pytest.approx(float(exact), abs=CFG.abs_tol)


@given(
    a=st.floats(-4, 0.5),
    b=st.floats(0.6, 2.0),
    c=st.floats(2.1, 6.0),
)
def test_additivity(a, b, c):
    f = lambda x: np.exp(-0.3 * np.asarray(x) ** 2) * (np.asarray(x) ** 2 + 1.0)
    whole = integrate(f, Interval(a, c))
    parts = integrate(f, Interval(a, b)) + integrate(f, Interval(b, c))
    assert whole == pytest.approx(parts, abs=2 * CFG.abs_tol)


@given(alpha=st.floats(-3, 3), beta=st.floats(-3, 3))
def test_linearity(alpha, beta):
    iv = Interval(-2.0, 3.0)
    f = lambda x: np.exp(-0.5 * np.asarray(x) ** 2)
    g = lambda x: np.cos(np.asarray(x))
    combined = integrate(lambda x: alpha * f(x) + beta * g(x), iv)
    separate = alpha * integrate(f, iv) + beta * integrate(g, iv)
    assert combined == pytest.approx(separate, abs=2 * CFG.abs_tol)


def test_tail_truncation_soundness():
    f = lambda x: np.exp(-0.25 * np.asarray(x) ** 2)
    tight = integrate(f, Interval(-math.inf, math.inf), QuadratureConfig(tail_cutoff=12.0))
    wide = integrate(f, Interval(-math.inf, math.inf), QuadratureConfig(tail_cutoff=20.0))
    assert tight == pytest.approx(wide, abs=CFG.abs_tol)
    assert tight == pytest.approx(2.0 * math.sqrt(math.pi), abs=1e-9)


def test_scalar_only_callables_are_supported():
    value = integrate(lambda x: math.exp(-x * x), Interval(-8.0, 8.0))
    assert value == pytest.approx(math.sqrt(math.pi), abs=1e-9)


def test_nan_integrand_reports_abscissa():
    def f(x):
        xs = np.asarray(x)
        return np.where(xs > 0.6, np.nan, xs)

    with pytest.raises(QuadratureError) as exc_info:
        integrate(f, Interval(0.0, 1.0))
    err = exc_info.value
    assert err.abscissa is not None
    assert err.abscissa > 0.6
    assert str(err.abscissa) in str(err)


def test_non_convergence_carries_best_estimate():
    spike = lambda x: 1.0 / np.sqrt(np.abs(np.asarray(x) - 0.3) + 1e-14)
    cfg = QuadratureConfig(max_subdivisions=10)
    with pytest.raises(QuadratureError) as exc_info:
        integrate(spike, Interval(0.0, 1.0), cfg)
    err = exc_info.value
    assert err.best_estimate is not None and math.isfinite(err.best_estimate)
    assert err.error_bound is not None and err.error_bound > 0


def test_determinism():
    f = lambda x: np.exp(-0.5 * np.asarray(x) ** 2) * np.cos(3 * np.asarray(x))
    first = integrate(f, Interval(-6.0, 6.0))
    second = integrate(f, Interval(-6.0, 6.0))
    assert first == second


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(1.0, 1.0)
    with pytest.raises(ValueError):
        Interval(2.0, -2.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"abs_tol": 0.0},
        {"rel_tol": -1e-9},
        {"tail_cutoff": 7.9},
        {"max_subdivisions": 9},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        QuadratureConfig(**kwargs)
