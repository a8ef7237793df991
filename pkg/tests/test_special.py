import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermite_zeta.errors import DomainError, PoleError
from hermite_zeta.numerics.special import (
    BRACKET_SWITCH,
    bernoulli_number,
    bracket_direct,
    bracket_kernel,
    bracket_kernel_array,
    bracket_series,
    gamma,
    log_gamma,
    pos_pow,
    reciprocal_gamma,
    sinpi,
)

mpmath.mp.dps = 40


def mp_bracket(v):
    # the closed form cancels ~2*log10(1/v) digits
    digits = 40 + 2 * max(0, int(-math.log10(v)))
    with mpmath.workdps(digits):
        v = mpmath.mpf(v)
        return +(1 / mpmath.expm1(v) - 1 / v + mpmath.mpf(1) / 2)


# bracket kernel ---------------------------------------------------------------


def test_bracket_at_one():
    assert bracket_kernel(1.0) == pytest.approx(0.08197670686932642, rel=1e-15)


def test_bracket_small_v_leading_term():
    assert bracket_kernel(1e-8) == pytest.approx(1e-8 / 12, rel=1e-15)
    np.testing.assert_allclose(bracket_kernel(1e-8), 8.333333333e-10, rtol=1e-9)


def test_bracket_large_v():
    assert abs(bracket_kernel(100.0) - 0.49) <= 1e-15
    assert bracket_kernel(1e5) == pytest.approx(0.5 - 1e-5, rel=1e-15)


@pytest.mark.parametrize("v", [0.0, -1.0, math.inf, math.nan])
def test_bracket_domain(v):
    with pytest.raises(DomainError):
        bracket_kernel(v)


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=1e-300, max_value=700.0))
def test_bracket_relative_accuracy(v):
    exact = mp_bracket(v)
    assert abs(bracket_kernel(v) - exact) <= 1e-15 * abs(exact)


def test_bracket_branch_crossover():
    v = np.linspace(0.25, 1.0, 200)
    selected = bracket_kernel_array(v)
    assert (v < BRACKET_SWITCH).all()
    np.testing.assert_allclose(bracket_direct(v), selected, rtol=0, atol=1e-14)
    np.testing.assert_allclose(bracket_series(v), selected, rtol=0, atol=1e-14)


def test_bracket_array_matches_scalar():
    v = np.geomspace(1e-6, 500, 97)
    np.testing.assert_array_equal(bracket_kernel_array(v), [bracket_kernel(x) for x in v])


# Bernoulli numbers -----------------------------------------------------------


def test_bernoulli_numbers():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(12) == Fraction(-691, 2730)
    assert all(bernoulli_number(n) == 0 for n in range(3, 60, 2))
    for n in (20, 40, 60):
        assert float(bernoulli_number(n)) == pytest.approx(float(mpmath.bernoulli(n)), rel=1e-15)
    with pytest.raises(DomainError):
        bernoulli_number(61)


# Gamma --------------------------------------------------------------------------


def test_log_gamma_examples():
    assert abs(log_gamma(1)) < 1e-15
    assert log_gamma(5) == pytest.approx(3.1780538303479458, rel=1e-13)
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-13)


def test_reciprocal_gamma_examples():
    assert reciprocal_gamma(0) == 0
    assert reciprocal_gamma(-3) == 0
    assert reciprocal_gamma(1) == pytest.approx(1, rel=1e-13)
    assert reciprocal_gamma(3) == pytest.approx(0.5, rel=1e-13)


@pytest.mark.parametrize("s", [0, -1, -7, -20, 1e-15, -2 + 5e-15j])
def test_poles(s):
    with pytest.raises(PoleError):
        gamma(s)
    with pytest.raises(PoleError):
        log_gamma(s)
    assert reciprocal_gamma(s) == 0


def _grid(n=100, seed=7):
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        s = complex(rng.uniform(-5, 10), rng.uniform(-20, 20))
        if s.real <= 0.5 and abs(s.imag) <= 0.1 and abs(s.real - round(s.real)) <= 0.1:
            continue
        pts.append(s)
    return pts


def test_gamma_recurrence_grid():
    for s in _grid():
        g1 = gamma(s + 1)
        assert abs(g1 - s * gamma(s)) <= 1e-12 * abs(g1)


def test_gamma_reflection_grid():
    for s in _grid():
        if abs(s.imag) < 0.1 and abs(s.real - round(s.real)) < 0.1:
            continue
        ref = math.pi / cmath.sin(math.pi * s)
        assert abs(gamma(s) * gamma(1 - s) - ref) <= 1e-11 * abs(ref)


@settings(max_examples=400, deadline=None)
@given(st.floats(-20, 50), st.floats(-50, 50))
def test_log_gamma_matches_mpmath(re, im):
    s = complex(re, im)
    if abs(im) < 1e-3 and re < 0.5 and abs(re - round(re)) < 1e-3:
        return
    exact = mpmath.loggamma(s)
    assert abs(log_gamma(s) - complex(exact)) <= 1e-13 * max(1.0, abs(exact))


@settings(max_examples=400, deadline=None)
@given(st.floats(-20, 50), st.floats(-50, 50))
def test_reciprocal_gamma_matches_mpmath(re, im):
    s = complex(re, im)
    if abs(im) < 0.05 and re < 0.5 and abs(re - round(re)) < 0.05:
        return
    exact = mpmath.rgamma(s)
    assert abs(reciprocal_gamma(s) - complex(exact)) <= 1e-13 * abs(exact)


def test_gamma_real_values():
    assert gamma(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma(-0.5).real == pytest.approx(-2 * math.sqrt(math.pi), rel=1e-14)
    for n in range(1, 25):
        assert gamma(n).real == pytest.approx(math.factorial(n - 1), rel=1e-13)


def test_log_gamma_branch_on_negative_axis():
    # imaginary part follows mpmath's continuation, -k*pi on (-k, -k+1)
    assert log_gamma(-0.5).imag == pytest.approx(-math.pi, rel=1e-15)
    assert log_gamma(-2.5).imag == pytest.approx(-3 * math.pi, rel=1e-15)


def test_sinpi_exact_at_integers():
    for n in range(-10, 11):
        assert sinpi(n) == 0
    assert sinpi(0.5) == 1
    assert sinpi(-3.5) == 1


def test_pos_pow():
    assert pos_pow(4.0, 0.5) == 2.0
    s = 3 + 4j
    assert pos_pow(2.0, s) == pytest.approx(cmath.exp(s * math.log(2.0)), rel=1e-15)
    assert pos_pow(2.0, s) == pytest.approx(2.0**s, rel=1e-14)
