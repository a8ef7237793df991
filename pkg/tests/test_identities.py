import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermite_zeta.errors import DomainError, UnknownIdentity
from hermite_zeta.identities import (
    IdentityArgs,
    arctan_integral,
    chen_lhs,
    chen_rhs,
    gamma_sine_limit_residual,
    legendre_lhs,
    legendre_rhs,
    verify_identity,
)

# (2/sqrt(pi)) int_0^8 e^{-y^2} sin(3 y^2) dy by a 1e7-point trapezoid rule
CHEN_HALF_1_3_TRAPEZOID = 0.32880675633024764


# Chen -----------------------------------------------------------------------------


def test_chen_rhs_examples():
    assert chen_rhs(1, 1, 1) == pytest.approx(0.5, rel=1e-15)
    assert chen_rhs(2, 1, 1) == pytest.approx(0.5, rel=1e-15)
    assert chen_rhs(3.7 + 2j, 2.0, 0.0) == 0


def test_chen_rhs_domain():
    with pytest.raises(DomainError):
        chen_rhs(1, 0, 1)


def test_chen_lhs_examples():
    assert abs(chen_lhs(1, 1, 1).value - 0.5) <= 1e-12
    assert abs(chen_lhs(1, 2, 2).value - 0.25) <= 1e-12
    r = chen_lhs(0.5, 1, 3)
    assert abs(r.value - CHEN_HALF_1_3_TRAPEZOID) <= 1e-13
    assert abs(r.value - chen_rhs(0.5, 1, 3)) <= 1e-13


@pytest.mark.parametrize("s, u", [(0, 1), (-0.5, 1), (1, 0), (1 + 11j, 1)])
def test_chen_lhs_domain(s, u):
    with pytest.raises(DomainError):
        chen_lhs(s, u, 1.0)


def test_chen_grid():
    for s, u, x in itertools.product([0.5, 1, 1.5, 2.5, 4], [0.5, 1, 3], [0, 0.5, 2, 10]):
        rep = verify_identity("chen", IdentityArgs(s=s, u=u, x=x))
        assert rep.passed
        assert rep.abs_residual <= 1e-10


@pytest.mark.parametrize("s", [2 + 3j, 0.5 - 1j, 1 + 10j])
def test_chen_complex_s(s):
    rep = verify_identity("chen", IdentityArgs(s=s, u=1.0, x=2.0))
    assert rep.passed
    assert rep.abs_residual <= 1e-10


def test_chen_substitution_matches_y_variable():
    # the w = y^2 route against a direct integration in y
    from hermite_zeta.numerics import QuadratureProblem, integrate_semi_infinite
    from hermite_zeta.numerics.special import reciprocal_gamma

    for s, u, x in [(0.5, 1.0, 3.0), (2.5, 0.5, 2.0), (1.5, 3.0, 0.5)]:
        in_y = integrate_semi_infinite(QuadratureProblem("chen_y", {"s": s, "u": u, "x": x}, "y"))
        assert abs(2 * reciprocal_gamma(s) * in_y.value - chen_lhs(s, u, x).value) <= 1e-13


# Legendre ---------------------------------------------------------------------------


def test_legendre_rhs_examples():
    assert legendre_rhs(1) == pytest.approx(0.04098835343466321, rel=1e-15)
    assert legendre_rhs(1e-8) == pytest.approx(1e-8 / 24, rel=1e-12)
    assert abs(legendre_rhs(50) - 0.24) <= 1e-15


def test_legendre_lhs_examples():
    assert abs(legendre_lhs(1).value - 0.04098835343466321) <= 1e-12
    two_pi = 2 * math.pi
    expected = 0.5 * (1 / math.expm1(two_pi) - 1 / two_pi + 0.5)
    assert legendre_lhs(two_pi).value.real == pytest.approx(expected, rel=1e-13)
    assert expected == pytest.approx(0.17135799675338, rel=1e-12)
    assert abs(legendre_lhs(1e-4).value.real / 1e-4 - 1 / 24) <= 1e-6


@pytest.mark.parametrize("t", [1e-3, 0.1, 1, 2 * math.pi, 10, 50])
def test_legendre_grid(t):
    rep = verify_identity("legendre", IdentityArgs(t=t))
    assert rep.passed
    assert rep.abs_residual <= 1e-12


def test_legendre_domain():
    with pytest.raises(DomainError):
        legendre_rhs(0)
    with pytest.raises(DomainError):
        legendre_lhs(-1)


# arctan -----------------------------------------------------------------------------


def test_arctan_examples():
    assert abs(arctan_integral(1, 1).value - math.pi / 4) <= 1e-12
    assert arctan_integral(0, 1).value == 0
    assert abs(arctan_integral(10, 1).value - 1.4711276743037347) <= 1e-11


def test_arctan_grid_and_monotonicity():
    for u in [0.25, 1, 4]:
        values = []
        for x in [0, 0.5, 1, 10]:
            rep = verify_identity("arctan", IdentityArgs(x=x, u=u))
            assert rep.abs_residual <= 1e-11
            values.append(rep.lhs.real)
        assert all(a < b for a, b in zip(values, values[1:]))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 20.0), st.floats(0.25, 10.0))
def test_arctan_property(x, u):
    assert abs(arctan_integral(x, u).value - math.atan2(x, u)) <= 1e-11


def test_arctan_slow_decay_is_flagged():
    # x/u = 400: too oscillatory for the level budget, must not claim convergence
    r = arctan_integral(20.0, 0.05)
    assert not r.converged
    assert r.err_estimate > 1e-13


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-4, 60.0))
def test_odd_parameter_sign(t):
    # odd in the oscillation parameter: restricted to t >= 0 the sign follows t
    assert legendre_lhs(t).value.real * t >= 0
    assert arctan_integral(t, 1.0).value.real * t >= 0


def test_odd_parameter_zero():
    assert arctan_integral(0.0, 2.0).value == 0


# s -> 0 limit ---------------------------------------------------------------------


def test_limit_examples():
    assert gamma_sine_limit_residual(1, 1, 1e-6) < 1e-5
    assert gamma_sine_limit_residual(0, 1, 0.3) == 0
    assert gamma_sine_limit_residual(0, 1, 1e-4) == 0
    r3 = gamma_sine_limit_residual(1, 1, 1e-3)
    r4 = gamma_sine_limit_residual(1, 1, 1e-4)
    assert 8 <= r3 / r4 <= 12


def test_limit_first_order_convergence():
    res = [gamma_sine_limit_residual(1, 1, 10.0**-k) for k in range(2, 7)]
    assert all(a > b for a, b in zip(res, res[1:]))
    ratios = [a / b for a, b in zip(res, res[1:])]
    assert all(8 <= q <= 12 for q in ratios)


@pytest.mark.parametrize("s_probe", [0.0, 0.5, -1e-3, 0.7])
def test_limit_domain(s_probe):
    with pytest.raises(DomainError):
        gamma_sine_limit_residual(1, 1, s_probe)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 100.0), st.floats(0.01, 100.0), st.floats(1e-8, 0.49))
def test_limit_residual_bounded_by_probe(x, u, s):
    assert gamma_sine_limit_residual(x, u, s) <= s * math.atan2(x, u) + 1e-15


# dispatch ---------------------------------------------------------------------------


def test_verify_identity_examples():
    rep = verify_identity("chen", IdentityArgs(s=1, u=1, x=1))
    assert rep.passed and rep.rel_residual < 1e-11
    assert verify_identity("legendre", IdentityArgs(t=1)).passed
    rep = verify_identity("arctan", IdentityArgs(x=1, u=1))
    assert rep.passed
    assert rep.lhs.real == pytest.approx(math.pi / 4, rel=1e-13)
    assert rep.rhs.real == pytest.approx(math.pi / 4, rel=1e-15)
    assert verify_identity("limit", IdentityArgs(s=1e-3, x=1, u=1)).passed


def test_report_fields_consistent():
    rep = verify_identity("chen", IdentityArgs(s=2.5, u=0.5, x=2.0))
    assert rep.abs_residual == abs(rep.lhs - rep.rhs)
    assert rep.rel_residual == pytest.approx(rep.abs_residual / abs(rep.rhs))


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        verify_identity("fresnel", IdentityArgs())


def test_missing_arguments():
    with pytest.raises(DomainError):
        verify_identity("chen", IdentityArgs(s=1, u=1))
