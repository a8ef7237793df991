"""Hurwitz zeta evaluators and the oracles used to check them.

``zeta_hermite`` and ``zeta_integral3`` are the two integral representations;
``zeta_series`` (Euler-Maclaurin summation of the defining series) and the
Bernoulli-polynomial closed forms at nonpositive integers are independent of
both and serve as oracles.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

import numpy as np

from .errors import DomainError, PoleError
from .identities import IdentityArgs, make_report
from .numerics import QuadratureProblem, Tolerances, integrate_function, integrate_semi_infinite
from .numerics.kernels import chen_y, hermite_tail
from .numerics.special import BERNOULLI, pos_pow, reciprocal_gamma

__all__ = [
    "ZetaResult",
    "METHODS",
    "zeta",
    "zeta_hermite",
    "zeta_integral3",
    "zeta_series",
    "bernoulli_poly",
    "zeta_neg_int_oracle",
    "verify_eq2",
    "verify_representations",
    "verify_recurrence",
    "verify_neg_int",
]

POLE_EXCLUSION = 1e-8
SERIES_MIN_RE = 1.05
_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class ZetaResult:
    value: complex
    err_estimate: float
    method: str
    n_evals: int
    converged: bool = True


def _check_u(u):
    u = float(u)
    if not (math.isfinite(u) and u > 0.0):
        raise DomainError(f"u must be finite and > 0, got {u}")
    return u


def _check_s(s):
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"s must be finite, got {s}")
    if abs(s - 1.0) <= POLE_EXCLUSION:
        raise PoleError(f"s = {s} is within {POLE_EXCLUSION} of the pole at s = 1")
    return s


def _head(s, u):
    """``u^{-s}/2 + u^{1-s}/(s-1)`` and a bound on its rounding error."""
    a = 0.5 * pos_pow(u, -s)
    b = pos_pow(u, 1.0 - s) / (s - 1.0)
    return a + b, 4.0 * _EPS * (abs(a) + abs(b))


def zeta_hermite(s, u, tol=Tolerances()):
    """Hurwitz zeta through Hermite's integral, valid for every ``s != 1``.

    Parameters
    ----------
    s : complex
    u : float
        Must be positive.
    tol : Tolerances
        Governs the tail integral; ``converged`` reports whether it met them.

    Returns
    -------
    ZetaResult
        ``method == "hermite"``.
    """
    s = _check_s(s)
    u = _check_u(u)
    head, head_err = _head(s, u)
    q = integrate_semi_infinite(QuadratureProblem("hermite_tail", {"s": s, "u": u}, "x"), tol)
    value = head + 2.0 * q.value
    return ZetaResult(value, 2.0 * q.err_estimate + head_err, "hermite", q.n_evals, q.converged)


def zeta_integral3(s, u, tol=Tolerances()):
    """Hurwitz zeta through the bracket-kernel Laplace integral (``Re s > -1``).

    The integral is weighted by ``1/Gamma(s)``, so at ``s = 0`` it is never
    evaluated and the result is exactly ``1/2 - u``.
    """
    s = _check_s(s)
    u = _check_u(u)
    if not s.real > -1.0:
        raise DomainError(f"the bracket-kernel representation needs Re s > -1, got s = {s}")
    head, head_err = _head(s, u)
    rgamma = reciprocal_gamma(s)
    if rgamma == 0:
        return ZetaResult(head, head_err, "integral3", 0, True)
    q = integrate_semi_infinite(QuadratureProblem("integral3", {"s": s, "u": u}, "v"), tol)
    value = head + rgamma * q.value
    err = abs(rgamma) * q.err_estimate + head_err
    return ZetaResult(value, err, "integral3", q.n_evals, q.converged)


_EM_TERMS = 14
_EM_COEFFS = tuple(float(BERNOULLI[2 * k] / math.factorial(2 * k)) for k in range(1, _EM_TERMS + 2))
_SERIES_MAX_N = 1 << 20


def _euler_maclaurin(s, u, n_terms):
    n = np.arange(n_terms, dtype=float) + u
    if s.imag == 0.0:
        terms = n ** (-s.real)
    else:
        terms = np.exp(-s * np.log(n))
    head = complex(np.sum(terms))
    head_abs = float(np.sum(np.abs(terms)))

    a = n_terms + u
    tail = pos_pow(a, 1.0 - s) / (s - 1.0) + 0.5 * pos_pow(a, -s)
    a_pow = pos_pow(a, -s - 1.0)
    inv_a2 = 1.0 / (a * a)
    rising = s  # s (s+1) ... (s+2k-2)
    corr = 0j
    for k in range(1, _EM_TERMS + 1):
        corr += _EM_COEFFS[k - 1] * rising * a_pow
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        a_pow *= inv_a2
    nxt = abs(_EM_COEFFS[_EM_TERMS] * rising * a_pow)
    m = 2 * _EM_TERMS + 1
    remainder = nxt * abs(s + m) / (s.real + m)
    value = head + tail + corr
    roundoff = 4.0 * _EPS * (head_abs + abs(tail) + abs(corr))
    return value, remainder + roundoff


def zeta_series(s, u, tol=Tolerances()):
    """Defining series ``sum_{n>=0} (n+u)^{-s}`` with an Euler-Maclaurin tail.

    The first ``N`` terms are summed directly and the tail from ``N`` on is
    replaced by its Euler-Maclaurin expansion; ``N`` doubles until the
    remainder bound (plus summation roundoff) meets the tolerance.

    Raises
    ------
    DomainError
        If ``Re s <= 1.05``.
    """
    s = complex(s)
    u = _check_u(u)
    if not s.real > SERIES_MIN_RE:
        raise DomainError(f"the series oracle needs Re s > {SERIES_MIN_RE}, got s = {s}")
    n_terms = max(16, math.ceil(abs(s)))
    while True:
        value, err = _euler_maclaurin(s, u, n_terms)
        ok = err <= tol.target(value)
        if ok or 2 * n_terms > min(_SERIES_MAX_N, tol.max_evals):
            return ZetaResult(value, float(err), "series", n_terms, bool(ok))
        n_terms *= 2


METHODS = MappingProxyType(
    {"hermite": zeta_hermite, "integral3": zeta_integral3, "series": zeta_series}
)


def zeta(s, u, method="auto", tol=Tolerances()):
    """Dispatch to an evaluator; ``auto`` prefers the series where it is valid."""
    if method == "auto":
        method = "series" if complex(s).real > SERIES_MIN_RE else "hermite"
    try:
        func = METHODS[method]
    except KeyError:
        raise DomainError(f"unknown method {method!r}; choose from auto, {', '.join(METHODS)}") from None
    return func(s, u, tol)


# Bernoulli polynomials ---------------------------------------------------------

_F = Fraction
# ascending-power coefficients of B_0 .. B_8
_BERNOULLI_POLY = (
    (_F(1),),
    (_F(-1, 2), _F(1)),
    (_F(1, 6), _F(-1), _F(1)),
    (_F(0), _F(1, 2), _F(-3, 2), _F(1)),
    (_F(-1, 30), _F(0), _F(1), _F(-2), _F(1)),
    (_F(0), _F(-1, 6), _F(0), _F(5, 3), _F(-5, 2), _F(1)),
    (_F(1, 42), _F(0), _F(-1, 2), _F(0), _F(5, 2), _F(-3), _F(1)),
    (_F(0), _F(1, 6), _F(0), _F(-7, 6), _F(0), _F(7, 2), _F(-7, 2), _F(1)),
    (_F(-1, 30), _F(0), _F(2, 3), _F(0), _F(-7, 3), _F(0), _F(14, 3), _F(-4), _F(1)),
)


def bernoulli_poly(n, x):
    """Bernoulli polynomial ``B_n(x)`` for ``0 <= n <= 8``.

    Rational ``x`` (int or Fraction) is evaluated exactly and returned as a
    Fraction; floats are evaluated by Horner's rule in floating point.
    """
    if int(n) != n or not 0 <= n < len(_BERNOULLI_POLY):
        raise DomainError(f"bernoulli_poly supports 0 <= n <= 8, got {n}")
    coeffs = _BERNOULLI_POLY[int(n)]
    exact = isinstance(x, (int, Fraction))
    acc = Fraction(0) if exact else 0.0
    for c in reversed(coeffs):
        acc = acc * x + (c if exact else float(c))
    return acc


def zeta_neg_int_oracle(n, u):
    """``zeta(-n, u) = -B_{n+1}(u) / (n+1)`` for ``0 <= n <= 7``."""
    if int(n) != n or not 0 <= n <= 7:
        raise DomainError(f"zeta_neg_int_oracle supports 0 <= n <= 7, got {n}")
    u = _check_u(u)
    n = int(n)
    return -bernoulli_poly(n + 1, u) / (n + 1)


# consistency checks ------------------------------------------------------------

EQ2_INNER_RTOL = 1e-11
EQ2_OUTER_RTOL = 1e-9
EQ2_FLOOR = 1e-8
EQ2_NEGLIGIBLE_BOSE = 1e-30
REPRESENTATION_FLOOR = 1e-10
RECURRENCE_FLOOR = 1e-11
NEG_INT_FLOOR = 1e-11


def verify_eq2(s, u, tol=Tolerances()):
    """Check the order-of-integration swap behind Hermite's integral.

    LHS: ``(2/Gamma(s)) int_0^inf dx/(e^{2 pi x} - 1) int_0^inf e^{-u y^2}
    y^{2s-1} sin(x y^2) dy`` by nested quadrature, outer in ``x`` and inner
    in ``y``; outer nodes whose Bose weight is below 1e-30 are not
    integrated. RHS: the Hermite tail ``int_0^inf sin(s atan(x/u)) /
    ((u^2+x^2)^{s/2} (e^{2 pi x} - 1)) dx``. The report only passes when
    the residual is under 1e-8 and every inner and outer integral converged.
    """
    s = _check_s(s)
    u = _check_u(u)
    if not s.real > 0.0:
        raise DomainError(f"the nested integral needs Re s > 0, got s = {s}")
    inner_tol = Tolerances(EQ2_INNER_RTOL, tol.abs_tol, tol.max_levels, tol.max_evals)
    outer_tol = Tolerances(EQ2_OUTER_RTOL, tol.abs_tol, tol.max_levels, tol.max_evals)

    stats = {"evals": 0, "inner": 0, "failed": 0, "skipped": 0}

    def outer(x):
        a = 2.0 * np.pi * x
        with np.errstate(all="ignore"):
            bose = np.exp(-a) / (-np.expm1(-a))
        vals = np.zeros(x.shape, dtype=complex)
        for i, xi in enumerate(x):
            # |inner| <= Gamma(Re s) / (2 u^{Re s}), so these nodes add < 1e-30 of that
            if bose[i] < EQ2_NEGLIGIBLE_BOSE:
                stats["skipped"] += 1
                continue
            q = integrate_function(lambda y: chen_y(y, s, u, xi), inner_tol)
            stats["evals"] += q.n_evals
            stats["inner"] += 1
            stats["failed"] += not q.converged
            vals[i] = q.value
        return np.where(vals == 0, 0.0, bose * vals)

    q_out = integrate_function(outer, outer_tol)
    lhs = 2.0 * reciprocal_gamma(s) * q_out.value
    q_rhs = integrate_semi_infinite(QuadratureProblem("hermite_tail", {"s": s, "u": u}, "x"), tol)
    converged = q_out.converged and stats["failed"] == 0 and q_rhs.converged
    notes = (
        f"outer converged={q_out.converged} levels={q_out.levels}; "
        f"inner integrals={stats['inner']} unconverged={stats['failed']} "
        f"skipped={stats['skipped']}; "
        f"rhs converged={q_rhs.converged}"
    )
    return make_report(
        "fubini",
        IdentityArgs(s=s, u=u),
        lhs,
        q_rhs.value,
        EQ2_FLOOR,
        tol,
        converged,
        stats["evals"] + q_out.n_evals + q_rhs.n_evals,
        notes,
        require_converged=True,
    )


def verify_representations(s, u, tol=Tolerances()):
    """Hermite's integral against the bracket-kernel integral (absolute 1e-10)."""
    h = zeta_hermite(s, u, tol)
    i3 = zeta_integral3(s, u, tol)
    return make_report(
        "eq3-eq4",
        IdentityArgs(s=complex(s), u=float(u)),
        h.value,
        i3.value,
        REPRESENTATION_FLOOR,
        tol,
        h.converged and i3.converged,
        h.n_evals + i3.n_evals,
    )


def verify_recurrence(s, u, tol=Tolerances()):
    """``zeta(s,u) - zeta(s,u+1) = u^{-s}`` through Hermite's integral."""
    a = zeta_hermite(s, u, tol)
    b = zeta_hermite(s, float(u) + 1.0, tol)
    rhs = pos_pow(float(u), -complex(s))
    return make_report(
        "recurrence",
        IdentityArgs(s=complex(s), u=float(u)),
        a.value - b.value,
        rhs,
        RECURRENCE_FLOOR * max(1.0, abs(rhs)),
        tol,
        a.converged and b.converged,
        a.n_evals + b.n_evals,
    )


def verify_neg_int(n, u, tol=Tolerances()):
    """Hermite's integral at ``s = -n`` against ``-B_{n+1}(u)/(n+1)``."""
    oracle = zeta_neg_int_oracle(n, u)
    h = zeta_hermite(-int(n), u, tol)
    return make_report(
        "neg-int",
        IdentityArgs(s=complex(-int(n)), u=float(u)),
        h.value,
        oracle,
        NEG_INT_FLOOR,
        tol,
        h.converged,
        h.n_evals,
    )
