"""Executable versions of the identities behind Hermite's integral.

Each identity is a (quadrature LHS, closed-form RHS) pair. ``verify_identity``
evaluates both sides and reports the residual against a per-identity floor:
damped oscillatory integrals cannot reach 1e-13 relative in double precision,
so a pure relative test would fail for reasons unrelated to the identity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from types import MappingProxyType

from .errors import DomainError, UnknownIdentity
from .numerics import QuadratureProblem, QuadratureResult, Tolerances, integrate_semi_infinite
from .numerics.special import bracket_kernel, gamma, pos_pow, reciprocal_gamma

__all__ = [
    "IdentityArgs",
    "IdentityReport",
    "IDENTITIES",
    "chen_lhs",
    "chen_rhs",
    "legendre_lhs",
    "legendre_rhs",
    "arctan_integral",
    "gamma_sine_limit_residual",
    "make_report",
    "verify_identity",
]

TINY = 1e-300
CHEN_MAX_IM = 10.0

FLOORS = MappingProxyType(
    {
        "chen": 1e-10,
        "legendre": 1e-12,
        "arctan": 1e-12,
    }
)


@dataclass(frozen=True)
class IdentityArgs:
    """Parameters of an identity check; unused fields stay ``None``."""

    s: complex | None = None
    u: float | None = None
    x: float | None = None
    t: float | None = None

    def describe(self):
        parts = []
        for name in ("s", "u", "x", "t"):
            val = getattr(self, name)
            if val is not None:
                parts.append(f"{name}={val}")
        return ", ".join(parts)


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    args: IdentityArgs
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    passed: bool
    floor: float = 0.0
    converged: bool = True
    n_evals: int = 0
    notes: str = ""


def make_report(identity, args, lhs, rhs, floor, tol, converged=True, n_evals=0, notes="", require_converged=False):
    """Build an :class:`IdentityReport` from both sides of an identity.

    ``passed`` holds when ``|lhs - rhs| <= max(tol.rel_tol * |rhs|, floor)``;
    with ``require_converged`` the quadrature must also have converged.
    """
    lhs = complex(lhs)
    rhs = complex(rhs)
    abs_res = abs(lhs - rhs)
    rel_res = abs_res / max(abs(rhs), TINY)
    passed = abs_res <= max(tol.rel_tol * abs(rhs), floor)
    if require_converged:
        passed = passed and converged
    return IdentityReport(
        identity=identity,
        args=args,
        lhs=lhs,
        rhs=rhs,
        abs_residual=abs_res,
        rel_residual=rel_res,
        passed=bool(passed),
        floor=floor,
        converged=bool(converged),
        n_evals=int(n_evals),
        notes=notes,
    )


def _check_u(u):
    u = float(u)
    if not (math.isfinite(u) and u > 0.0):
        raise DomainError(f"u must be finite and > 0, got {u}")
    return u


def _check_x(x):
    x = float(x)
    if not (math.isfinite(x) and x >= 0.0):
        raise DomainError(f"x must be finite and >= 0, got {x}")
    return x


def _check_t(t):
    t = float(t)
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"t must be finite and > 0, got {t}")
    return t


def _check_chen_s(s):
    s = complex(s)
    if not s.real > 0.0:
        raise DomainError(f"Chen's identity needs Re s > 0, got s = {s}")
    if abs(s.imag) > CHEN_MAX_IM:
        raise DomainError(f"Chen's identity is supported for |Im s| <= {CHEN_MAX_IM}, got s = {s}")
    return s


def _scaled(res, factor):
    return QuadratureResult(
        value=factor * res.value,
        err_estimate=abs(factor) * res.err_estimate,
        n_evals=res.n_evals,
        converged=res.converged,
        levels=res.levels,
    )


# Chen's sine transform -------------------------------------------------------


def chen_rhs(s, u, x):
    """``sin(s atan(x/u)) / (u^2 + x^2)^(s/2)`` in closed form."""
    u = _check_u(u)
    x = _check_x(x)
    s = complex(s)
    theta = math.atan2(x, u)
    return cmath.sin(s * theta) * pos_pow(math.hypot(u, x), -s)


def chen_lhs(s, u, x, tol=Tolerances()):
    """``(2/Gamma(s)) int_0^inf e^{-u y^2} y^{2s-1} sin(x y^2) dy``.

    Integrated in ``w = y^2``, where it reads
    ``(1/Gamma(s)) int_0^inf e^{-uw} w^{s-1} sin(xw) dw``.
    """
    s = _check_chen_s(s)
    u = _check_u(u)
    x = _check_x(x)
    res = integrate_semi_infinite(QuadratureProblem("chen_w", {"s": s, "u": u, "x": x}, "w"), tol)
    return _scaled(res, reciprocal_gamma(s))


# Legendre's relation ---------------------------------------------------------


def legendre_rhs(t):
    """``(1/2)[1/(e^t - 1) - 1/t + 1/2]``, through the cancellation-safe bracket."""
    return 0.5 * bracket_kernel(_check_t(t))


def legendre_lhs(t, tol=Tolerances()):
    """``int_0^inf sin(xt) / (e^{2 pi x} - 1) dx``."""
    t = _check_t(t)
    return integrate_semi_infinite(QuadratureProblem("legendre", {"t": t}, "x"), tol)


# arctan as a Laplace integral ------------------------------------------------


def arctan_integral(x, u, tol=Tolerances()):
    """``int_0^inf e^{-uy} sin(xy) / y dy``, which equals ``atan(x/u)``."""
    x = _check_x(x)
    u = _check_u(u)
    return integrate_semi_infinite(QuadratureProblem("arctan", {"x": x, "u": u}, "y"), tol)


# the s -> 0 limit ------------------------------------------------------------


def gamma_sine_product(x, u, s_probe):
    theta = math.atan2(_check_x(x), _check_u(u))
    return gamma(s_probe).real * math.sin(s_probe * theta)


def gamma_sine_limit_residual(x, u, s_probe):
    """``|Gamma(s) sin(s atan(x/u)) - atan(x/u)|`` at a small probe ``s``.

    The residual is O(s_probe): it behaves like ``euler_gamma * s * atan(x/u)``.
    """
    s_probe = float(s_probe)
    if not 0.0 < s_probe < 0.5:
        raise DomainError(f"s_probe must lie in (0, 0.5), got {s_probe}")
    x = _check_x(x)
    u = _check_u(u)
    return abs(gamma_sine_product(x, u, s_probe) - math.atan2(x, u))


# dispatch --------------------------------------------------------------------


def _verify_chen(args, tol):
    q = chen_lhs(args.s, args.u, args.x, tol)
    rhs = chen_rhs(args.s, args.u, args.x)
    return make_report("chen", args, q.value, rhs, FLOORS["chen"], tol, q.converged, q.n_evals)


def _verify_legendre(args, tol):
    q = legendre_lhs(args.t, tol)
    rhs = legendre_rhs(args.t)
    return make_report("legendre", args, q.value, rhs, FLOORS["legendre"], tol, q.converged, q.n_evals)


def _verify_arctan(args, tol):
    q = arctan_integral(args.x, args.u, tol)
    rhs = math.atan2(args.x, args.u)
    return make_report("arctan", args, q.value, rhs, FLOORS["arctan"], tol, q.converged, q.n_evals)


def _verify_limit(args, tol):
    s = complex(args.s)
    if s.imag != 0.0:
        raise DomainError(f"the limit identity takes a real probe s, got {s}")
    s_probe = s.real
    gamma_sine_limit_residual(args.x, args.u, s_probe)  # domain checks
    theta = math.atan2(args.x, args.u)
    lhs = gamma_sine_product(args.x, args.u, s_probe)
    # |Gamma(1+s) sinc(s theta) - 1| <= 0.8 s on (0, 0.5), so s*theta bounds the residual
    return make_report("limit", args, lhs, theta, s_probe * theta, tol)


IDENTITIES = MappingProxyType(
    {
        "chen": (_verify_chen, ("s", "u", "x")),
        "legendre": (_verify_legendre, ("t",)),
        "arctan": (_verify_arctan, ("x", "u")),
        "limit": (_verify_limit, ("s", "x", "u")),
    }
)


def verify_identity(name, args, tol=Tolerances()):
    """Evaluate both sides of a named identity and report the residual.

    Parameters
    ----------
    name : {"chen", "legendre", "arctan", "limit"}
    args : IdentityArgs
        Must set the fields the identity uses; for ``limit`` the probe
        exponent is carried in ``args.s``.
    tol : Tolerances

    Raises
    ------
    UnknownIdentity
        If ``name`` is not one of the four identities.
    DomainError
        If a required field is missing or out of range.
    """
    try:
        func, needed = IDENTITIES[name]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {name!r}; choose from {sorted(IDENTITIES)}") from None
    missing = [f for f in needed if getattr(args, f) is None]
    if missing:
        raise DomainError(f"identity {name!r} needs {', '.join(missing)}")
    return func(args, tol)
