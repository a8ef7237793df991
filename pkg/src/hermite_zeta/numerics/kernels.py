"""Registered integrand families for :func:`integrate_semi_infinite`.

Every kernel takes a float array of nodes in (0, inf) and returns the
integrand values. Amplitudes are formed in the log domain and oscillating
factors are masked where the amplitude underflows, so nodes out to 1e277
never produce ``0 * inf``. Removable singularities at the origin are
replaced by two-term Taylor expansions below a threshold small enough that
the dropped quadratic term is under one ulp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable

import numpy as np

from ..errors import DomainError
from .special import BRACKET_SWITCH, bracket_kernel_array, bracket_over_v_series

__all__ = [
    "KernelSpec",
    "KERNELS",
    "get_kernel",
    "hermite_tail",
    "integral3_kernel",
    "chen_w",
    "chen_y",
    "legendre_kernel",
    "arctan_kernel",
    "HERMITE_SMALL_X",
]

TWO_PI = 2.0 * math.pi
# Below these scaled arguments the Taylor pair is exact to double precision.
TAYLOR_SWITCH = 1e-8
HERMITE_SMALL_X = 1e-9


def _real(name, value):
    value = complex(value)
    if value.imag != 0.0:
        raise DomainError(f"parameter {name} must be real, got {value}")
    if not math.isfinite(value.real):
        raise DomainError(f"parameter {name} must be finite, got {value}")
    return value.real


def _positive(name):
    def check(value):
        v = _real(name, value)
        if v <= 0.0:
            raise DomainError(f"parameter {name} must be > 0, got {v}")
        return v

    return check


def _nonnegative(name):
    def check(value):
        v = _real(name, value)
        if v < 0.0:
            raise DomainError(f"parameter {name} must be >= 0, got {v}")
        return v

    return check


def _complex_s(value):
    s = complex(value)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"parameter s must be finite, got {s}")
    return s


def _complex_s_positive_re(value):
    s = _complex_s(value)
    if s.real <= 0.0:
        raise DomainError(f"parameter s needs Re s > 0, got {s}")
    return s


def _complex_s_re_above_minus1(value):
    s = _complex_s(value)
    if s.real <= -1.0:
        raise DomainError(f"parameter s needs Re s > -1, got {s}")
    return s


@dataclass(frozen=True)
class KernelSpec:
    name: str
    func: Callable[..., np.ndarray]
    checks: MappingProxyType

    def check_params(self, params):
        missing = set(self.checks) - set(params)
        extra = set(params) - set(self.checks)
        if missing or extra:
            raise DomainError(
                f"kernel {self.name!r} takes parameters {sorted(self.checks)}, got {sorted(params)}"
            )
        return MappingProxyType({k: self.checks[k](params[k]) for k in self.checks})


def _mask_mul(amp, osc):
    # amp underflows to 0 before osc can be inf/nan at far nodes
    with np.errstate(all="ignore"):
        out = amp * osc
    return np.where(amp == 0, 0.0, out)


# reference integrands --------------------------------------------------------


def exp_decay(x):
    return np.exp(-x)


def gauss(x):
    with np.errstate(over="ignore"):
        return np.exp(-x * x)


def x_exp(x):
    return _mask_mul(np.exp(-x), x)


def lorentz(x):
    with np.errstate(over="ignore"):
        return 1.0 / (1.0 + x * x)


def zero(x):
    return np.zeros_like(x)


# paper integrands ------------------------------------------------------------


def _log_hypot_sq(u, x):
    return 2.0 * np.log(np.hypot(u, x))


def hermite_tail(x, s, u):
    """``sin(s atan(x/u)) / ((u^2 + x^2)^(s/2) (e^{2 pi x} - 1))``.

    The Bose factor is written ``e^{-a} / (1 - e^{-a})`` with ``a = 2 pi x``
    so that it neither overflows nor cancels.
    """
    x = np.asarray(x, dtype=float)
    s = complex(s)
    if s == 0:
        return np.zeros(x.shape, dtype=complex)
    a = TWO_PI * x
    with np.errstate(all="ignore"):
        amp = np.exp(-0.5 * s * _log_hypot_sq(u, x) - a) / (-np.expm1(-a))
        out = _mask_mul(amp, np.sin(s * np.arctan(x / u)))
    small = x < HERMITE_SMALL_X * min(u, 1.0)
    if small.any():
        # s/(2 pi u^{s+1}) - s x /(2 u^{s+1})
        lead = s * np.exp(-(s + 1.0) * math.log(u))
        out = np.where(small, lead * (1.0 / TWO_PI - 0.5 * x), out)
    return out


def integral3_kernel(v, s, u):
    """``e^{-uv} v^{s-1} [1/(e^v - 1) - 1/v + 1/2]``."""
    v = np.asarray(v, dtype=float)
    s = complex(s)
    small = v < BRACKET_SWITCH
    out = np.empty(v.shape, dtype=complex)
    # bracket ~ v/12 near 0: absorb the v into the power so v^{s-1} cannot overflow
    vs = v[small]
    out[small] = np.exp(-u * vs + s * np.log(vs)) * bracket_over_v_series(vs)
    vb = v[~small]
    with np.errstate(all="ignore"):
        amp = np.exp(-u * vb + (s - 1.0) * np.log(vb))
    out[~small] = _mask_mul(amp, bracket_kernel_array(vb))
    return out


def chen_w(w, s, u, x):
    """Chen's integrand after ``w = y^2``: ``e^{-uw} w^{s-1} sin(xw)``."""
    w = np.asarray(w, dtype=float)
    s = complex(s)
    with np.errstate(all="ignore"):
        amp = np.exp(-u * w + (s - 1.0) * np.log(w))
        return _mask_mul(amp, np.sin(x * w))


def chen_y(y, s, u, x):
    """Chen's integrand in the original variable: ``e^{-uy^2} y^{2s-1} sin(xy^2)``."""
    y = np.asarray(y, dtype=float)
    s = complex(s)
    with np.errstate(all="ignore"):
        y2 = y * y
        amp = np.exp(-u * y2 + (2.0 * s - 1.0) * np.log(y))
        return _mask_mul(amp, np.sin(x * y2))


def legendre_kernel(x, t):
    """``sin(xt) / (e^{2 pi x} - 1)``, limit ``t/(2 pi)`` at the origin."""
    x = np.asarray(x, dtype=float)
    a = TWO_PI * x
    with np.errstate(all="ignore"):
        amp = np.exp(-a) / (-np.expm1(-a))
        out = _mask_mul(amp, np.sin(x * t))
    small = x * max(t, TWO_PI) < TAYLOR_SWITCH
    if small.any():
        out = np.where(small, t / TWO_PI - 0.5 * t * x, out)
    return out


def arctan_kernel(y, x, u):
    """``e^{-uy} sin(xy) / y``, limit ``x`` at the origin."""
    y = np.asarray(y, dtype=float)
    with np.errstate(all="ignore"):
        amp = np.exp(-u * y) / y
        out = _mask_mul(amp, np.sin(x * y))
    small = y * max(x, u) < TAYLOR_SWITCH
    if small.any():
        out = np.where(small, x * (1.0 - u * y), out)
    return out


KERNELS = MappingProxyType(
    {
        spec.name: spec
        for spec in (
            KernelSpec("exp_decay", exp_decay, MappingProxyType({})),
            KernelSpec("gauss", gauss, MappingProxyType({})),
            KernelSpec("x_exp", x_exp, MappingProxyType({})),
            KernelSpec("lorentz", lorentz, MappingProxyType({})),
            KernelSpec("zero", zero, MappingProxyType({})),
            KernelSpec(
                "hermite_tail",
                hermite_tail,
                MappingProxyType({"s": _complex_s, "u": _positive("u")}),
            ),
            KernelSpec(
                "integral3",
                integral3_kernel,
                MappingProxyType({"s": _complex_s_re_above_minus1, "u": _positive("u")}),
            ),
            KernelSpec(
                "chen_w",
                chen_w,
                MappingProxyType(
                    {"s": _complex_s_positive_re, "u": _positive("u"), "x": _nonnegative("x")}
                ),
            ),
            KernelSpec(
                "chen_y",
                chen_y,
                MappingProxyType(
                    {"s": _complex_s_positive_re, "u": _positive("u"), "x": _nonnegative("x")}
                ),
            ),
            KernelSpec("legendre", legendre_kernel, MappingProxyType({"t": _positive("t")})),
            KernelSpec(
                "arctan",
                arctan_kernel,
                MappingProxyType({"x": _nonnegative("x"), "u": _positive("u")}),
            ),
        )
    }
)


def get_kernel(name):
    try:
        return KERNELS[name]
    except KeyError:
        raise DomainError(f"unknown kernel {name!r}; registered: {sorted(KERNELS)}") from None
