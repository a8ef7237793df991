"""Quadrature engine, integrand kernels and scalar special functions."""

from .kernels import KERNELS, get_kernel
from .quadrature import (
    QuadratureProblem,
    QuadratureResult,
    Tolerances,
    integrate_function,
    integrate_semi_infinite,
)
from .special import (
    bernoulli_number,
    bracket_kernel,
    gamma,
    log_gamma,
    pos_pow,
    reciprocal_gamma,
)

__all__ = [
    "KERNELS",
    "get_kernel",
    "QuadratureProblem",
    "QuadratureResult",
    "Tolerances",
    "integrate_function",
    "integrate_semi_infinite",
    "bernoulli_number",
    "bracket_kernel",
    "gamma",
    "log_gamma",
    "pos_pow",
    "reciprocal_gamma",
]
