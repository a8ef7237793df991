"""Exception hierarchy shared by every module of the package."""


class HermiteZetaError(Exception):
    """Base class for all package errors."""


class DomainError(HermiteZetaError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PoleError(DomainError):
    """The argument sits on (or too close to) a pole."""


class NonFiniteIntegrand(HermiteZetaError, ArithmeticError):
    """A kernel produced NaN or infinity at a quadrature node."""


class UnknownIdentity(HermiteZetaError, KeyError):
    """The requested identity name is not registered."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown identity"
