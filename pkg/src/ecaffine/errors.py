"""Exception hierarchy.

Two families: :class:`PreconditionError` for inputs outside an operation's
domain (CLI exit status 2) and :class:`NumericalError` for numerical
breakdowns on valid inputs (CLI exit status 3).
"""


class EcaError(Exception):
    """Base class for all package errors."""


class PreconditionError(EcaError, ValueError):
    pass


class NumericalError(EcaError, ArithmeticError):
    pass


class DomainError(PreconditionError):
    """Argument outside the mathematical domain of a function."""


class NotAdmissible(PreconditionError):
    """The cubic does not have two distinct positive roots."""


class Degenerate(PreconditionError):
    """The two positive roots coincide (constant curvature, no oscillation)."""


class OutOfRange(PreconditionError):
    """Requested rotation ratio p/q lies outside the attainable interval."""


class NotCritical(PreconditionError):
    """Profile does not satisfy the Euler-Lagrange equation."""


class NotClosed(PreconditionError):
    """Trace does not close up within tolerance."""


class IneligibleParity(PreconditionError):
    """Clifford product with n = 2m and m odd has S_n < 0."""


class ZeroCurvature(PreconditionError):
    pass


class StepTooLarge(PreconditionError):
    pass


class QuadratureFailure(NumericalError):
    pass


class FrameDrift(NumericalError):
    pass


class IntegrationDrift(NumericalError):
    """Conserved quantity drifted beyond tolerance during ODE integration."""
