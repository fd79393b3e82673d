"""
Error types shared by every package of the toolkit.

Each error carries a stable ``code`` string so reports and the command-line
surface can name the failure without matching on messages.
"""


class NumericalRadiusError(Exception):
    """Base class for all toolkit errors."""

    code = "ERROR"


class MatrixParseError(NumericalRadiusError, ValueError):
    """Raised when a matrix document is malformed (non-square, non-finite, bad dims)."""

    code = "PARSE"


class DimensionMismatchError(NumericalRadiusError, ValueError):
    """Raised when operands of a binary operation have different dimensions."""

    code = "DIM_MISMATCH"


class SizeLimitError(NumericalRadiusError, ValueError):
    """Raised when a Kronecker product would exceed the configured dimension cap."""

    code = "SIZE"


class NotHermitianError(NumericalRadiusError, ValueError):
    code = "NOT_HERMITIAN"


class NotPSDError(NumericalRadiusError, ValueError):
    code = "NOT_PSD"


class NotUnitError(NumericalRadiusError, ValueError):
    code = "NOT_UNIT"


class InvalidToleranceError(NumericalRadiusError, ValueError):
    code = "INVALID_TOL"


class DimensionTooSmallError(NumericalRadiusError, ValueError):
    code = "DIM_TOO_SMALL"


class UnknownBoundError(NumericalRadiusError, ValueError):
    code = "UNKNOWN_BOUND"


class NoConvergenceError(NumericalRadiusError, RuntimeError):
    """Raised when an iterative solver hits its iteration cap."""

    code = "NO_CONVERGENCE"


class BudgetExceededError(NumericalRadiusError, RuntimeError):
    """Raised when a search exhausts its evaluation budget without converging."""

    code = "BUDGET_EXCEEDED"


def error_code(exc: BaseException) -> str:
    """Return the stable code for an exception, or its class name for foreign errors."""
    return getattr(exc, "code", type(exc).__name__)
