"""Exception hierarchy shared by every LieForge module."""


class LieForgeError(Exception):
    """Base class for all errors raised by the engine."""


class InvalidInputError(LieForgeError, ValueError):
    """Malformed, non-finite or otherwise unusable input."""


class InvalidSubalgebraError(InvalidInputError):
    """The supplied span is not closed under the bracket or is degenerate."""


class AlgebraValidationError(LieForgeError):
    """Structure constants violate antisymmetry or the Jacobi identity."""

    def __init__(self, report):
        self.report = report
        super().__init__(report.summary())


class ChartExitError(LieForgeError):
    """The requested point left the domain of the coordinate chart."""


class DecompositionError(ChartExitError):
    """A matrix could not be written as an ordered product of exponentials."""


class CompositionUndefinedError(ChartExitError):
    """The product of two group points is outside the chart."""


class AmbiguityError(LieForgeError):
    """A solution was found but the decomposition Jacobian is rank deficient there."""
