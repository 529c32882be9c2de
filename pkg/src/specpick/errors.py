"""Exception types shared across the package."""


class SpecpickError(Exception):
    """Base class for all package-specific failures."""


class RootFindingError(SpecpickError):
    """Simultaneous iteration did not meet the residual acceptance.

    Carries the worst residual observed so callers can report it.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class IllConditionedError(SpecpickError):
    """A rank or linear-solve decision fell inside the ambiguity band."""


class AmbiguityError(SpecpickError):
    """Clustering or fiber grouping cannot be resolved at the tolerance."""


class OrderCapError(SpecpickError):
    """Order-of-vanishing search exceeded its cap (input may be zero)."""


class ConstraintError(SpecpickError):
    """Example-generator constraint violated; names the failing bullet."""

    def __init__(self, message, bullet=None):
        super().__init__(message)
        self.bullet = bullet


class PropernessError(SpecpickError):
    """A correspondence fiber left the target domain."""
