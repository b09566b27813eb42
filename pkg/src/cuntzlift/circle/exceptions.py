class ResolutionError(ValueError):
    """Raised when a radius or angle does not fit the dyadic grid in use."""

    pass


class UnboundedValueError(ValueError):
    """Raised when a step function attains infinity where a finite value is needed."""

    pass


class LscViolationError(ValueError):
    """Raised when breakpoint values exceed a neighboring arc value."""

    pass


__all__ = ["LscViolationError", "ResolutionError", "UnboundedValueError"]
