class InvariantViolation(AssertionError):
    """Raised when a post-condition re-check fails. Always a bug."""

    pass


class NonDyadicError(ValueError):
    """Raised when a rational does not lie on any dyadic grid."""

    pass


__all__ = ["InvariantViolation", "NonDyadicError"]
