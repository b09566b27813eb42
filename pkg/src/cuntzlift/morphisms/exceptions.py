from typing import Optional


class CodomainError(ValueError):
    """Raised when a value is not an element of the codomain in use."""

    pass


class IncomparableError(ValueError):
    """Raised when two valuations do not share a codomain."""

    pass


class InconsistentValuationError(ValueError):
    """Raised when arc data cannot be the restriction of a Cu-morphism."""

    def __init__(self, invariant: str, index: object, message: str):
        super().__init__(f"{invariant} violated at {index}: {message}")
        self.invariant = invariant
        self.index = index


class NotSettledError(RuntimeError):
    """Raised when the tail of a sequence does not settle at the requested resolution."""

    def __init__(self, resolution: Optional[int], message: str):
        super().__init__(message)
        self.resolution = resolution


__all__ = [
    "CodomainError",
    "IncomparableError",
    "InconsistentValuationError",
    "NotSettledError",
]
