from typing import Tuple


class DimensionMismatchError(ValueError):
    """Raised when two unitaries or fields have different matrix sizes."""

    pass


class HallViolationError(ValueError):
    """Raised when no perfect matching exists within the requested distance."""

    def __init__(self, omega: Tuple[int, ...], neighborhood: Tuple[int, ...], message: str):
        super().__init__(message)
        self.omega = omega
        self.neighborhood = neighborhood


class FullSpectrumError(ValueError):
    """Raised when a unitary has an eigenvalue at the requested spectral gap."""

    pass


class FieldError(ValueError):
    """Raised when angle tracks do not form a continuous unitary field."""

    pass


__all__ = [
    "DimensionMismatchError",
    "FieldError",
    "FullSpectrumError",
    "HallViolationError",
]
