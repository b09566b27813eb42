from fractions import Fraction
from typing import Any, Union

import attr

from ..rational import dyadic_exponent, to_fraction
from ..exceptions import NonDyadicError
from .exceptions import ResolutionError


def _normalize(value: Any) -> Fraction:
    if isinstance(value, Angle):
        return value.value
    return to_fraction(value) % 1


@attr.s(frozen=True, slots=True)
class Angle:
    """A point e^{2 i pi value} of the circle T, stored as an exact rational in [0, 1).

    Any rational is accepted and reduced modulo 1.

    Attributes:
        value (Fraction): The normalized angle.
    """

    value: Fraction = attr.ib(converter=_normalize)

    def dist(self, other: Union["Angle", Fraction, int, str]) -> Fraction:
        """Arc-length distance to another angle on the unit-circumference circle."""
        return arc_distance(self.value, _normalize(other))

    def shift(self, delta: Any) -> "Angle":
        return Angle(self.value + to_fraction(delta))

    def __str__(self) -> str:
        return str(self.value)


def arc_distance(a: Any, b: Any) -> Fraction:
    """Return min(|a - b|, 1 - |a - b|) after reducing both angles modulo 1."""
    diff = abs(_normalize(a) - _normalize(b))
    return min(diff, 1 - diff)


@attr.s(frozen=True, slots=True)
class DyadicPartition:
    """The equidistant partition of T into 2^n open arcs and 2^n breakpoints.

    Cells are indexed cyclically from 0 to 2 * 2^n - 1: the even cell 2i is the open arc
    U_{i+1} = (i/2^n, (i+1)/2^n) and the odd cell 2i+1 is the breakpoint
    x_{i+1} = (i+1)/2^n. The breakpoint x_0 = x_{2^n} is therefore the last cell.

    Attributes:
        resolution (int): The exponent n.
    """

    resolution: int = attr.ib(validator=[attr.validators.instance_of(int)])

    @resolution.validator
    def _validate_resolution(self, attribute: attr.Attribute, value: int):
        if value < 0:
            raise ValueError(f"'{attribute.name}' must be non-negative, got {value}")

    @property
    def size(self) -> int:
        return 1 << self.resolution

    @property
    def width(self) -> Fraction:
        return Fraction(1, self.size)

    def breakpoint(self, k: int) -> Angle:
        """The breakpoint x_k = k/2^n; x_0 and x_{2^n} are the same angle."""
        return Angle(Fraction(k, self.size))

    def center(self, k: int) -> Angle:
        """The center c_k = (k - 1/2)/2^n of the arc U_k, for k in 1..2^n."""
        if not 1 <= k <= self.size:
            raise IndexError(f"arc index {k} outside 1..{self.size}")
        return Angle(Fraction(2 * k - 1, 2 * self.size))

    def locate(self, angle: Any) -> int:
        """Return the index of the cell containing the given angle."""
        scaled = _normalize(angle) * self.size
        if scaled.denominator == 1:
            return 2 * ((int(scaled) - 1) % self.size) + 1
        return 2 * (scaled.numerator // scaled.denominator)

    def grid_steps(self, r: Any) -> int:
        """Express a radius as a whole number of grid steps 1/2^n.

        Raises:
            ResolutionError: raised when the radius is not a multiple of 1/2^n.
        """
        r = to_fraction(r)
        try:
            p = dyadic_exponent(r)
        except NonDyadicError as e:
            raise ResolutionError(f"radius '{r}' is not dyadic") from e
        if p > self.resolution:
            raise ResolutionError(
                f"radius '{r}' is finer than the resolution {self.resolution} grid"
            )
        return int(r * self.size)


__all__ = ["Angle", "DyadicPartition", "arc_distance"]
