from enum import Enum
from fractions import Fraction
from typing import Any, Union

import attr

from ..rational import format_rational, to_fraction
from ..types import INF
from .exceptions import CodomainError


class CuZKind(Enum):
    """The two kinds of elements of Cu(Z) = N u (0, inf]."""

    COMPACT = "compact"  #: n in N, the class of a projection.
    SOFT = "soft"  #: x in (0, inf], a non-compact element.

    @classmethod
    def from_str(cls, name: str) -> "CuZKind":
        lower = name.lower()
        for kind in cls:
            if lower == kind.value:
                return kind
        raise ValueError(f"unknown cu(z) element kind '{name}'")


def _to_kind(value: Union[CuZKind, str]) -> CuZKind:
    if isinstance(value, str):
        return CuZKind.from_str(value)
    return value


def _to_value(value: Any) -> Union[Fraction, float]:
    if value == INF or value == "inf":
        return INF
    return to_fraction(value)


def _validate_value(instance, attribute: attr.Attribute, value: Union[Fraction, float]):
    if instance.kind == CuZKind.COMPACT:
        if value == INF or value.denominator != 1 or value < 0:
            raise CodomainError(f"compact elements are natural numbers, got {value}")
    elif not value > 0:
        raise CodomainError(f"soft elements are positive, got {value}")


@attr.s(frozen=True, slots=True, order=False)
class CuZElement:
    """An element of the Cuntz semigroup of the Jiang-Su algebra.

    Compact elements are the natural numbers; soft elements are the positive
    (extended) rationals. The order mixes both: a soft x is below a compact n iff
    x <= n, and a compact n is below a soft x iff n < x. Any sum involving a soft
    element is soft.

    Attributes:
        kind (CuZKind): Compact or soft.
        value (Union[Fraction, float]): The numerical value, `math.inf` allowed for
            soft elements only.
    """

    kind: CuZKind = attr.ib(converter=_to_kind)
    value: Union[Fraction, float] = attr.ib(converter=_to_value, validator=[_validate_value])

    @classmethod
    def compact(cls, n: Any) -> "CuZElement":
        return cls(CuZKind.COMPACT, n)

    @classmethod
    def soft(cls, x: Any) -> "CuZElement":
        return cls(CuZKind.SOFT, x)

    @classmethod
    def zero(cls) -> "CuZElement":
        return cls.compact(0)

    @property
    def is_compact(self) -> bool:
        return self.kind == CuZKind.COMPACT

    def __le__(self, other: "CuZElement") -> bool:
        if self.is_compact and not other.is_compact:
            return self.value < other.value
        return self.value <= other.value

    def __add__(self, other: "CuZElement") -> "CuZElement":
        total = self.value + other.value
        if self.is_compact and other.is_compact:
            return CuZElement.compact(total)
        return CuZElement.soft(total)

    def way_below(self, other: "CuZElement") -> bool:
        """Decide self << other: compact elements are way below what dominates them."""
        if self.is_compact:
            return self <= other
        if other.is_compact:
            return self.value <= other.value
        return self.value < other.value

    def __str__(self) -> str:
        return f"{self.kind.value}({format_rational(self.value)})"


__all__ = ["CuZElement", "CuZKind"]
