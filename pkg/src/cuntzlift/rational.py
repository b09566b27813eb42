"""Exact rational helpers shared by every subpackage.

Values of N u {inf} are stored as python ints, with `math.inf` standing for infinity.
Angles, lengths and distances are `fractions.Fraction`; floats are never accepted.
"""
import math

from fractions import Fraction
from typing import Any, Union

from .exceptions import NonDyadicError
from .types import INF, Extended, Rational


def to_fraction(value: Any) -> Fraction:
    """Convert an int, `Fraction` or "p/q" string to a `Fraction`.

    Args:
        value (Any): The value to convert.

    Returns:
        Fraction: The exact rational.

    Raises:
        TypeError: raised for floats, bools and other non-rational types.
        ValueError: raised for malformed strings.
    """
    if isinstance(value, bool):
        raise TypeError(f"expected a rational, got bool '{value}'")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"malformed rational '{value}'") from e
    raise TypeError(f"expected a rational, got {type(value).__name__} '{value}'")


def to_extended(value: Any) -> Extended:
    """Convert an int, `math.inf` or the string "inf" to a value of N u {inf}.

    Raises:
        TypeError: raised for non-integral input.
        ValueError: raised for negative input.
    """
    if isinstance(value, str):
        if value.strip().lower() == "inf":
            return INF
        try:
            value = int(value)
        except ValueError as e:
            raise ValueError(f"malformed extended natural '{value}'") from e
    if isinstance(value, bool):
        raise TypeError(f"expected an extended natural, got bool '{value}'")
    if isinstance(value, float):
        if value == math.inf:
            return INF
        raise TypeError(f"expected an extended natural, got float '{value}'")
    if not isinstance(value, int):
        raise TypeError(
            f"expected an extended natural, got {type(value).__name__} '{value}'"
        )
    if value < 0:
        raise ValueError(f"extended naturals are non-negative, got '{value}'")
    return value


def is_finite(value: Extended) -> bool:
    return value != INF


def format_rational(value: Union[Rational, float]) -> str:
    """Format a rational as "p/q" (or "p" for integers); infinity formats as "inf"."""
    if value == INF:
        return "inf"
    return str(Fraction(value))


def format_extended(value: Extended) -> Union[int, str]:
    """Format a value of N u {inf} for a JSON document."""
    if value == INF:
        return "inf"
    return int(value)


def dyadic_exponent(value: Rational) -> int:
    """Return the least p >= 0 such that `value` is a multiple of 1/2^p.

    Raises:
        NonDyadicError: raised when the reduced denominator is not a power of two.
    """
    q = Fraction(value).denominator
    if q & (q - 1):
        raise NonDyadicError(f"'{Fraction(value)}' is not a dyadic rational")
    return q.bit_length() - 1


__all__ = [
    "dyadic_exponent",
    "format_extended",
    "format_rational",
    "is_finite",
    "to_extended",
    "to_fraction",
]
