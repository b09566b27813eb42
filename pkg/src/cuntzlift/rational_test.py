from fractions import Fraction

import pytest

from . import exceptions, rational
from .types import INF


def test_to_fraction():
    assert rational.to_fraction("3/8") == Fraction(3, 8)
    assert rational.to_fraction(" 2 ") == Fraction(2)
    assert rational.to_fraction(5) == Fraction(5)

    with pytest.raises(TypeError):
        rational.to_fraction(0.5)

    with pytest.raises(TypeError):
        rational.to_fraction(True)

    with pytest.raises(ValueError):
        rational.to_fraction("1/0")

    with pytest.raises(ValueError):
        rational.to_fraction("half")


def test_to_extended():
    assert rational.to_extended("inf") == INF
    assert rational.to_extended(INF) == INF
    assert rational.to_extended(3) == 3
    assert rational.to_extended("4") == 4

    with pytest.raises(ValueError):
        rational.to_extended(-1)

    with pytest.raises(TypeError):
        rational.to_extended(1.5)


def test_format_rational():
    assert rational.format_rational(Fraction(6, 16)) == "3/8"
    assert rational.format_rational(Fraction(2)) == "2"
    assert rational.format_rational(INF) == "inf"
    assert rational.format_extended(INF) == "inf"
    assert rational.format_extended(7) == 7


def test_dyadic_exponent():
    assert rational.dyadic_exponent(0) == 0
    assert rational.dyadic_exponent(Fraction(3)) == 0
    assert rational.dyadic_exponent(Fraction(1, 2)) == 1
    assert rational.dyadic_exponent(Fraction(6, 16)) == 3

    with pytest.raises(exceptions.NonDyadicError):
        rational.dyadic_exponent(Fraction(1, 3))
