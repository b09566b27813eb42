import random

from fractions import Fraction

import pytest

from . import exceptions, transfer
from .matching import matching_distance
from .unitary import DiagonalUnitary
from ..circle import Angle
from ..exceptions import NonDyadicError


@pytest.mark.parametrize(
    "angles, gap, lifts",
    [
        (["1/4"], 0, ["1/4"]),
        (["3/4"], "1/2", ["3/4"]),
        (["1/4", "3/4"], "1/2", ["5/4", "3/4"]),
        (["1/8"], "-1/4", ["1/8"]),
    ],
)
def test_log_transfer(angles, gap, lifts):
    u = DiagonalUnitary.from_angles(angles)
    h = transfer.log_transfer(u, gap)
    assert h == tuple(Fraction(x) for x in lifts)
    assert tuple(Angle(x) for x in h) == u.angles


def test_log_transfer_full_spectrum():
    with pytest.raises(exceptions.FullSpectrumError):
        transfer.log_transfer(DiagonalUnitary.from_angles(["1/2", 0]), "3/2")


def test_self_adjoint_distance():
    assert transfer.self_adjoint_distance(["1/4", 1], ["5/4", "1/2"]) == Fraction(1, 4)
    assert transfer.self_adjoint_distance([], []) == 0

    with pytest.raises(exceptions.DimensionMismatchError):
        transfer.self_adjoint_distance([0], [])


def test_transfer_comparison_without_margin():
    u = DiagonalUnitary.from_angles(["7/16"])
    v = DiagonalUnitary.from_angles(["9/16"])
    narrow = transfer.transfer_comparison(u, v, "1/2")
    assert narrow.unitary == Fraction(1, 8)
    assert narrow.self_adjoint == Fraction(7, 8)
    assert narrow.free_arc == Fraction(1, 8)
    assert not narrow.margin_holds
    assert not narrow.equal

    wide = transfer.transfer_comparison(u, v, 0)
    assert wide.margin_holds
    assert wide.equal


def test_transfer_comparison_errors():
    u = DiagonalUnitary.from_angles(["9/20"])
    v = DiagonalUnitary.from_angles(["11/20"])
    with pytest.raises(NonDyadicError):
        transfer.transfer_comparison(u, v, 0)

    with pytest.raises(exceptions.DimensionMismatchError):
        transfer.transfer_comparison(u, DiagonalUnitary([["1/2"], ["1/4"]]), 0, 3)


@pytest.mark.parametrize("seed", range(100))
def test_transfer_comparison_properties(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 4)
    # angles on the odd sixteenths leave the gap 0 free
    u = DiagonalUnitary.from_angles(Fraction(2 * rng.randrange(8) + 1, 16) for _ in range(d))
    v = DiagonalUnitary.from_angles(Fraction(2 * rng.randrange(8) + 1, 16) for _ in range(d))
    result = transfer.transfer_comparison(u, v, 0)
    assert result.unitary == matching_distance(u, v)
    assert result.unitary <= result.self_adjoint
    if result.margin_holds:
        assert result.equal
