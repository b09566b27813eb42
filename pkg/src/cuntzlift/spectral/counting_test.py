import random

from fractions import Fraction

import pytest

from . import counting
from .field import TrackPiece, UnitaryField
from .unitary import DiagonalUnitary
from ..circle import Arc
from ..graph import GraphLsc, MetricGraph, Point
from ..morphisms import Graph, valuation


def random_unitary(rng: random.Random, dimensions, n: int) -> DiagonalUnitary:
    size = 1 << n
    return DiagonalUnitary(
        [[f"{rng.randrange(size)}/{size}" for _ in range(d)] for d in dimensions]
    )


def test_cu_of_unitary_two_eigenvalues():
    u = DiagonalUnitary.from_angles(["1/4", "3/4"])
    alpha = counting.cu_of_unitary(u, 1)
    assert alpha.values[Arc.U(1, 1)] == (1,)
    assert alpha.values[Arc.U(1, 2)] == (1,)
    assert alpha.values[Arc.V(1, 1)] == (2,)
    assert alpha.values[Arc.V(1, 2)] == (2,)
    assert alpha.values[Arc.full(1)] == (2,)
    valuation.validate(alpha)


def test_cu_of_unitary_roots_of_unity():
    # eigenvalues of w_2 sit on the breakpoints of the level-2 grid
    alpha = counting.cu_of_unitary(DiagonalUnitary.roots_of_unity(2), 2)
    for k in range(1, 5):
        assert alpha.values[Arc.U(2, k)] == (0,)
        assert alpha.values[Arc.V(2, k)] == (1,)
    coarse = counting.cu_of_unitary(DiagonalUnitary.roots_of_unity(2), 1)
    assert coarse.values[Arc.U(1, 1)] == (1,)
    assert coarse.values[Arc.U(1, 2)] == (1,)


@pytest.mark.parametrize("seed", range(5))
def test_cu_of_unitary_matches_eigenvalue_count(seed):
    rng = random.Random(seed)
    u = random_unitary(rng, (3, 2), 3)
    alpha = counting.cu_of_unitary(u, 2)
    for arc, value in alpha.items():
        assert value == counting.eigenvalue_count(u, arc.indicator())
    valuation.validate(alpha)


def test_cu_of_unitary_constant_field():
    interval = MetricGraph.interval()
    field = UnitaryField.constant(interval, ["1/4", "3/4"])
    alpha = counting.cu_of_unitary(field, 1)
    assert alpha.codomain == Graph(interval, 2)
    assert alpha.values[Arc.U(1, 1)].same_as(GraphLsc.constant(interval, 1))
    assert alpha.values[Arc.V(1, 1)].same_as(GraphLsc.constant(interval, 2))
    valuation.validate(alpha)


def test_cu_of_unitary_rotating_field():
    interval = MetricGraph.interval()
    field = UnitaryField(
        interval, 1, {"0": [0], "1": ["1/2"]}, [[[TrackPiece(0, 1, 0, "1/2")]]]
    )
    alpha = counting.cu_of_unitary(field, 1)
    inside = alpha.values[Arc.U(1, 1)]
    assert inside.value_at(Point.on_edge(interval, 0, "1/3")) == 1
    assert inside.value_at(Point.at_vertex("0")) == 0
    assert inside.value_at(Point.at_vertex("1")) == 0
    assert alpha.values[Arc.U(1, 2)].same_as(GraphLsc.constant(interval, 0))
    valuation.validate(alpha)


def test_event_mesh_cuts_at_grid_crossings():
    interval = MetricGraph.interval()
    field = UnitaryField(
        interval, 1, {"0": [0], "1": ["1/2"]}, [[[TrackPiece(0, 1, 0, "1/2")]]]
    )
    mesh = counting.event_mesh(field, 2)
    # the track crosses 1/4 half way along the edge
    assert mesh.cuts == ((Fraction(1, 2),),)
    alpha = counting.cu_of_unitary(field, 2)
    first = alpha.values[Arc.U(2, 1)]
    assert first.value_at(Point.on_edge(interval, 0, "1/4")) == 1
    assert first.value_at(Point.on_edge(interval, 0, "1/2")) == 0
    assert first.value_at(Point.on_edge(interval, 0, "3/4")) == 0
    second = alpha.values[Arc.U(2, 2)]
    assert second.value_at(Point.on_edge(interval, 0, "3/4")) == 1
    assert alpha.values[Arc.V(2, 1)].value_at(Point.on_edge(interval, 0, "1/2")) == 1
