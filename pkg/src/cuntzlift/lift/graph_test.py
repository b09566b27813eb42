import random

from fractions import Fraction

import pytest

from . import graph
from .exceptions import LiftError
from ..circle import Angle
from ..graph import MetricGraph, Point
from ..morphisms import compare_on_lambda, valuation_arcs
from ..morphisms.exceptions import CodomainError
from ..sampling import random_field
from ..spectral import DiagonalUnitary, TrackPiece, UnitaryField, cu_of_unitary


@pytest.fixture(scope="function")
def interval() -> MetricGraph:
    return MetricGraph.interval()


@pytest.fixture(scope="function")
def crossing(interval) -> UnitaryField:
    # one eigenvalue turning from 1/8 to 3/8, through the breakpoint 1/4 at t = 1/2
    return UnitaryField(
        interval, 1, {"0": ["1/8"], "1": ["3/8"]}, [[[TrackPiece(0, 1, "1/8", "3/8")]]]
    )


@pytest.mark.parametrize(
    "a,b,expected",
    [
        ("0", "1/4", "1/4"),
        ("1/4", "0", "-1/4"),
        ("0", "1/2", "1/2"),
        ("7/8", "1/8", "1/4"),
        ("1/8", "7/8", "-1/4"),
        ("3/8", "3/8", "0"),
    ],
)
def test_signed_shift(a, b, expected):
    assert graph.signed_shift(Angle(a), Angle(b)) == Fraction(expected)


def test_pointwise_valuation():
    alpha = cu_of_unitary(DiagonalUnitary.from_angles(["3/16", "1/2", "5/8"]), 2)
    profile = [alpha.value(arc)[0] for arc in valuation_arcs(2)]
    assert graph.pointwise_valuation(2, 3, profile).same_as(alpha)


def test_lift_graph_point():
    point = MetricGraph.point()
    alpha = cu_of_unitary(UnitaryField.constant(point, ["3/16", "1/2"]), 2)
    lift = graph.lift_graph(alpha)
    assert lift.value_at(Point.at_vertex("p")) == (Angle("1/8"), Angle("1/2"))
    assert graph.verify_lift(alpha, lift).ok


def test_lift_graph_constant_circle():
    loop = MetricGraph.circle()
    alpha = cu_of_unitary(UnitaryField.constant(loop, ["1/8", "1/2"]), 2)
    lift = graph.lift_graph(alpha)
    assert lift.breakpoints(0) == ()
    assert lift.value_at(Point.on_edge(loop, 0, "1/3")) == (Angle("1/8"), Angle("1/2"))
    assert lift.value_at(Point.at_vertex("o")) == (Angle("1/8"), Angle("1/2"))
    assert graph.verify_lift(alpha, lift).ok


def test_lift_graph_two_pieces(crossing, interval):
    alpha = cu_of_unitary(crossing, 2)
    cover = graph.cut_valuation(alpha)
    assert len(cover.pieces) == 2
    assert len(cover.singular) == 1
    assert graph.connector_radius(cover) == Fraction(1, 32)

    lift = graph.lift_graph(alpha)
    assert lift.value_at(Point.at_vertex("0")) == (Angle("1/8"),)
    assert lift.value_at(Point.at_vertex("1")) == (Angle("3/8"),)
    assert lift.value_at(Point.on_edge(interval, 0, "15/32")) == (Angle("1/8"),)
    # the connector passes the hub center 1/4 at the cut
    assert lift.value_at(Point.on_edge(interval, 0, "31/64")) == (Angle("3/16"),)
    assert lift.value_at(Point.on_edge(interval, 0, "1/2")) == (Angle("1/4"),)
    assert lift.value_at(Point.on_edge(interval, 0, "17/32")) == (Angle("3/8"),)
    assert cu_of_unitary(lift, 2).same_as(alpha)

    report = graph.verify_lift(alpha, lift)
    assert report.boundary
    assert report.excursion == Fraction(1, 4)
    assert report.bottleneck == Fraction(1, 4)
    assert report.excursion_bound == Fraction(1, 2)
    assert report.coarse_resolution == 0
    assert report.ok


def test_verify_lift_tampered_connector(crossing, interval):
    alpha = cu_of_unitary(crossing, 2)
    # right on both shrunken pieces, but the connector swings out to 7/8
    tampered = UnitaryField(
        interval,
        1,
        {"0": ["1/8"], "1": ["3/8"]},
        [
            [
                [
                    TrackPiece(0, "15/32", "1/8", "1/8"),
                    TrackPiece("15/32", "1/2", "1/8", "7/8"),
                    TrackPiece("1/2", "17/32", "7/8", "3/8"),
                    TrackPiece("17/32", 1, "3/8", "3/8"),
                ]
            ]
        ],
    )
    report = graph.verify_lift(alpha, tampered)
    assert report.boundary
    assert report.bottleneck == Fraction(1, 4)
    assert report.excursion == Fraction(1, 2)
    assert not report.ok


def test_match_cover_hall_violation(crossing):
    alpha = cu_of_unitary(crossing, 2)
    cover = graph.cut_valuation(alpha)
    far = ["1/8", "5/8"]
    pieces = {
        piece.index: DiagonalUnitary.from_angles([far[i]])
        for i, piece in enumerate(cover.pieces)
    }
    with pytest.raises(LiftError) as e:
        graph.match_cover(cover, pieces, 2)
    assert e.value.step == 2


def test_lift_graph_rejects_fin_dim():
    alpha = cu_of_unitary(DiagonalUnitary.from_angles(["1/4"]), 1)
    with pytest.raises(CodomainError):
        graph.lift_graph(alpha)


GRAPHS = {
    "interval": MetricGraph.interval,
    "circle": MetricGraph.circle,
    "theta": lambda: MetricGraph.theta((1, 1, Fraction(1, 2))),
}


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("shape", sorted(GRAPHS))
def test_lift_graph_random(shape, n, seed):
    rng = random.Random(seed)
    field = random_field(rng, GRAPHS[shape](), rng.randint(1, 6), n)
    alpha = cu_of_unitary(field, n)

    cover = graph.cut_valuation(alpha)
    pieces = graph.lift_pieces(alpha, cover)
    bound = Fraction(2, 1 << n)
    for by_piece in graph.match_cover(cover, pieces, n).values():
        for matching in by_piece.values():
            assert matching.bottleneck < bound

    lift = graph.lift_graph(alpha)
    assert compare_on_lambda(cu_of_unitary(lift, n), alpha, n - 2)
    report = graph.verify_lift(alpha, lift)
    assert report.excursion < bound
    assert report.ok, report


def test_graph_lift_sequence(crossing):
    alpha = cu_of_unitary(crossing, 3)
    sequence = graph.graph_lift_sequence(alpha, 5)
    assert len(sequence) == 3
    for n, lift in enumerate(sequence, start=1):
        assert graph.verify_lift(alpha, lift, n).ok
    # at resolution 1 the whole track stays in the first open arc
    assert sequence[0].value_at(Point.at_vertex("1")) == (Angle("1/4"),)
