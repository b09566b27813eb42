from fractions import Fraction

import pytest

from . import exceptions, winding
from .winding import CertificateKind
from ..graph import Edge, MetricGraph, Point
from ..spectral import TrackPiece, UnitaryField


@pytest.fixture(scope="function")
def interval() -> MetricGraph:
    return MetricGraph.interval()


@pytest.fixture(scope="function")
def constant_w2(interval) -> UnitaryField:
    return UnitaryField.constant(interval, ["0", "1/4", "1/2", "3/4"])


@pytest.fixture(scope="function")
def moving_w2(interval) -> UnitaryField:
    # every eigenvalue of w_2 makes one full turn along [0, 1]
    angles = [Fraction(j, 4) for j in range(4)]
    return UnitaryField(
        interval, 4, {"0": angles, "1": angles}, [[[TrackPiece(0, 1, a, a + 1)] for a in angles]]
    )


def test_CertificateKind_from_str():
    assert CertificateKind.from_str("NonConstant") == CertificateKind.NONCONSTANT
    assert CertificateKind.from_str("off_lattice") == CertificateKind.OFF_LATTICE

    with pytest.raises(ValueError):
        CertificateKind.from_str("constant")


def test_dhs_identity(interval):
    base = winding.dhs(UnitaryField.constant(interval, [0, 0]))
    assert base.constant_value() == 0
    assert base.modulus == 2


def test_dhs_constant(constant_w2):
    base = winding.dhs(constant_w2)
    assert base.modulus == 4
    assert base.constant_value() == Fraction(3, 8)
    assert base.witnesses() is None


def test_dhs_moving(moving_w2, interval):
    base = winding.dhs(moving_w2)
    assert base.value_at(Point.at_vertex("0")) == Fraction(3, 8)
    assert base.value_at(Point.on_edge(interval, 0, "1/2")) == Fraction(7, 8)
    assert base.value_at(Point.at_vertex("1")) == Fraction(11, 8)
    assert base.constant_value() is None


def test_dhs_turns(constant_w2):
    base = winding.dhs(constant_w2, [[1, 0, 0, 0]])
    assert base.constant_value() == Fraction(5, 8)

    with pytest.raises(exceptions.MissingLiftError):
        winding.dhs(constant_w2, [[0, 0]])

    with pytest.raises(exceptions.MissingLiftError):
        winding.dhs(constant_w2, [])


def test_dhs_absorbs_whole_turn_jumps(interval):
    u = UnitaryField(
        interval,
        1,
        {"0": [0], "1": [0]},
        [[[TrackPiece(0, "1/2", 0, "1/2"), TrackPiece("1/2", 1, "-1/2", 0)]]],
    )
    base = winding.dhs(u)
    assert base.value_at(Point.on_edge(interval, 0, "3/4")) == Fraction(3, 4)
    assert base.value_at(Point.at_vertex("1")) == 1


def test_dhs_winding_loop():
    loop = MetricGraph.circle()
    u = UnitaryField(loop, 1, {"o": [0]}, [[[TrackPiece(0, 1, 0, 1)]]])
    with pytest.raises(exceptions.DiscontinuousLogError):
        winding.dhs(u)


def test_dhs_point():
    u = UnitaryField.constant(MetricGraph.point(), ["1/4", "1/2"])
    assert winding.dhs(u).constant_value() == Fraction(3, 8)


def test_dhs_direct_sum(constant_w2, moving_w2, interval):
    # splitting the tracks and recombining with trace weights reproduces the base
    whole = winding.dhs(constant_w2.direct_sum(moving_w2))
    first = winding.dhs(constant_w2)
    second = winding.dhs(moving_w2)
    for point in [
        Point.at_vertex("0"),
        Point.on_edge(interval, 0, "1/3"),
        Point.on_edge(interval, 0, "7/8"),
        Point.at_vertex("1"),
    ]:
        expected = (4 * first.value_at(point) + 4 * second.value_at(point)) / 8
        assert whole.value_at(point) == expected


def test_WindingClass_difference(constant_w2, moving_w2, interval):
    diff = winding.dhs(moving_w2).difference(winding.dhs(constant_w2))
    assert diff.value_at(Point.on_edge(interval, 0, "1/4")) == Fraction(1, 4)
    (p, a), (q, b) = diff.witnesses()
    assert (p, a) == (Point.at_vertex("0"), 0)
    assert (q, b) == (Point.on_edge(interval, 0, "1/2"), Fraction(1, 2))

    with pytest.raises(exceptions.GraphMismatchError):
        diff.difference(winding.dhs(UnitaryField.constant(interval, [0])))


def test_WindingClass_equal_modulo(constant_w2, interval):
    base = winding.dhs(constant_w2)
    turned = winding.dhs(constant_w2, [[1, 0, 0, 0]])
    assert base.equal_modulo_constants(turned)
    assert base.equal_modulo_lattice(turned)

    rotated = winding.dhs(UnitaryField.constant(interval, ["1/8", "3/8", "5/8", "7/8"]))
    assert base.equal_modulo_constants(rotated)
    assert not base.equal_modulo_lattice(rotated)


def test_WindingClass_component_values():
    pair = MetricGraph(["a", "b", "c", "d"], [Edge("a", "b", 1), Edge("c", "d", 1)])
    u = UnitaryField.constant(pair, ["1/4"])
    diff = winding.dhs(u, [[1], [0]]).difference(winding.dhs(u))
    assert diff.component_values() == (1, 0)
    assert diff.constant_value() is None
    assert winding.dhs(u, [[1], [0]]).equal_modulo_lattice(winding.dhs(u))
    assert not winding.dhs(u, [[1], [0]]).equal_modulo_constants(winding.dhs(u))


def test_aue_obstruction_nonconstant(constant_w2, moving_w2, interval):
    certificate = winding.aue_obstruction(constant_w2, moving_w2)
    assert certificate.kind == CertificateKind.NONCONSTANT
    assert certificate.modulus == 4
    assert certificate.witnesses == (
        Point.at_vertex("0"),
        Point.on_edge(interval, 0, "1/2"),
    )
    assert certificate.values == (0, Fraction(1, 2))

    reverse = winding.aue_obstruction(moving_w2, constant_w2)
    assert reverse.kind == CertificateKind.NONCONSTANT
    assert reverse.values == (0, Fraction(-1, 2))


def test_aue_obstruction_off_lattice(constant_w2, interval):
    rotated = UnitaryField.constant(interval, ["1/8", "3/8", "5/8", "7/8"])
    certificate = winding.aue_obstruction(constant_w2, rotated)
    assert certificate.kind == CertificateKind.OFF_LATTICE
    assert certificate.constant == Fraction(1, 8)
    assert winding.aue_obstruction(rotated, constant_w2).constant == Fraction(-1, 8)


def test_aue_obstruction_inconclusive(constant_w2, moving_w2, interval):
    assert winding.aue_obstruction(constant_w2, constant_w2) is None
    assert winding.aue_obstruction(moving_w2, moving_w2) is None
    permuted = UnitaryField.constant(interval, ["3/4", "1/2", "1/4", "0"])
    assert winding.aue_obstruction(constant_w2, permuted) is None
    assert winding.aue_obstruction(permuted, constant_w2) is None


def test_aue_obstruction_mismatch(constant_w2, interval):
    with pytest.raises(exceptions.GraphMismatchError):
        winding.aue_obstruction(constant_w2, UnitaryField.constant(interval, [0]))

    with pytest.raises(exceptions.GraphMismatchError):
        winding.aue_obstruction(
            constant_w2,
            UnitaryField.constant(MetricGraph.circle(), ["0", "1/4", "1/2", "3/4"]),
        )


def test_lattice_certificate():
    assert winding.lattice_certificate(Fraction(1, 2), 2) is None
    certificate = winding.lattice_certificate(Fraction(1, 2), 1)
    assert certificate.kind == CertificateKind.OFF_LATTICE
    assert certificate.witnesses == ()
