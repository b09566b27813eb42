"""De la Harpe-Skandalis determinants of diagonal unitary fields.

For u = e^{2 i pi h} with h diagonal, the determinant is the class of the normalized
trace (1/d) Tr(h), a piecewise-linear function on the graph. Two unitaries with
distinct classes modulo constants are not approximately unitarily equivalent.
"""
import logging

from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import attr

from ..graph import MetricGraph, Point
from ..spectral import TrackPiece, UnitaryField
from .exceptions import DiscontinuousLogError, GraphMismatchError, MissingLiftError

logger = logging.getLogger(__name__)

Knots = Tuple[Tuple[Fraction, Fraction], ...]


def _interpolate(knots: Knots, coord: Fraction) -> Fraction:
    for (t0, v0), (t1, v1) in zip(knots, knots[1:]):
        if t0 <= coord <= t1:
            return v0 + (v1 - v0) * (coord - t0) / (t1 - t0)
    raise ValueError(f"coordinate {coord} outside the knots")


def _continuous_knots(track: Sequence[TrackPiece], turns: int) -> Knots:
    # integer jumps between pieces are absorbed so the lift stays continuous
    offset = Fraction(turns)
    knots = [(track[0].start, track[0].start_angle + offset)]
    previous = track[0]
    for piece in track:
        if piece is not previous:
            offset += previous.end_angle - piece.start_angle
        knots.append((piece.stop, piece.end_angle + offset))
        previous = piece
    return tuple(knots)


def _merge(knot_lists: Sequence[Knots], combine) -> Knots:
    coords = sorted({t for knots in knot_lists for t, _ in knots})
    return tuple(
        (t, combine([_interpolate(knots, t) for knots in knot_lists])) for t in coords
    )


@attr.s(frozen=True, slots=True)
class WindingClass:
    """The normalized trace of a logarithm, as a piecewise-linear function on a graph.

    Attributes:
        graph (MetricGraph): The graph the function lives on.
        modulus (int): The matrix size d; projection traces lie in (1/d)Z.
        vertex_values (Dict[str, Fraction]): The value at every vertex.
        edge_knots (Tuple[Knots, ...]): Per edge, the (coordinate, value) knots of
            the linear interpolation, from 0 to the edge length.
    """

    graph: MetricGraph = attr.ib()
    modulus: int = attr.ib()
    vertex_values: Dict[str, Fraction] = attr.ib(converter=dict)
    edge_knots: Tuple[Knots, ...] = attr.ib(
        converter=lambda edges: tuple(tuple(knots) for knots in edges)
    )

    def value_at(self, point: Point) -> Fraction:
        if point.is_vertex:
            return self.vertex_values[point.vertex]
        return _interpolate(self.edge_knots[point.edge], point.coord)

    def samples(self) -> Iterator[Tuple[Point, Fraction]]:
        """Knots and knot-interval midpoints edge by edge, then isolated vertices.

        A piecewise-linear function is constant iff it agrees on all samples.
        """
        seen = set()
        for e, knots in enumerate(self.edge_knots):
            for i, (t, value) in enumerate(knots):
                if i > 0:
                    t0, v0 = knots[i - 1]
                    yield Point.on_edge(self.graph, e, (t0 + t) / 2), (v0 + value) / 2
                point = Point.on_edge(self.graph, e, t)
                if point.is_vertex:
                    if point.vertex in seen:
                        continue
                    seen.add(point.vertex)
                yield point, value
        for v in self.graph.vertices:
            if v not in seen:
                yield Point.at_vertex(v), self.vertex_values[v]

    def difference(self, other: "WindingClass") -> "WindingClass":
        """The class of self - other.

        Raises:
            GraphMismatchError: raised when the graphs or matrix sizes differ.
        """
        if other.graph != self.graph:
            raise GraphMismatchError("winding classes live on different graphs")
        if other.modulus != self.modulus:
            raise GraphMismatchError(
                f"cannot compare matrix sizes {self.modulus} and {other.modulus}"
            )
        return WindingClass(
            self.graph,
            self.modulus,
            {v: self.vertex_values[v] - other.vertex_values[v] for v in self.graph.vertices},
            [
                _merge([a, b], lambda values: values[0] - values[1])
                for a, b in zip(self.edge_knots, other.edge_knots)
            ],
        )

    def witnesses(self) -> Optional[Tuple[Tuple[Point, Fraction], Tuple[Point, Fraction]]]:
        """Two samples with different values, or `None` for a constant function."""
        samples = self.samples()
        first = next(samples, None)
        if first is None:
            return None
        for sample in samples:
            if sample[1] != first[1]:
                return first, sample
        return None

    def constant_value(self) -> Optional[Fraction]:
        if self.witnesses() is not None:
            return None
        first = next(self.samples(), None)
        return first[1] if first is not None else Fraction(0)

    def component_values(self) -> Optional[Tuple[Fraction, ...]]:
        """The value on every connected component, or `None` if not locally constant."""
        values = []
        for component in self.graph.components():
            found = {self.vertex_values[v] for v in component}
            for e, edge in enumerate(self.graph.edges):
                if edge.a in component:
                    found.update(value for _, value in self.edge_knots[e])
            if len(found) != 1:
                return None
            values.append(found.pop())
        return tuple(values)

    def equal_modulo_constants(self, other: "WindingClass") -> bool:
        """Equality in the non-stable quotient, where real constants vanish."""
        return self.difference(other).constant_value() is not None

    def equal_modulo_lattice(self, other: "WindingClass") -> bool:
        """Equality in the stable quotient at level d: locally constant (1/d)Z values."""
        values = self.difference(other).component_values()
        if values is None:
            return False
        return all((value * self.modulus).denominator == 1 for value in values)


def _validate_turns(u: UnitaryField, turns: Optional[Sequence[Sequence[int]]]):
    if turns is None:
        return [[0] * u.dimension for _ in u.graph.edges]
    if len(turns) != len(u.graph.edges):
        raise MissingLiftError(
            f"lifts given for {len(turns)} edges, the graph has {len(u.graph.edges)}"
        )
    for e, per_track in enumerate(turns):
        if len(per_track) != u.dimension:
            raise MissingLiftError(
                f"edge {e} has lifts for {len(per_track)} of {u.dimension} tracks"
            )
    return [list(per_track) for per_track in turns]


def dhs(u: UnitaryField, turns: Optional[Sequence[Sequence[int]]] = None) -> WindingClass:
    """The determinant of u as the normalized trace of a chosen logarithm.

    The logarithm of track j on edge e is the track's own real lift plus
    `turns[e][j]` whole turns. At every vertex the incident edge ends must agree.

    Args:
        u (UnitaryField): The field.
        turns (Sequence[Sequence[int]], optional): Whole turns added per edge and
            track. Defaults to none.

    Returns:
        WindingClass: base = (1/d) sum_j h_j with modulus d.

    Raises:
        MissingLiftError: raised when `turns` misses an edge or a track.
        DiscontinuousLogError: raised when the lifts disagree at a vertex.
    """
    turns = _validate_turns(u, turns)
    d = u.dimension
    edge_knots: List[Knots] = []
    for e, track_list in enumerate(u.edge_tracks):
        per_track = [
            _continuous_knots(track, turns[e][j]) for j, track in enumerate(track_list)
        ]
        edge_knots.append(_merge(per_track, lambda values: sum(values) / d))

    vertex_values: Dict[str, Fraction] = {}
    for e, edge in enumerate(u.graph.edges):
        knots = edge_knots[e]
        for vertex, value in ((edge.a, knots[0][1]), (edge.b, knots[-1][1])):
            known = vertex_values.setdefault(vertex, value)
            if known != value:
                raise DiscontinuousLogError(
                    f"logarithm traces {known} and {value} disagree at vertex {vertex}"
                )
    for v in u.graph.vertices:
        if v not in vertex_values:
            vertex_values[v] = sum((a.value for a in u.vertex_angles[v]), Fraction(0)) / d

    result = WindingClass(u.graph, d, vertex_values, edge_knots)
    logger.debug("determinant base over %d edges at size %d", len(edge_knots), d)
    return result


class CertificateKind(Enum):
    """Why two unitaries cannot be approximately unitarily equivalent."""

    NONCONSTANT = "nonconstant"  #: The determinant difference is not constant.
    OFF_LATTICE = "off_lattice"  #: The difference is a constant outside (1/d)Z.

    @classmethod
    def from_str(cls, name: str) -> "CertificateKind":
        lower = name.lower()
        for kind in cls:
            if lower == kind.value:
                return kind
        raise ValueError(f"unknown certificate kind '{name}'")


@attr.s(frozen=True, slots=True)
class Certificate:
    """Proof that two unitaries are not approximately unitarily equivalent.

    A nonconstant certificate holds in the inductive limit as well. An off-lattice
    certificate holds at the matrix level `modulus` only.

    Attributes:
        kind (CertificateKind): The obstruction.
        modulus (int): The matrix size the determinants were taken at.
        witnesses (Tuple[Point, ...]): Two points where the difference differs.
        values (Tuple[Fraction, ...]): The difference at the witnesses.
        constant (Fraction, optional): The constant difference, for off-lattice
            certificates.
    """

    kind: CertificateKind = attr.ib()
    modulus: int = attr.ib()
    witnesses: Tuple[Point, ...] = attr.ib(converter=tuple, default=())
    values: Tuple[Fraction, ...] = attr.ib(converter=tuple, default=())
    constant: Optional[Fraction] = attr.ib(default=None)


def lattice_certificate(constant: Fraction, modulus: int) -> Optional[Certificate]:
    """Certify a constant determinant difference outside (1/modulus)Z."""
    if (constant * modulus).denominator == 1:
        return None
    return Certificate(CertificateKind.OFF_LATTICE, modulus, constant=constant)


def aue_obstruction(
    u: UnitaryField,
    v: UnitaryField,
    u_turns: Optional[Sequence[Sequence[int]]] = None,
    v_turns: Optional[Sequence[Sequence[int]]] = None,
) -> Optional[Certificate]:
    """Look for a determinant obstruction to u ~aue v.

    Returns `None` when the determinants agree in the stable quotient; equal
    determinants never prove equivalence.

    Raises:
        GraphMismatchError: raised when the fields live on different graphs or have
            different sizes.
    """
    if u.graph != v.graph:
        raise GraphMismatchError("fields live on different graphs")
    if u.dimension != v.dimension:
        raise GraphMismatchError(f"cannot compare sizes {u.dimension} and {v.dimension}")
    diff = dhs(v, v_turns).difference(dhs(u, u_turns))
    found = diff.witnesses()
    if found is not None:
        (p, a), (q, b) = found
        certificate = Certificate(CertificateKind.NONCONSTANT, u.dimension, (p, q), (a, b))
    else:
        certificate = lattice_certificate(diff.constant_value(), u.dimension)
    logger.info(
        "determinant obstruction: %s",
        certificate.kind.value if certificate is not None else "inconclusive",
    )
    return certificate


__all__ = [
    "Certificate",
    "CertificateKind",
    "WindingClass",
    "aue_obstruction",
    "dhs",
    "lattice_certificate",
]
