from fractions import Fraction
from typing import Any, Dict, Iterable, Sequence, Tuple

import attr

from ..circle import Angle
from ..graph import MetricGraph, Point
from ..rational import to_fraction
from .exceptions import DimensionMismatchError, FieldError
from .unitary import DiagonalUnitary


def _validate_stop(instance, attribute: attr.Attribute, value: Fraction):
    if value <= instance.start:
        raise FieldError(f"track piece [{instance.start}, {value}] is empty")


@attr.s(frozen=True, slots=True)
class TrackPiece:
    """A linear stretch of one angle track over [start, stop] on an edge.

    Angles are real lifts: the eigenvalue at coordinate t is e^{2 i pi theta(t)} with
    theta interpolating linearly from `start_angle` to `end_angle`.

    Attributes:
        start (Fraction): The first edge coordinate.
        stop (Fraction): The last edge coordinate.
        start_angle (Fraction): The lift at `start`.
        end_angle (Fraction): The lift at `stop`.
    """

    start: Fraction = attr.ib(converter=to_fraction)
    stop: Fraction = attr.ib(converter=to_fraction, validator=[_validate_stop])
    start_angle: Fraction = attr.ib(converter=to_fraction)
    end_angle: Fraction = attr.ib(converter=to_fraction)

    @property
    def slope(self) -> Fraction:
        return (self.end_angle - self.start_angle) / (self.stop - self.start)

    def lift_at(self, coord: Fraction) -> Fraction:
        return self.start_angle + self.slope * (coord - self.start)

    def shifted(self, turns: int) -> "TrackPiece":
        return attr.evolve(
            self, start_angle=self.start_angle + turns, end_angle=self.end_angle + turns
        )


def _to_tracks(edges: Iterable[Iterable[Iterable[TrackPiece]]]):
    return tuple(tuple(tuple(track) for track in edge) for edge in edges)


def _to_vertex_angles(value: Dict[str, Iterable[Any]]) -> Dict[str, Tuple[Angle, ...]]:
    return {str(v): tuple(sorted(Angle(a) for a in angles)) for v, angles in value.items()}


def _end_multiset(track_list, at_stop: bool) -> Tuple[Angle, ...]:
    if at_stop:
        return tuple(sorted(Angle(track[-1].end_angle) for track in track_list))
    return tuple(sorted(Angle(track[0].start_angle) for track in track_list))


def _validate_field(instance, attribute: attr.Attribute, value):
    graph = instance.graph
    d = instance.dimension
    vertex_angles = instance.vertex_angles
    for v in graph.vertices:
        if len(vertex_angles.get(v, ())) != d:
            raise FieldError(f"vertex {v} needs {d} angles")
    if len(value) != len(graph.edges):
        raise FieldError(f"expected tracks for {len(graph.edges)} edges, got {len(value)}")
    for e, (edge, track_list) in enumerate(zip(graph.edges, value)):
        if len(track_list) != d:
            raise FieldError(f"edge {e} carries {len(track_list)} tracks instead of {d}")
        for j, track in enumerate(track_list):
            if not track or track[0].start != 0 or track[-1].stop != edge.length:
                raise FieldError(f"track {j} does not cover edge {e}")
            for left, right in zip(track, track[1:]):
                if left.stop != right.start:
                    raise FieldError(f"track {j} has a gap on edge {e} at {left.stop}")
                if (left.end_angle - right.start_angle).denominator != 1:
                    raise FieldError(f"track {j} jumps on edge {e} at {left.stop}")
        if _end_multiset(track_list, False) != vertex_angles[edge.a]:
            raise FieldError(f"edge {e} does not start at the angles of vertex {edge.a}")
        if _end_multiset(track_list, True) != vertex_angles[edge.b]:
            raise FieldError(f"edge {e} does not end at the angles of vertex {edge.b}")


def _validate_dimension(instance, attribute: attr.Attribute, value: int):
    if not isinstance(value, int) or value < 1:
        raise FieldError(f"'{attribute.name}' must be a positive int, got {value}")


@attr.s(frozen=True, slots=True)
class UnitaryField:
    """A diagonal unitary of M_d(C(X)) for a metric graph X, as d angle tracks.

    On each edge the tracks are continuous and piecewise linear. At a vertex the
    angle multisets of all incident edge ends agree with the vertex multiset, so the
    eigenvalue function is continuous up to a constant relabeling of the tracks.

    Attributes:
        graph (MetricGraph): The spectrum X.
        dimension (int): The matrix size d.
        vertex_angles (Dict[str, Tuple[Angle, ...]]): The eigenvalues at each vertex.
        edge_tracks (Tuple): `edge_tracks[e][j]` is the piece list of track j on edge e.
    """

    graph: MetricGraph = attr.ib()
    dimension: int = attr.ib(validator=[_validate_dimension])
    vertex_angles: Dict[str, Tuple[Angle, ...]] = attr.ib(converter=_to_vertex_angles)
    edge_tracks: Tuple[Tuple[Tuple[TrackPiece, ...], ...], ...] = attr.ib(
        converter=_to_tracks, validator=[_validate_field]
    )

    @classmethod
    def constant(cls, graph: MetricGraph, angles: Sequence[Any]) -> "UnitaryField":
        """The field equal to diag(angles) at every point."""
        lifts = [to_fraction(a) for a in angles]
        return cls(
            graph,
            len(lifts),
            {v: lifts for v in graph.vertices},
            [
                [[TrackPiece(0, edge.length, a, a)] for a in lifts]
                for edge in graph.edges
            ],
        )

    @classmethod
    def from_unitary(cls, graph: MetricGraph, u: DiagonalUnitary) -> "UnitaryField":
        return cls.constant(graph, [a.value for a in u.angles])

    def lift_at(self, edge: int, track: int, coord: Any) -> Fraction:
        """The lift of track `track` of edge `edge` at coordinate `coord`."""
        coord = to_fraction(coord)
        for piece in self.edge_tracks[edge][track]:
            if piece.start <= coord <= piece.stop:
                return piece.lift_at(coord)
        raise FieldError(f"coordinate {coord} outside edge {edge}")

    def value_at(self, point: Point) -> Tuple[Angle, ...]:
        """The sorted eigenvalue angles at a point."""
        if point.is_vertex:
            return self.vertex_angles[point.vertex]
        return tuple(
            sorted(
                Angle(self.lift_at(point.edge, j, point.coord))
                for j in range(self.dimension)
            )
        )

    def unitary_at(self, point: Point) -> DiagonalUnitary:
        return DiagonalUnitary.from_angles(self.value_at(point))

    def breakpoints(self, edge: int) -> Tuple[Fraction, ...]:
        """Interior coordinates where some track changes slope or lift."""
        coords = {
            piece.stop
            for track in self.edge_tracks[edge]
            for piece in track[:-1]
        }
        return tuple(sorted(coords))

    def direct_sum(self, other: "UnitaryField") -> "UnitaryField":
        """The field diag(self, other) of size d + d'."""
        if other.graph != self.graph:
            raise DimensionMismatchError("fields live on different graphs")
        return UnitaryField(
            self.graph,
            self.dimension + other.dimension,
            {
                v: self.vertex_angles[v] + other.vertex_angles[v]
                for v in self.graph.vertices
            },
            [a + b for a, b in zip(self.edge_tracks, other.edge_tracks)],
        )


__all__ = ["TrackPiece", "UnitaryField"]
