from fractions import Fraction
from typing import Any, FrozenSet, Optional, Sequence, Tuple

import attr
import networkx as nx

from ..rational import to_fraction
from .exceptions import GraphError


def _validate_length(instance, attribute: attr.Attribute, value: Fraction):
    if value <= 0:
        raise GraphError(f"edge length must be positive, got {value}")


@attr.s(frozen=True, slots=True)
class Edge:
    """An edge from vertex `a` to vertex `b` carrying the coordinate [0, length].

    Attributes:
        a (str): The vertex at coordinate 0.
        b (str): The vertex at coordinate `length`. May equal `a` (a loop).
        length (Fraction): The positive edge length.
    """

    a: str = attr.ib(converter=str)
    b: str = attr.ib(converter=str)
    length: Fraction = attr.ib(converter=to_fraction, validator=[_validate_length])


def _validate_vertices(instance, attribute: attr.Attribute, value: Tuple[str, ...]):
    if len(set(value)) != len(value):
        raise GraphError("vertex ids must be unique")


def _validate_edges(instance, attribute: attr.Attribute, value: Tuple[Edge, ...]):
    known = set(instance.vertices)
    for i, edge in enumerate(value):
        if not isinstance(edge, Edge):
            raise TypeError(f"edge {i} must be an Edge, got {type(edge).__name__}")
        for end in (edge.a, edge.b):
            if end not in known:
                raise GraphError(f"edge {i} references unknown vertex '{end}'")


@attr.s(frozen=True, slots=True, cache_hash=True)
class MetricGraph:
    """A compact metric graph: finitely many vertices and edges with rational lengths.

    Loops, parallel edges and isolated vertices are allowed. Edges are addressed by
    their position in `edges`.

    Attributes:
        vertices (Tuple[str, ...]): Vertex ids.
        edges (Tuple[Edge, ...]): The edges.
    """

    vertices: Tuple[str, ...] = attr.ib(
        converter=lambda vs: tuple(str(v) for v in vs), validator=[_validate_vertices]
    )
    edges: Tuple[Edge, ...] = attr.ib(converter=tuple, validator=[_validate_edges])

    @classmethod
    def point(cls) -> "MetricGraph":
        return cls(["p"], [])

    @classmethod
    def interval(cls, length: Any = 1) -> "MetricGraph":
        return cls(["0", "1"], [Edge("0", "1", length)])

    @classmethod
    def circle(cls, length: Any = 1) -> "MetricGraph":
        return cls(["o"], [Edge("o", "o", length)])

    @classmethod
    def theta(cls, lengths: Sequence[Any] = (1, 1, 1)) -> "MetricGraph":
        return cls(["s", "t"], [Edge("s", "t", length) for length in lengths])

    @property
    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges), Fraction(0))

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for i, e in enumerate(self.edges):
            g.add_edge(e.a, e.b, key=i, weight=e.length)
        return g

    def components(self) -> Tuple[FrozenSet[str], ...]:
        """Vertex sets of the connected components, in vertex order."""
        order = {v: i for i, v in enumerate(self.vertices)}
        parts = [frozenset(c) for c in nx.connected_components(self.to_networkx())]
        return tuple(sorted(parts, key=lambda c: min(order[v] for v in c)))


def _validate_point_edge(instance, attribute: attr.Attribute, value: Optional[int]):
    if value is None:
        return
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise GraphError(f"edge index must be a non-negative integer, got {value!r}")


def _validate_point_coord(instance, attribute: attr.Attribute, value: Optional[Fraction]):
    if (instance.vertex is None) == (instance.edge is None):
        raise GraphError("a point is either a vertex or a coordinate on an edge")
    if (instance.edge is None) != (value is None):
        raise GraphError("edge points need exactly an edge index and a coordinate")
    if value is not None and value <= 0:
        raise GraphError(f"interior coordinate must be positive, got {value}")


@attr.s(frozen=True, slots=True)
class Point:
    """A point of a metric graph: a vertex, or an interior coordinate of an edge.

    Build points with :meth:`at_vertex` or :meth:`on_edge`; the latter maps the edge
    ends to their vertices.

    Attributes:
        vertex (str, optional): The vertex id, for vertex points.
        edge (int, optional): The edge index, for interior points.
        coord (Fraction, optional): The coordinate in (0, length), for interior points.
    """

    vertex: Optional[str] = attr.ib(default=None)
    edge: Optional[int] = attr.ib(default=None, validator=[_validate_point_edge])
    coord: Optional[Fraction] = attr.ib(
        default=None,
        converter=attr.converters.optional(to_fraction),
        validator=[_validate_point_coord],
    )

    @classmethod
    def at_vertex(cls, vertex: str) -> "Point":
        return cls(vertex=str(vertex))

    @classmethod
    def on_edge(cls, graph: MetricGraph, edge: int, coord: Any) -> "Point":
        coord = to_fraction(coord)
        e = graph.edges[edge]
        if coord < 0 or coord > e.length:
            raise GraphError(f"coordinate {coord} outside edge {edge} of length {e.length}")
        if coord == 0:
            return cls.at_vertex(e.a)
        if coord == e.length:
            return cls.at_vertex(e.b)
        return cls(edge=edge, coord=coord)

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None


__all__ = ["Edge", "MetricGraph", "Point"]
