import bisect
import functools

from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Tuple

import attr
import networkx as nx

from ..rational import to_fraction
from .exceptions import MeshError
from .metric import MetricGraph, Point


class CellKind(Enum):
    """Kinds of mesh cells."""

    VERTEX = "vertex"  #: A graph vertex.
    CUT = "cut"  #: An interior cut point of an edge.
    SEGMENT = "segment"  #: An open segment between consecutive nodes of an edge.


@attr.s(frozen=True, slots=True)
class Cell:
    """One cell of a mesh: a vertex, an interior cut point, or an open segment.

    Attributes:
        kind (CellKind): The cell kind.
        edge (int, optional): The edge index; `None` for vertices.
        index (int): Position of the cut or segment along its edge, or of the vertex.
        vertex (str, optional): The vertex id, for vertex cells.
        start (Fraction, optional): Segment start, or the cut coordinate.
        stop (Fraction, optional): Segment stop, or the cut coordinate.
    """

    kind: CellKind = attr.ib()
    edge: Optional[int] = attr.ib()
    index: int = attr.ib()
    vertex: Optional[str] = attr.ib(default=None)
    start: Optional[Fraction] = attr.ib(default=None)
    stop: Optional[Fraction] = attr.ib(default=None)

    @property
    def is_node(self) -> bool:
        return self.kind != CellKind.SEGMENT

    @property
    def length(self) -> Fraction:
        return self.stop - self.start


def _normalize_cuts(cuts: Iterable[Iterable[Any]]) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(sorted({to_fraction(t) for t in edge_cuts})) for edge_cuts in cuts)


def _validate_cuts(instance, attribute: attr.Attribute, value):
    edges = instance.graph.edges
    if len(value) != len(edges):
        raise MeshError(f"expected cut lists for {len(edges)} edges, got {len(value)}")
    for i, (edge, edge_cuts) in enumerate(zip(edges, value)):
        for t in edge_cuts:
            if not 0 < t < edge.length:
                raise MeshError(f"cut {t} outside the interior of edge {i}")


@attr.s(frozen=True, slots=True, cache_hash=True)
class Mesh:
    """A subdivision of every edge of a metric graph by finitely many cut points.

    Cells are numbered: vertices first, in graph order, then for every edge its
    segments and cuts interleaved (segment 0, cut 0, segment 1, ..., segment k).

    Attributes:
        graph (MetricGraph): The underlying graph.
        cuts (Tuple): Per edge, the increasing interior cut coordinates.
    """

    graph: MetricGraph = attr.ib()
    cuts: Tuple[Tuple[Fraction, ...], ...] = attr.ib(
        converter=_normalize_cuts, validator=[_validate_cuts]
    )

    @classmethod
    def coarse(cls, graph: MetricGraph) -> "Mesh":
        return cls(graph, [()] * len(graph.edges))

    @classmethod
    def build(cls, graph: MetricGraph, cuts: Mapping[int, Iterable[Any]]) -> "Mesh":
        return cls(graph, [cuts.get(i, ()) for i in range(len(graph.edges))])

    @property
    def cells(self) -> Tuple[Cell, ...]:
        return _layout(self).cells

    def node_cells(self) -> Tuple[int, ...]:
        return _layout(self).nodes

    def segment_cells(self) -> Tuple[int, ...]:
        return _layout(self).segments

    def vertex_cell(self, vertex: str) -> int:
        return self.graph.vertices.index(vertex)

    def endpoints(self, segment: int) -> Tuple[int, int]:
        """The node cells at the start and the stop of a segment."""
        return _layout(self).endpoints[segment]

    def germs(self, node: int) -> Tuple[Tuple[int, int], ...]:
        """The segment ends at a node as (segment, side); side 0 is the segment start."""
        return _layout(self).germs.get(node, ())

    def coordinates(self, edge: int) -> Tuple[Fraction, ...]:
        return (Fraction(0),) + self.cuts[edge] + (self.graph.edges[edge].length,)

    def locate(self, edge: int, coord: Any) -> int:
        coord = to_fraction(coord)
        e = self.graph.edges[edge]
        if coord < 0 or coord > e.length:
            raise MeshError(f"coordinate {coord} outside edge {edge}")
        if coord == 0:
            return self.vertex_cell(e.a)
        if coord == e.length:
            return self.vertex_cell(e.b)
        edge_cuts = self.cuts[edge]
        j = bisect.bisect_left(edge_cuts, coord)
        base = _layout(self).edge_base[edge]
        if j < len(edge_cuts) and edge_cuts[j] == coord:
            return base + 2 * j + 1
        return base + 2 * j

    def locate_point(self, point: Point) -> int:
        if point.is_vertex:
            return self.vertex_cell(point.vertex)
        return self.locate(point.edge, point.coord)

    def merge(self, *others: "Mesh") -> "Mesh":
        """The coarsest mesh refining this one and all `others`."""
        for other in others:
            if other.graph != self.graph:
                raise MeshError("cannot merge meshes of different graphs")
        if all(other == self for other in others):
            return self
        cuts = [set(c) for c in self.cuts]
        for other in others:
            for i, edge_cuts in enumerate(other.cuts):
                cuts[i].update(edge_cuts)
        return Mesh(self.graph, cuts)

    def with_cuts(self, extra: Mapping[int, Iterable[Any]]) -> "Mesh":
        if not any(extra.values()):
            return self
        return self.merge(Mesh.build(self.graph, extra))

    def refines(self, other: "Mesh") -> bool:
        return self.graph == other.graph and all(
            set(coarse) <= set(fine) for coarse, fine in zip(other.cuts, self.cuts)
        )

    def project(self, fine: "Mesh") -> Tuple[int, ...]:
        """Map every cell of a refining mesh to the cell of this mesh containing it."""
        return _projection(self, fine)

    def node_graph(self) -> nx.MultiGraph:
        """Node cells joined by one weighted edge per segment, keyed by segment cell."""
        return _node_graph(self)

    def shortest_segment(self) -> Optional[Fraction]:
        cells = self.cells
        lengths = [cells[s].length for s in self.segment_cells()]
        return min(lengths) if lengths else None


@attr.s(frozen=True, slots=True)
class _Layout:
    cells: Tuple[Cell, ...] = attr.ib()
    nodes: Tuple[int, ...] = attr.ib()
    segments: Tuple[int, ...] = attr.ib()
    edge_base: Tuple[int, ...] = attr.ib()
    endpoints: Dict[int, Tuple[int, int]] = attr.ib()
    germs: Dict[int, Tuple[Tuple[int, int], ...]] = attr.ib()


@functools.lru_cache(maxsize=512)
def _layout(mesh: Mesh) -> _Layout:
    graph = mesh.graph
    cells = [
        Cell(CellKind.VERTEX, None, i, vertex=v) for i, v in enumerate(graph.vertices)
    ]
    edge_base = []
    endpoints = {}
    germs: Dict[int, list] = {}
    for e, edge in enumerate(graph.edges):
        base = len(cells)
        edge_base.append(base)
        coords = mesh.coordinates(e)
        k = len(mesh.cuts[e])
        for j in range(k + 1):
            cells.append(Cell(CellKind.SEGMENT, e, j, start=coords[j], stop=coords[j + 1]))
            if j < k:
                cells.append(Cell(CellKind.CUT, e, j, start=coords[j + 1], stop=coords[j + 1]))
        for j in range(k + 1):
            segment = base + 2 * j
            left = graph.vertices.index(edge.a) if j == 0 else segment - 1
            right = graph.vertices.index(edge.b) if j == k else segment + 1
            endpoints[segment] = (left, right)
            germs.setdefault(left, []).append((segment, 0))
            germs.setdefault(right, []).append((segment, 1))
    return _Layout(
        cells=tuple(cells),
        nodes=tuple(i for i, c in enumerate(cells) if c.is_node),
        segments=tuple(i for i, c in enumerate(cells) if not c.is_node),
        edge_base=tuple(edge_base),
        endpoints=endpoints,
        germs={node: tuple(sorted(g)) for node, g in germs.items()},
    )


@functools.lru_cache(maxsize=512)
def _projection(coarse: Mesh, fine: Mesh) -> Tuple[int, ...]:
    if not fine.refines(coarse):
        raise MeshError("target mesh does not refine the source mesh")
    out = []
    for cell in fine.cells:
        if cell.kind == CellKind.VERTEX:
            out.append(coarse.vertex_cell(cell.vertex))
        elif cell.kind == CellKind.CUT:
            out.append(coarse.locate(cell.edge, cell.start))
        else:
            out.append(coarse.locate(cell.edge, (cell.start + cell.stop) / 2))
    return tuple(out)


@functools.lru_cache(maxsize=512)
def _node_graph(mesh: Mesh) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(mesh.node_cells())
    cells = mesh.cells
    for s in mesh.segment_cells():
        left, right = mesh.endpoints(s)
        g.add_edge(left, right, key=s, weight=cells[s].length)
    return g


def common_mesh(meshes: Sequence[Mesh]) -> Mesh:
    if not meshes:
        raise MeshError("no meshes to merge")
    return meshes[0].merge(*meshes[1:])


__all__ = ["Cell", "CellKind", "Mesh", "common_mesh"]
