import logging

from typing import FrozenSet, Sequence, Set, Tuple

import attr
import networkx as nx

from .exceptions import UnboundedValueError
from .lsc import GraphLsc, on_common_mesh
from .mesh import Mesh
from .metric import MetricGraph

logger = logging.getLogger(__name__)


@attr.s(frozen=True, slots=True)
class Piece:
    """An open piece T_l of a closed cover: a maximal connected constant region.

    Attributes:
        index (int): Position of the piece in its cover.
        cells (FrozenSet[int]): Mesh cells making up the open piece.
        profile (Tuple[int, ...]): The value of every tracked function on the piece.
    """

    index: int = attr.ib()
    cells: FrozenSet[int] = attr.ib(converter=frozenset)
    profile: Tuple[int, ...] = attr.ib(converter=tuple)


def _owners(cover: "ClosedCover") -> Tuple[int, ...]:
    owner = [-1] * len(cover.mesh.cells)
    for piece in cover.pieces:
        for cell in piece.cells:
            owner[cell] = piece.index
    return tuple(owner)


@attr.s(frozen=True, slots=True)
class ClosedCover:
    """The maximal finite closed cover on which a family of functions is constant.

    The closures of the pieces cover the graph, and their interiors are disjoint.
    Singular nodes are the node cells lying in no open piece. Every singular node is
    in the closure of each piece owning one of its germs.

    Attributes:
        mesh (Mesh): The common mesh of the tracked functions.
        pieces (Tuple[Piece, ...]): The open pieces, ordered by their first cell.
        singular (Tuple[int, ...]): The singular node cells.
        owner (Tuple[int, ...]): Piece index per mesh cell, -1 on singular nodes.
    """

    mesh: Mesh = attr.ib()
    pieces: Tuple[Piece, ...] = attr.ib(converter=tuple)
    singular: Tuple[int, ...] = attr.ib(converter=tuple)
    owner: Tuple[int, ...] = attr.ib(
        default=attr.Factory(_owners, takes_self=True), converter=tuple
    )

    @property
    def graph(self) -> MetricGraph:
        return self.mesh.graph

    def piece_of(self, cell: int) -> int:
        """The index of the piece containing a cell.

        Raises:
            KeyError: raised for singular nodes.
        """
        if self.owner[cell] >= 0:
            return self.owner[cell]
        raise KeyError(f"cell {cell} is a singular node")

    def germs_at(self, node: int) -> Tuple[Tuple[int, int, int], ...]:
        """Germs at a node as (segment, side, piece index), in segment order."""
        return tuple(
            (segment, side, self.piece_of(segment))
            for segment, side in self.mesh.germs(node)
        )

    def pieces_at(self, node: int) -> Tuple[int, ...]:
        """Distinct pieces meeting at a singular node, in order of first germ."""
        seen = []
        for _, _, piece in self.germs_at(node):
            if piece not in seen:
                seen.append(piece)
        return tuple(seen)

    def adjacency(self) -> FrozenSet[FrozenSet[int]]:
        """Unordered pairs of distinct pieces whose closures share a singular node."""
        pairs: Set[FrozenSet[int]] = set()
        for node in self.singular:
            present = self.pieces_at(node)
            for i, a in enumerate(present):
                for b in present[i + 1 :]:
                    pairs.add(frozenset((a, b)))
        return frozenset(pairs)

    @property
    def profile_count(self) -> int:
        return len({piece.profile for piece in self.pieces})


def cut(graph: MetricGraph, fs: Sequence[GraphLsc]) -> ClosedCover:
    """Cut a graph into the maximal closed cover on which every `fs[i]` is constant.

    The open pieces are the connected components of the interiors of the common
    value-profile regions. A node joins a piece when every germ at it, and the node
    itself, carry the piece's profile. Isolated vertices are pieces of their own.

    Args:
        graph (MetricGraph): The graph.
        fs (Sequence[GraphLsc]): Finite-valued functions on `graph`.

    Returns:
        ClosedCover: The cover with the value profile of every piece.

    Raises:
        UnboundedValueError: raised when some function attains infinity.
    """
    for i, f in enumerate(fs):
        if not f.is_finite():
            raise UnboundedValueError(f"function {i} attains infinity")
    if fs:
        fs = on_common_mesh(*fs)
        mesh = fs[0].mesh
        if mesh.graph != graph:
            raise ValueError("functions live on a different graph")
    else:
        mesh = Mesh.coarse(graph)
    cells = mesh.cells
    profiles = [tuple(f.values[c] for f in fs) for c in range(len(cells))]

    joined = nx.Graph()
    joined.add_nodes_from(mesh.segment_cells())
    for node in mesh.node_cells():
        germs = mesh.germs(node)
        if not germs:
            joined.add_node(node)
        elif all(profiles[s] == profiles[node] for s, _ in germs):
            joined.add_node(node)
            joined.add_edges_from((node, s) for s, _ in germs)

    components = sorted(nx.connected_components(joined), key=min)
    pieces = tuple(
        Piece(i, component, profiles[min(component)])
        for i, component in enumerate(components)
    )
    singular = tuple(node for node in mesh.node_cells() if node not in joined)
    logger.debug(
        "cut %d functions into %d pieces with %d singular nodes",
        len(fs),
        len(pieces),
        len(singular),
    )
    return ClosedCover(mesh, pieces, singular)


__all__ = ["ClosedCover", "Piece", "cut"]
