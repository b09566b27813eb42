import logging
import math

from collections import Counter
from fractions import Fraction
from typing import Iterator, List, Tuple, Union

from ..circle import Angle, Arc, DyadicPartition, StepLsc
from ..graph import CellKind, GraphLsc, Mesh
from ..morphisms import ArcValuation, FinDim, Graph
from .field import TrackPiece, UnitaryField
from .unitary import DiagonalUnitary

logger = logging.getLogger(__name__)


def eigenvalue_count(u: DiagonalUnitary, f: StepLsc) -> Tuple[int, ...]:
    """Cu(phi_u)(f) per block, as the sum of f over the eigenvalues with multiplicity."""
    return tuple(sum(f.value_at(a) for a in block) for block in u.blocks)


def _count_rule(located: List[Counter]):
    def rule(arc: Arc) -> Tuple[int, ...]:
        cells = set(arc.cells())
        return tuple(
            sum(m for cell, m in counter.items() if cell in cells) for counter in located
        )

    return rule


def _crossings(piece: TrackPiece, size: int) -> Iterator[Fraction]:
    lo, hi = sorted((piece.start_angle, piece.end_angle))
    if lo == hi:
        return
    for k in range(math.ceil(lo * size), math.floor(hi * size) + 1):
        coord = piece.start + (Fraction(k, size) - piece.start_angle) / piece.slope
        if piece.start < coord < piece.stop:
            yield coord


def event_mesh(field: UnitaryField, n: int) -> Mesh:
    """The mesh cut at every track breakpoint and every crossing of a grid angle k/2^n.

    Between consecutive cuts no track meets a grid angle, so arc counts are constant
    on every open segment.
    """
    size = 1 << n
    cuts = {}
    for e, track_list in enumerate(field.edge_tracks):
        coords = set(field.breakpoints(e))
        for track in track_list:
            for piece in track:
                coords.update(_crossings(piece, size))
        cuts[e] = coords
    return Mesh.build(field.graph, cuts)


def _cell_angles(field: UnitaryField, mesh: Mesh) -> List[Tuple[Angle, ...]]:
    out = []
    for cell in mesh.cells:
        if cell.kind == CellKind.VERTEX:
            out.append(field.vertex_angles[cell.vertex])
            continue
        coord = cell.start if cell.kind == CellKind.CUT else (cell.start + cell.stop) / 2
        out.append(
            tuple(
                Angle(field.lift_at(cell.edge, j, coord)) for j in range(field.dimension)
            )
        )
    return out


def cu_of_unitary(u: Union[DiagonalUnitary, UnitaryField], n: int) -> ArcValuation:
    """The valuation Cu(phi_u) on Lambda_n, by exact eigenvalue counting.

    Every connected arc U is sent to the number of eigenvalues inside the open set U:
    a tuple over the blocks of a diagonal unitary, or for a field the function on the
    graph counting the tracks inside U at each point.

    Args:
        u (Union[DiagonalUnitary, UnitaryField]): The unitary.
        n (int): The resolution.

    Returns:
        ArcValuation: The valuation, in N^r or in Lsc(X, N) respectively.
    """
    partition = DyadicPartition(n)
    if isinstance(u, DiagonalUnitary):
        located = [Counter(partition.locate(a) for a in block) for block in u.blocks]
        return ArcValuation.from_rule(n, FinDim(u.dimensions), _count_rule(located))

    mesh = event_mesh(u, n)
    per_cell = [
        Counter(partition.locate(a) for a in angles) for angles in _cell_angles(u, mesh)
    ]
    logger.debug(
        "counting %d tracks on %d mesh cells at resolution %d",
        u.dimension,
        len(mesh.cells),
        n,
    )

    def rule(arc: Arc) -> GraphLsc:
        cells = set(arc.cells())
        return GraphLsc(
            mesh,
            [sum(m for c, m in counter.items() if c in cells) for counter in per_cell],
        )

    return ArcValuation.from_rule(n, Graph(u.graph, u.dimension), rule)


__all__ = ["cu_of_unitary", "eigenvalue_count", "event_mesh"]
