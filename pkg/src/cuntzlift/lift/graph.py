"""Lifting valuations into Lsc(X, N) to unitary fields over a metric graph.

The lift runs in five steps. (1) The graph is cut into the maximal closed cover on
which every arc value is constant, and each piece gets the fill-up of its pointwise
valuation. (2) At every singular point the pieces meeting there are matched to the
first of them, the pivot, by Hall's theorem within 2/2^n. (3) Matched eigenvalues
are joined by shortest linear paths. (4) The paths are laid out on connectors of
radius delta around the singular points, giving a field that equals the fill-up on
every piece shrunk by delta. (5) The result is verified against the valuation.
"""
import logging

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import attr

from ..circle import Angle
from ..graph import ClosedCover, MetricGraph, cut
from ..morphisms import ArcValuation, CodomainKind, FinDim, compare_on_lambda
from ..morphisms import valuation_arcs
from ..morphisms.exceptions import CodomainError, InconsistentValuationError
from ..spectral import DiagonalUnitary, Matching, TrackPiece, UnitaryField
from ..spectral import cu_of_unitary, marriage_match
from ..spectral.exceptions import FieldError, HallViolationError
from .exceptions import LiftError
from .fd import fill_up

logger = logging.getLogger(__name__)

#: Connector radius as a fraction of the shortest segment of the cover mesh.
DELTA_FRACTION = Fraction(1, 16)

#: Grid steps the verification thickens by.
VERIFY_STEPS = 3

#: The Cauchy constant of :func:`graph_lift_sequence`.
SEQUENCE_CONSTANT = 16


def signed_shift(a: Angle, b: Angle) -> Fraction:
    """The shortest signed turn from a to b; antipodal points turn counterclockwise."""
    diff = (b.value - a.value) % 1
    return diff - 1 if diff > Fraction(1, 2) else diff


def pointwise_valuation(n: int, dimension: int, profile: Sequence[int]) -> ArcValuation:
    """The valuation into N read off a cover piece, whose profile follows valuation_arcs(n)."""
    return ArcValuation(
        n, FinDim([dimension]), {arc: (v,) for arc, v in zip(valuation_arcs(n), profile)}
    )


def cut_valuation(alpha: ArcValuation) -> ClosedCover:
    """Step 1: the maximal closed cover on which every arc value of alpha is constant."""
    if alpha.codomain.kind != CodomainKind.GRAPH:
        raise CodomainError(
            f"graph lifts need a graph codomain, got {alpha.codomain.kind.value}"
        )
    return cut(alpha.codomain.graph, [value for _, value in alpha.items()])


def lift_pieces(alpha: ArcValuation, cover: ClosedCover) -> Dict[int, DiagonalUnitary]:
    """Step 1, continued: the fill-up of the pointwise valuation on every piece."""
    d = alpha.codomain.dimension
    pieces = {}
    for piece in cover.pieces:
        try:
            pieces[piece.index] = fill_up(
                pointwise_valuation(alpha.resolution, d, piece.profile)
            )
        except InconsistentValuationError as e:
            raise LiftError(1, f"piece {piece.index}: {e}") from e
    return pieces


def match_cover(
    cover: ClosedCover, pieces: Dict[int, DiagonalUnitary], n: int
) -> Dict[int, Dict[int, Matching]]:
    """Step 2: match every piece at a singular point to the pivot piece there.

    Args:
        cover (ClosedCover): The cover.
        pieces (Dict[int, DiagonalUnitary]): The fill-up of every piece.
        n (int): The resolution; matched eigenvalues are closer than 2/2^n.

    Returns:
        Dict[int, Dict[int, Matching]]: Per singular node cell, the matching from the
        pivot to each other piece meeting there.

    Raises:
        LiftError: raised with step 2 when Hall's condition fails.
    """
    threshold = Fraction(2, 1 << n)
    out = {}
    for node in cover.singular:
        present = cover.pieces_at(node)
        if not present:
            continue
        pivot = present[0]
        matchings = {}
        for other in present[1:]:
            try:
                matchings[other] = marriage_match(
                    pieces[pivot].angles,
                    pieces[other].angles,
                    threshold,
                    source_label=pivot,
                    target_label=other,
                )
            except HallViolationError as e:
                raise LiftError(
                    2, f"pieces {pivot} and {other} at node {node}: {e}"
                ) from e
        out[node] = matchings
    return out


@attr.s(frozen=True, slots=True)
class _Hub:
    """The connector data at one singular point."""

    pivot: int = attr.ib()
    angles: Tuple[Angle, ...] = attr.ib()
    partner: Optional[int] = attr.ib()
    matchings: Dict[int, Matching] = attr.ib()

    def hub_index(self, piece: int, index: int) -> int:
        if piece == self.pivot:
            return index
        return self.matchings[piece].inverse().partner(index)

    def piece_index(self, piece: int, hub: int) -> int:
        if piece == self.pivot:
            return hub
        return self.matchings[piece].partner(hub)

    def shift(self, piece: Optional[int], hub: int) -> Fraction:
        if piece is None or piece == self.pivot:
            return Fraction(0)
        m = self.matchings[piece]
        return signed_shift(m.source[hub], m.target[m.partner(hub)])

    def center(self, hub: int) -> Fraction:
        return self.angles[hub].value + self.shift(self.partner, hub) / 2

    def path(self, piece: int, hub: int) -> List[Tuple[Fraction, Fraction]]:
        """Lifts along a germ of `piece`, as (distance from the node / delta, lift)."""
        base = self.angles[hub].value
        mid = self.center(hub)
        if piece == self.pivot:
            return [(Fraction(0), mid), (Fraction(1), base)]
        if piece == self.partner:
            return [(Fraction(0), mid), (Fraction(1), base + self.shift(piece, hub))]
        half = Fraction(1, 2)
        return [(Fraction(0), mid), (half, base), (Fraction(1), base + self.shift(piece, hub))]


def _hubs(
    cover: ClosedCover,
    pieces: Dict[int, DiagonalUnitary],
    matchings: Dict[int, Dict[int, Matching]],
) -> Dict[int, _Hub]:
    hubs = {}
    for node, by_piece in matchings.items():
        present = cover.pieces_at(node)
        hubs[node] = _Hub(
            present[0],
            pieces[present[0]].angles,
            present[1] if len(present) > 1 else None,
            by_piece,
        )
    return hubs


def _germ_pieces(
    points: List[Tuple[Fraction, Fraction]], at: Fraction, direction: int, delta: Fraction
) -> List[TrackPiece]:
    coords = [(at + direction * s * delta, lift) for s, lift in points]
    if direction < 0:
        coords.reverse()
    return [
        TrackPiece(t0, t1, a0, a1) for (t0, a0), (t1, a1) in zip(coords, coords[1:])
    ]


def connector_radius(cover: ClosedCover) -> Fraction:
    shortest = cover.mesh.shortest_segment()
    return shortest * DELTA_FRACTION if shortest is not None else Fraction(0)


def assemble(
    graph: MetricGraph,
    cover: ClosedCover,
    pieces: Dict[int, DiagonalUnitary],
    matchings: Dict[int, Dict[int, Matching]],
    n: int,
) -> UnitaryField:
    """Steps 3 and 4: lay the matched paths out on connectors around singular points.

    On a germ of the pivot the tracks run from the pivot's angles to the midpoints of
    the pivot-partner paths at the node; on a germ of the partner they run from the
    partner's angles to the same midpoints. Any other piece first joins the pivot's
    angles along its own matching and then follows the pivot-partner path back to
    the midpoints. Away from the connectors the field equals the piece's fill-up.

    Args:
        graph (MetricGraph): The graph.
        cover (ClosedCover): The cover from :func:`cut_valuation`.
        pieces (Dict[int, DiagonalUnitary]): The fill-up of every piece.
        matchings (Dict[int, Dict[int, Matching]]): The output of :func:`match_cover`.
        n (int): The resolution.

    Returns:
        UnitaryField: The assembled field.

    Raises:
        LiftError: raised with step 4 when the tracks do not form a field.
    """
    mesh = cover.mesh
    cells = mesh.cells
    delta = connector_radius(cover)
    hubs = _hubs(cover, pieces, matchings)
    d = len(next(iter(pieces.values())).angles)

    vertex_angles = {}
    for v in graph.vertices:
        node = mesh.vertex_cell(v)
        if node in hubs:
            hub = hubs[node]
            vertex_angles[v] = [hub.center(h) for h in range(d)]
        else:
            vertex_angles[v] = [a.value for a in pieces[cover.piece_of(node)].angles]

    edge_tracks = []
    for e in range(len(graph.edges)):
        segments = [s for s in mesh.segment_cells() if cells[s].edge == e]
        segments.sort(key=lambda s: cells[s].index)
        tracks: List[List[TrackPiece]] = [[] for _ in range(d)]
        for j in range(d):
            index = j
            for i, s in enumerate(segments):
                piece = cover.piece_of(s)
                angle = pieces[piece].angles[index].value
                start_node, stop_node = mesh.endpoints(s)
                lo, hi = cells[s].start, cells[s].stop
                if start_node in hubs:
                    hub = hubs[start_node]
                    h = hub.hub_index(piece, index)
                    tracks[j].extend(_germ_pieces(hub.path(piece, h), lo, 1, delta))
                    lo += delta
                if stop_node in hubs:
                    hi -= delta
                tracks[j].append(TrackPiece(lo, hi, angle, angle))
                if stop_node in hubs:
                    hub = hubs[stop_node]
                    h = hub.hub_index(piece, index)
                    tracks[j].extend(
                        _germ_pieces(hub.path(piece, h), cells[s].stop, -1, delta)
                    )
                    if i + 1 < len(segments):
                        index = hub.piece_index(cover.piece_of(segments[i + 1]), h)
        edge_tracks.append(tracks)

    try:
        field = UnitaryField(graph, d, vertex_angles, edge_tracks)
    except FieldError as e:
        raise LiftError(4, str(e)) from e
    logger.debug(
        "assembled %d tracks over %d pieces at resolution %d with delta %s",
        d,
        len(pieces),
        n,
        delta,
    )
    return field


def lift_graph(alpha: ArcValuation, n: Optional[int] = None) -> UnitaryField:
    """Lift a valuation into Lsc(X, N) to a unitary field over X.

    The field compares with alpha on Lambda_{n-2}.

    Args:
        alpha (ArcValuation): A validated valuation with a graph codomain.
        n (int, optional): The resolution to lift at. Defaults to that of alpha.

    Returns:
        UnitaryField: The lift.

    Raises:
        CodomainError: raised for codomains other than a graph.
        LiftError: raised with the failing step.
    """
    if n is not None:
        alpha = alpha.coarsen(n)
    cover = cut_valuation(alpha)
    pieces = lift_pieces(alpha, cover)
    matchings = match_cover(cover, pieces, alpha.resolution)
    field = assemble(alpha.codomain.graph, cover, pieces, matchings, alpha.resolution)
    logger.info(
        "lifted resolution %d over %d pieces and %d singular points",
        alpha.resolution,
        len(cover.pieces),
        len(cover.singular),
    )
    return field


@attr.s(frozen=True, slots=True)
class LiftReport:
    """The checks run on a graph lift.

    Attributes:
        resolution (int): The resolution n of the lift.
        coarse_resolution (int): max(n - 2, 0), where the lift must compare.
        boundary (bool): Whether the field equals the piece fill-ups away from the
            connectors.
        excursion (Fraction): The largest distance, read off the field, between a track
            on a connector and the nearest pivot eigenvalue of its singular point.
        bottleneck (Fraction): The largest bottleneck of the matchings at the singular
            points.
        alpha_below_beta (bool): alpha(g) <= beta(g thickened by 3/2^n) for every arc.
        beta_below_alpha (bool): beta(g) <= alpha(g thickened by 3/2^n) for every arc.
        compares (bool): Whether alpha and beta compare on the coarse lattice.
    """

    resolution: int = attr.ib()
    coarse_resolution: int = attr.ib()
    boundary: bool = attr.ib()
    excursion: Fraction = attr.ib()
    bottleneck: Fraction = attr.ib()
    alpha_below_beta: bool = attr.ib()
    beta_below_alpha: bool = attr.ib()
    compares: bool = attr.ib()

    @property
    def excursion_bound(self) -> Fraction:
        return Fraction(2, 1 << self.resolution)

    @property
    def ok(self) -> bool:
        return (
            self.boundary
            and self.excursion < self.excursion_bound
            and self.bottleneck < self.excursion_bound
            and self.alpha_below_beta
            and self.beta_below_alpha
            and self.compares
        )


def _boundary_holds(
    field: UnitaryField, cover: ClosedCover, pieces: Dict[int, DiagonalUnitary]
) -> bool:
    mesh = cover.mesh
    cells = mesh.cells
    delta = connector_radius(cover)
    singular = set(cover.singular)
    for s in mesh.segment_cells():
        expected = pieces[cover.piece_of(s)].spectrum()
        lo, hi = cells[s].start, cells[s].stop
        samples = [(lo + hi) / 2]
        start_node, stop_node = mesh.endpoints(s)
        if start_node in singular:
            samples.append(lo + delta)
        if stop_node in singular:
            samples.append(hi - delta)
        for coord in samples:
            edge = cells[s].edge
            found = tuple(
                sorted(Angle(field.lift_at(edge, j, coord)) for j in range(field.dimension))
            )
            if found != expected:
                return False
    return True


#: Germ positions, as fractions of delta from the node, at which connectors are sampled.
#: They are the knots of every hub path, and tracks are linear in between.
_CONNECTOR_SAMPLES = (Fraction(0), Fraction(1, 2), Fraction(1))


def connector_excursion(
    field: UnitaryField, cover: ClosedCover, pieces: Dict[int, DiagonalUnitary]
) -> Fraction:
    """The largest distance from a connector track to the pivot spectrum at its node.

    Every track of every germ at a singular point is sampled across the connector and
    compared with each pivot eigenvalue there; the track's excursion is its distance
    to the nearest one.
    """
    mesh = cover.mesh
    cells = mesh.cells
    delta = connector_radius(cover)
    singular = set(cover.singular)
    worst = Fraction(0)
    for s in mesh.segment_cells():
        edge = cells[s].edge
        ends = zip(mesh.endpoints(s), (cells[s].start, cells[s].stop), (1, -1))
        for node, at, direction in ends:
            present = cover.pieces_at(node) if node in singular else ()
            if not present:
                continue
            pivot = pieces[present[0]].angles
            coords = [at + direction * step * delta for step in _CONNECTOR_SAMPLES]
            for j in range(field.dimension):
                track = [Angle(field.lift_at(edge, j, c)) for c in coords]
                nearest = min(max(a.dist(p) for a in track) for p in pivot)
                worst = max(worst, nearest)
    return worst


def _thickened_below(
    small: ArcValuation, large: ArcValuation, n: int, steps: int
) -> bool:
    leq = small.codomain.leq
    for arc in valuation_arcs(n):
        if not leq(small.value(arc), large.value(arc.thicken(steps))):
            return False
    return True


def verify_lift(alpha: ArcValuation, field: UnitaryField, n: Optional[int] = None) -> LiftReport:
    """Step 5: check a graph lift against the valuation it was built from.

    Args:
        alpha (ArcValuation): The valuation.
        field (UnitaryField): Its lift.
        n (int, optional): The lift resolution. Defaults to that of alpha.

    Returns:
        LiftReport: The outcome of every check.
    """
    if n is not None:
        alpha = alpha.coarsen(n)
    n = alpha.resolution
    cover = cut_valuation(alpha)
    pieces = lift_pieces(alpha, cover)
    matchings = match_cover(cover, pieces, n)
    bottleneck = Fraction(0)
    for by_piece in matchings.values():
        for m in by_piece.values():
            bottleneck = max(bottleneck, m.bottleneck)
    beta = cu_of_unitary(field, n)
    coarse = max(n - 2, 0)
    report = LiftReport(
        resolution=n,
        coarse_resolution=coarse,
        boundary=_boundary_holds(field, cover, pieces),
        excursion=connector_excursion(field, cover, pieces),
        bottleneck=bottleneck,
        alpha_below_beta=_thickened_below(alpha, beta, n, VERIFY_STEPS),
        beta_below_alpha=_thickened_below(beta, alpha, n, VERIFY_STEPS),
        compares=compare_on_lambda(beta, alpha, coarse),
    )
    if not report.ok:
        logger.warning("lift at resolution %d fails verification: %s", n, report)
    return report


def graph_lift_sequence(alpha: ArcValuation, n_max: int) -> List[UnitaryField]:
    """Lift the restrictions of alpha to Lambda_1, ..., Lambda_m, m = min(n_max, n).

    Consecutive lifts satisfy the Cauchy bound with constant :data:`SEQUENCE_CONSTANT`.
    """
    top = min(n_max, alpha.resolution)
    return [lift_graph(alpha, n) for n in range(1, top + 1)]


__all__ = [
    "DELTA_FRACTION",
    "LiftReport",
    "SEQUENCE_CONSTANT",
    "VERIFY_STEPS",
    "assemble",
    "connector_excursion",
    "connector_radius",
    "cut_valuation",
    "graph_lift_sequence",
    "lift_graph",
    "lift_pieces",
    "match_cover",
    "pointwise_valuation",
    "signed_shift",
    "verify_lift",
]
