import logging

from collections import deque
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import attr
import networkx as nx

from ..circle import Angle
from ..rational import to_fraction
from .exceptions import DimensionMismatchError, HallViolationError
from .unitary import DiagonalUnitary

logger = logging.getLogger(__name__)


def _to_angles(values: Sequence[Any]) -> Tuple[Angle, ...]:
    return tuple(Angle(v) for v in values)


def _to_pairs(values: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(p) for p in values)


def _validate_pairs(instance, attribute: attr.Attribute, value: Tuple[Tuple[int, ...], ...]):
    size = len(instance.source)
    if len(instance.target) != size:
        raise DimensionMismatchError(f"cannot match {size} angles with {len(instance.target)}")
    positions = list(range(size))
    if (
        any(len(p) != 2 for p in value)
        or [i for i, _ in value] != positions
        or sorted(j for _, j in value) != positions
    ):
        raise ValueError(f"pairs {list(value)} are not a bijection of {size} positions")


@attr.s(frozen=True, slots=True)
class Matching:
    """A bijection between two angle multisets, as pairs of item positions.

    Repeated angles are distinguishable items. `pairs[i]` is (i, sigma(i)).

    Attributes:
        source (Tuple[Angle, ...]): The angles being matched.
        target (Tuple[Angle, ...]): Their partners.
        pairs (Tuple[Tuple[int, int], ...]): The bijection, sorted by source position.
        threshold (Fraction): Every pair is strictly closer than this.
        source_label (int, optional): The piece the source angles belong to.
        target_label (int, optional): The piece the target angles belong to.
    """

    source: Tuple[Angle, ...] = attr.ib(converter=_to_angles)
    target: Tuple[Angle, ...] = attr.ib(converter=_to_angles)
    pairs: Tuple[Tuple[int, int], ...] = attr.ib(
        converter=_to_pairs, validator=[_validate_pairs]
    )
    threshold: Fraction = attr.ib(converter=to_fraction)
    source_label: Optional[int] = attr.ib(default=None)
    target_label: Optional[int] = attr.ib(default=None)

    @property
    def bottleneck(self) -> Fraction:
        if not self.pairs:
            return Fraction(0)
        return max(self.source[i].dist(self.target[j]) for i, j in self.pairs)

    def partner(self, i: int) -> int:
        return self.pairs[i][1]

    def inverse(self) -> "Matching":
        return Matching(
            self.target,
            self.source,
            sorted((j, i) for i, j in self.pairs),
            self.threshold,
            self.target_label,
            self.source_label,
        )


def _hall_witness(
    graph: nx.Graph, left: List[Tuple[str, int]], matching: Dict
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    # alternating-path closure of the unmatched left items
    frontier = deque(node for node in left if node not in matching)
    seen = set(frontier)
    while frontier:
        node = frontier.popleft()
        for neighbor in sorted(graph[node]):
            if neighbor in seen:
                continue
            seen.add(neighbor)
            mate = matching.get(neighbor)
            if mate is not None and mate not in seen:
                seen.add(mate)
                frontier.append(mate)
    omega = tuple(sorted(i for side, i in seen if side == "l"))
    neighborhood = tuple(sorted(j for side, j in seen if side == "r"))
    return omega, neighborhood


def _bipartite(xs, ys, limit: Fraction, strict: bool) -> nx.Graph:
    graph = nx.Graph()
    left = sorted(range(len(xs)), key=lambda i: (xs[i], i))
    right = sorted(range(len(ys)), key=lambda j: (ys[j], j))
    graph.add_nodes_from(("l", i) for i in left)
    graph.add_nodes_from(("r", j) for j in right)
    for i in left:
        for j in right:
            d = xs[i].dist(ys[j])
            if d < limit or (not strict and d == limit):
                graph.add_edge(("l", i), ("r", j))
    return graph


def _maximum_matching(graph: nx.Graph, size: int) -> Dict:
    top = [("l", i) for i in range(size)]
    return nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)


def _canonical_pairs(xs, matching: Dict, size: int) -> Tuple[Tuple[int, int], ...]:
    # items with equal angles are interchangeable: hand their partners out in order
    groups: Dict[Angle, List[int]] = {}
    for i in range(size):
        groups.setdefault(xs[i], []).append(i)
    pairs = []
    for members in groups.values():
        partners = sorted(matching[("l", i)][1] for i in members)
        pairs.extend(zip(members, partners))
    return tuple(sorted(pairs))


def marriage_match(
    xs: Sequence[Any],
    ys: Sequence[Any],
    threshold: Any,
    source_label: Optional[int] = None,
    target_label: Optional[int] = None,
) -> Matching:
    """Find a bottleneck-optimal perfect matching of two angle multisets.

    Among all bijections pairing items strictly closer than `threshold`, the one
    minimizing the largest pair distance is returned. Hall's condition is checked,
    not assumed.

    Args:
        xs (Sequence[Any]): The source angles, repetitions allowed.
        ys (Sequence[Any]): The target angles, as many as `xs`.
        threshold (Any): The strict upper bound on pair distances.
        source_label (int, optional): Label of the source piece.
        target_label (int, optional): Label of the target piece.

    Returns:
        Matching: The matching.

    Raises:
        DimensionMismatchError: raised when the multisets differ in size.
        HallViolationError: raised when some set of source items has fewer
            neighbors than members; `omega` and `neighborhood` certify it.
    """
    xs = _to_angles(xs)
    ys = _to_angles(ys)
    threshold = to_fraction(threshold)
    if len(xs) != len(ys):
        raise DimensionMismatchError(f"cannot match {len(xs)} angles with {len(ys)}")
    size = len(xs)
    if size == 0:
        return Matching(xs, ys, (), threshold, source_label, target_label)

    widest = _bipartite(xs, ys, threshold, strict=True)
    matching = _maximum_matching(widest, size)
    if sum(1 for node in matching if node[0] == "l") < size:
        left = [("l", i) for i in range(size)]
        omega, neighborhood = _hall_witness(widest, left, matching)
        raise HallViolationError(
            omega,
            neighborhood,
            f"{len(omega)} angles have only {len(neighborhood)} partners closer "
            f"than {threshold}",
        )

    candidates = sorted({x.dist(y) for x in xs for y in ys if x.dist(y) < threshold})
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        trial = _maximum_matching(_bipartite(xs, ys, candidates[mid], strict=False), size)
        if sum(1 for node in trial if node[0] == "l") == size:
            hi = mid
        else:
            lo = mid + 1
    best = _maximum_matching(_bipartite(xs, ys, candidates[lo], strict=False), size)
    pairs = _canonical_pairs(xs, best, size)
    result = Matching(xs, ys, pairs, threshold, source_label, target_label)
    logger.debug("matched %d angles with bottleneck %s", size, result.bottleneck)
    return result


def matching_distance(u: DiagonalUnitary, v: DiagonalUnitary) -> Fraction:
    """The bottleneck distance between the eigenvalue multisets, block by block.

    This is the least d such that some permutation conjugation moves every eigenvalue
    of u by at most d onto an eigenvalue of v.

    Raises:
        DimensionMismatchError: raised when the block sizes differ.
    """
    if u.dimensions != v.dimensions:
        raise DimensionMismatchError(
            f"block sizes {u.dimensions} and {v.dimensions} differ"
        )
    return max(
        (marriage_match(a, b, 1).bottleneck for a, b in zip(u.blocks, v.blocks)),
        default=Fraction(0),
    )


__all__ = ["Matching", "marriage_match", "matching_distance"]
