"""Metric operations on open regions and on level sets of graph functions.

An open region is a {0, 1}-valued :class:`GraphLsc`. Distances are path distances,
computed exactly with rational edge weights.
"""
import logging

from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

import networkx as nx

from ..rational import to_fraction
from .exceptions import ContainmentError, UnboundedValueError
from .lsc import GraphLsc, graph_sum, on_common_mesh
from .mesh import Mesh

logger = logging.getLogger(__name__)


def _require_region(region: GraphLsc):
    if not region.is_indicator():
        raise ValueError("expected a {0, 1}-valued region")


def closure_nodes(region: GraphLsc) -> Tuple[int, ...]:
    """Node cells in the closure of an open region."""
    mesh = region.mesh
    values = region.values
    return tuple(
        node
        for node in mesh.node_cells()
        if values[node] > 0 or any(values[s] > 0 for s, _ in mesh.germs(node))
    )


def node_distances(mesh: Mesh, sources: Iterable[int]) -> Dict[int, Fraction]:
    """Exact path distances from a set of node cells to every reachable node cell."""
    sources = list(sources)
    if not sources:
        return {}
    return nx.multi_source_dijkstra_path_length(mesh.node_graph(), sources)


def _reach(distances: Dict[int, Fraction], node: int, r: Fraction) -> Optional[Fraction]:
    d = distances.get(node)
    if d is None or d >= r:
        return None
    return r - d


def thicken_region(region: GraphLsc, r: Any) -> GraphLsc:
    """U_r: the points at path distance < r from the open region U."""
    _require_region(region)
    r = to_fraction(r)
    if r < 0:
        raise ValueError(f"thickening radius must be non-negative, got {r}")
    if r == 0:
        return region
    mesh = region.mesh
    cells = mesh.cells
    distances = node_distances(mesh, closure_nodes(region))
    extra: Dict[int, List[Fraction]] = {}
    reaches = {}
    for s in mesh.segment_cells():
        if region.values[s]:
            continue
        left, right = mesh.endpoints(s)
        cell = cells[s]
        lo, hi = _reach(distances, left, r), _reach(distances, right, r)
        reaches[s] = (lo, hi)
        for t in (
            cell.start + lo if lo is not None else None,
            cell.stop - hi if hi is not None else None,
        ):
            if t is not None and cell.start < t < cell.stop:
                extra.setdefault(cell.edge, []).append(t)
    fine = mesh.with_cuts(extra)
    mapping = mesh.project(fine)

    def inside(i, cell) -> int:
        old = mapping[i]
        if region.values[old]:
            return 1
        if cells[old].is_node:
            return int(distances.get(old, r) < r)
        lo, hi = reaches[old]
        base = cells[old]
        if cell.is_node:
            return int(
                (lo is not None and cell.start - base.start < lo)
                or (hi is not None and base.stop - cell.start < hi)
            )
        return int(
            (lo is not None and cell.stop - base.start <= lo)
            or (hi is not None and base.stop - cell.start <= hi)
        )

    return GraphLsc.from_cells(fine, inside)


def int_delta(region: GraphLsc, delta: Any) -> GraphLsc:
    """Int_delta(U): the points at path distance > delta from the complement of U.

    This is the largest open V with V_delta inside U. Components of the graph that
    lie entirely in U are kept whole. The result is empty where U is thinner than
    2 * delta.
    """
    _require_region(region)
    delta = to_fraction(delta)
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    mesh = region.mesh
    cells = mesh.cells
    outside = [node for node in mesh.node_cells() if not region.values[node]]
    distances = node_distances(mesh, outside)
    extra: Dict[int, List[Fraction]] = {}
    bounds = {}
    for s in mesh.segment_cells():
        if not region.values[s]:
            continue
        left, right = mesh.endpoints(s)
        cell = cells[s]
        lo = cell.start + delta - distances[left] if left in distances else None
        hi = cell.stop - delta + distances[right] if right in distances else None
        bounds[s] = (lo, hi)
        for t in (lo, hi):
            if t is not None and cell.start < t < cell.stop:
                extra.setdefault(cell.edge, []).append(t)
    fine = mesh.with_cuts(extra)
    mapping = mesh.project(fine)

    def inside(i, cell) -> int:
        old = mapping[i]
        if not region.values[old]:
            return 0
        if cells[old].is_node:
            return int(old not in distances or distances[old] > delta)
        lo, hi = bounds[old]
        if cell.is_node:
            return int(
                (lo is None or cell.start > lo) and (hi is None or cell.start < hi)
            )
        return int((lo is None or cell.start >= lo) and (hi is None or cell.stop <= hi))

    return GraphLsc.from_cells(fine, inside)


def contains_region(outer: GraphLsc, inner: GraphLsc) -> bool:
    """Whether the open region `inner` lies inside `outer`."""
    return inner <= outer


def closure_inside(inner: GraphLsc, outer: GraphLsc) -> bool:
    """Whether the closure of the open region `inner` lies inside `outer`."""
    inner, outer = on_common_mesh(inner, outer)
    if any(not outer.values[c] for c in inner.support()):
        return False
    return all(outer.values[node] for node in closure_nodes(inner))


def way_below(f: GraphLsc, g: GraphLsc) -> bool:
    """Decide f << g in Lsc(X, N u {inf}) by levelwise closure containment."""
    f, g = on_common_mesh(f, g)
    if not f.is_finite():
        return False
    mesh = f.mesh
    cells = mesh.cells
    for c, value in enumerate(f.values):
        if cells[c].is_node:
            value = max([value] + [f.values[s] for s, _ in mesh.germs(c)])
        if value > g.values[c]:
            return False
    return True


def thicken(f: GraphLsc, r: Any) -> GraphLsc:
    """Thicken every level set of `f` by the radius `r`."""
    levels = chain_decomposition(f)
    if not levels:
        return f
    return graph_sum([thicken_region(w, r) for w in levels], f.mesh)


def chain_decomposition(f: GraphLsc) -> Tuple[GraphLsc, ...]:
    """The decreasing open level sets (1_{W_1}, ..., 1_{W_M}) of `f`.

    Raises:
        UnboundedValueError: raised when `f` attains infinity.
    """
    if not f.is_finite():
        raise UnboundedValueError("chain decomposition needs a finite-valued function")
    return tuple(f.level_set(level) for level in range(1, f.max_value() + 1))


def glue_delta(f: GraphLsc, g: GraphLsc, level: int, region: GraphLsc) -> Fraction:
    """The largest delta with U_delta inside Z_l = g^{-1}((l - 1, inf]).

    This is the path distance from the closure of U to the complement of Z_l. When
    the complement is out of reach, the total length of the graph is returned; every
    radius works then.

    Args:
        f (GraphLsc): The small function.
        g (GraphLsc): The large function.
        level (int): The level l >= 1.
        region (GraphLsc): An open region U inside W_l = f^{-1}((l - 1, inf]).

    Returns:
        Fraction: The exact distance.

    Raises:
        ContainmentError: raised when U is not inside W_l, or the closure of W_l is not
            inside Z_l.
    """
    _require_region(region)
    w = f.level_set(level)
    z = g.level_set(level)
    if not contains_region(w, region):
        raise ContainmentError(f"the region is not inside level set {level} of f")
    if not closure_inside(w, z):
        raise ContainmentError(
            f"the closure of level set {level} of f is not inside that of g"
        )
    region, z = on_common_mesh(region, z)
    mesh = region.mesh
    distances = node_distances(mesh, closure_nodes(region))
    gaps = [
        distances[node]
        for node in mesh.node_cells()
        if not z.values[node] and node in distances
    ]
    delta = min(gaps) if gaps else mesh.graph.total_length
    if not contains_region(z, thicken_region(region, delta)):
        raise AssertionError(f"glue radius {delta} leaves the target level set")
    logger.debug("glue radius at level %d is %s", level, delta)
    return delta


__all__ = [
    "chain_decomposition",
    "closure_inside",
    "closure_nodes",
    "contains_region",
    "glue_delta",
    "int_delta",
    "node_distances",
    "thicken",
    "thicken_region",
    "way_below",
]
