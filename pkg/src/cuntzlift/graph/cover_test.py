import random

import pytest

from . import cover, exceptions
from .lsc import GraphLsc, graph_sum
from .mesh import Mesh
from .metric import Edge, MetricGraph
from ..types import INF


def random_graph_lsc(rng: random.Random, mesh: Mesh, top: int) -> GraphLsc:
    values = [0] * len(mesh.cells)
    for s in mesh.segment_cells():
        values[s] = rng.randrange(top + 1)
    for node in mesh.node_cells():
        bound = min([values[s] for s, _ in mesh.germs(node)] or [top])
        values[node] = rng.randrange(bound + 1)
    return GraphLsc(mesh, values)


def pieces_as_sets(c: cover.ClosedCover):
    return {piece.cells for piece in c.pieces}


def test_cut_constant_function():
    graph = MetricGraph.interval()
    c = cover.cut(graph, [GraphLsc.constant(graph, 2)])
    assert len(c.pieces) == 1
    assert c.pieces[0].profile == (2,)
    assert c.singular == ()
    assert c.adjacency() == frozenset()


def test_cut_left_half():
    graph = MetricGraph.interval()
    half = Mesh.build(graph, {0: ["1/2"]})
    # cells: vertex 0, vertex 1, (0, 1/2), 1/2, (1/2, 1)
    f = GraphLsc(half, [0, 0, 1, 0, 0])
    c = cover.cut(graph, [f])
    assert pieces_as_sets(c) == {frozenset({2}), frozenset({1, 4})}
    assert c.singular == (0, 3)
    assert c.pieces_at(3) == (c.piece_of(2), c.piece_of(4))
    assert c.adjacency() == frozenset({frozenset({0, 1})})

    with pytest.raises(KeyError):
        c.piece_of(3)


def test_cut_isolated_vertex():
    graph = MetricGraph(["a", "b", "c"], [Edge("a", "b", 1)])
    c = cover.cut(graph, [GraphLsc.constant(graph, 1)])
    assert pieces_as_sets(c) == {frozenset({0, 1, 3}), frozenset({2})}


def test_cut_rejects_infinity():
    graph = MetricGraph.interval()

    with pytest.raises(exceptions.UnboundedValueError):
        cover.cut(graph, [GraphLsc.constant(graph, INF)])


@pytest.mark.parametrize("seed", range(5))
def test_cut_profile_bound_and_idempotence(seed):
    rng = random.Random(seed)
    graph = MetricGraph.theta()
    mesh = Mesh.build(graph, {e: ["1/4", "1/2", "3/4"] for e in range(3)})
    tops = [rng.randrange(1, 4) for _ in range(3)]
    fs = [random_graph_lsc(rng, mesh, top) for top in tops]
    c = cover.cut(graph, fs)

    bound = 1
    for f in fs:
        bound *= f.max_value() + 1
    assert c.profile_count <= bound
    assert len(c.pieces) <= len(mesh.segment_cells())

    again = cover.cut(graph, list(fs) + [graph_sum(fs, graph)] + list(fs))
    assert pieces_as_sets(again) == pieces_as_sets(c)
    assert again.singular == c.singular

    # every profile is constant on its piece
    for piece in c.pieces:
        for cell in piece.cells:
            assert tuple(f.values[cell] for f in fs) == piece.profile


@pytest.mark.parametrize("seed", range(5))
def test_cut_adjacency_is_symmetric(seed):
    rng = random.Random(seed)
    graph = MetricGraph.theta()
    mesh = Mesh.build(graph, {e: ["1/3", "2/3"] for e in range(3)})
    c = cover.cut(graph, [random_graph_lsc(rng, mesh, 2) for _ in range(2)])
    for node in c.singular:
        present = c.pieces_at(node)
        for a in present:
            for b in present:
                if a != b:
                    assert frozenset((a, b)) in c.adjacency()
    covered = set()
    for piece in c.pieces:
        assert not covered & piece.cells
        covered |= piece.cells
    assert covered | set(c.singular) == set(range(len(mesh.cells)))
