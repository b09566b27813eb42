"""Seeded generators of random unitaries, fields, graphs and consistent valuations."""
import random

from fractions import Fraction
from typing import List, Sequence, Union

from .circle import Angle
from .graph import Edge, MetricGraph
from .morphisms import ArcValuation
from .spectral import DiagonalUnitary, TrackPiece, UnitaryField, cu_of_unitary


def grid_angle(rng: random.Random, grid: int) -> Fraction:
    size = 1 << grid
    return Fraction(rng.randrange(size), size)


def random_unitary(
    rng: random.Random, dimensions: Union[int, Sequence[int]], grid: int
) -> DiagonalUnitary:
    """A diagonal unitary with angles drawn from the level-`grid` breakpoints.

    An int `dimensions` gives a single block of that size.
    """
    if isinstance(dimensions, int):
        dimensions = (dimensions,)
    return DiagonalUnitary([[grid_angle(rng, grid) for _ in range(d)] for d in dimensions])


def random_valuation(
    rng: random.Random, dimensions: Sequence[int], n: int
) -> ArcValuation:
    """A consistent valuation at resolution n into N^r: the counts of a random unitary.

    Angles are drawn from the grid one level finer, so centers and breakpoints of the
    resolution-n partition both occur.
    """
    return cu_of_unitary(random_unitary(rng, dimensions, n + 1), n)


def random_graph(rng: random.Random, vertices: int, edges: int) -> MetricGraph:
    """A graph with random endpoints and lengths in {1/2, 1, 3/2, 2}; loops allowed."""
    names = [f"v{i}" for i in range(vertices)]
    return MetricGraph(
        names,
        [
            Edge(rng.choice(names), rng.choice(names), Fraction(rng.randint(1, 4), 2))
            for _ in range(edges)
        ],
    )


def _shortest_lift(start: Fraction, target: Fraction) -> Fraction:
    diff = (target - start) % 1
    return start + (diff - 1 if diff > Fraction(1, 2) else diff)


def random_field(
    rng: random.Random, graph: MetricGraph, dimension: int, grid: int
) -> UnitaryField:
    """A field whose tracks turn through a random grid angle at every edge midpoint.

    Vertex angles and turning points are drawn from the level-`grid` breakpoints.
    Tracks leave each edge start in vertex order and reach the edge end in a random
    order.
    """
    vertex_angles = {
        v: sorted(grid_angle(rng, grid) for _ in range(dimension)) for v in graph.vertices
    }
    edge_tracks: List[List[List[TrackPiece]]] = []
    for edge in graph.edges:
        ends = list(vertex_angles[edge.b])
        rng.shuffle(ends)
        half = edge.length / 2
        tracks = []
        for start, end in zip(vertex_angles[edge.a], ends):
            middle = _shortest_lift(start, grid_angle(rng, grid))
            stop = _shortest_lift(middle, end)
            tracks.append(
                [TrackPiece(0, half, start, middle), TrackPiece(half, edge.length, middle, stop)]
            )
        edge_tracks.append(tracks)
    return UnitaryField(graph, dimension, vertex_angles, edge_tracks)


def random_angles(rng: random.Random, count: int, grid: int) -> List[Angle]:
    return [Angle(grid_angle(rng, grid)) for _ in range(count)]


__all__ = [
    "grid_angle",
    "random_angles",
    "random_field",
    "random_graph",
    "random_unitary",
    "random_valuation",
]
