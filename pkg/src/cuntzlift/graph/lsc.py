from typing import Any, Callable, Iterable, Sequence, Tuple, Union

import attr

from ..rational import to_extended
from ..types import INF, Extended
from .exceptions import GraphLscError
from .mesh import Cell, Mesh, common_mesh
from .metric import MetricGraph, Point


def _to_values(values: Iterable[Any]) -> Tuple[Extended, ...]:
    return tuple(to_extended(v) for v in values)


def _validate_values(instance, attribute: attr.Attribute, value: Tuple[Extended, ...]):
    mesh = instance.mesh
    if len(value) != len(mesh.cells):
        raise GraphLscError(
            f"expected {len(mesh.cells)} cell values for the mesh, got {len(value)}"
        )
    for node in mesh.node_cells():
        for segment, _ in mesh.germs(node):
            if value[node] > value[segment]:
                raise GraphLscError(
                    f"node cell {node} has value {value[node]} above the adjacent "
                    f"segment cell {segment} ({value[segment]})"
                )


@attr.s(frozen=True, slots=True, order=False)
class GraphLsc:
    """A lower semicontinuous, piecewise constant N u {inf}-valued function on a graph.

    Values are stored per cell of a :class:`Mesh`. Node values never exceed the values
    of the adjacent open segments. Binary operations first move both operands to the
    merged mesh; equality is structural, use :meth:`same_as` across meshes.

    Attributes:
        mesh (Mesh): The subdivision the function is constant on.
        values (Tuple): One value per mesh cell.
    """

    mesh: Mesh = attr.ib()
    values: Tuple[Extended, ...] = attr.ib(converter=_to_values, validator=[_validate_values])

    @classmethod
    def constant(cls, where: Union[Mesh, MetricGraph], value: Any) -> "GraphLsc":
        mesh = where if isinstance(where, Mesh) else Mesh.coarse(where)
        return cls(mesh, [value] * len(mesh.cells))

    @classmethod
    def indicator(cls, mesh: Mesh, cells: Iterable[int]) -> "GraphLsc":
        inside = set(cells)
        return cls(mesh, [1 if c in inside else 0 for c in range(len(mesh.cells))])

    @classmethod
    def from_cells(cls, mesh: Mesh, rule: Callable[[int, Cell], Any]) -> "GraphLsc":
        return cls(mesh, [rule(i, cell) for i, cell in enumerate(mesh.cells)])

    @property
    def graph(self) -> MetricGraph:
        return self.mesh.graph

    def refine(self, mesh: Mesh) -> "GraphLsc":
        if mesh == self.mesh:
            return self
        mapping = self.mesh.project(mesh)
        return GraphLsc(mesh, [self.values[c] for c in mapping])

    def value_at(self, point: Point) -> Extended:
        return self.values[self.mesh.locate_point(point)]

    def same_as(self, other: "GraphLsc") -> bool:
        f, g = on_common_mesh(self, other)
        return f.values == g.values

    def __le__(self, other: "GraphLsc") -> bool:
        f, g = on_common_mesh(self, other)
        return all(a <= b for a, b in zip(f.values, g.values))

    def __add__(self, other: "GraphLsc") -> "GraphLsc":
        f, g = on_common_mesh(self, other)
        return GraphLsc(f.mesh, [a + b for a, b in zip(f.values, g.values)])

    def max_value(self) -> Extended:
        return max(self.values) if self.values else 0

    def is_finite(self) -> bool:
        return INF not in self.values

    def is_indicator(self) -> bool:
        return all(v in (0, 1) for v in self.values)

    def support(self) -> Tuple[int, ...]:
        return tuple(c for c, v in enumerate(self.values) if v > 0)

    def level_set(self, level: int) -> "GraphLsc":
        """Indicator of the open set f^{-1}((l - 1, inf])."""
        return GraphLsc(self.mesh, [1 if v >= level else 0 for v in self.values])

    def simplified(self) -> "GraphLsc":
        """The same function on the coarsest mesh it is constant on."""
        mesh = self.mesh
        keep = []
        for e, edge_cuts in enumerate(mesh.cuts):
            kept = []
            for j, t in enumerate(edge_cuts):
                cut = mesh.locate(e, t)
                if not self.values[cut - 1] == self.values[cut] == self.values[cut + 1]:
                    kept.append(t)
            keep.append(kept)
        coarse = Mesh(mesh.graph, keep)
        if coarse == mesh:
            return self
        mapping = coarse.project(mesh)
        values = [0] * len(coarse.cells)
        for fine_cell, coarse_cell in enumerate(mapping):
            values[coarse_cell] = self.values[fine_cell]
        return GraphLsc(coarse, values)


def on_common_mesh(*fs: GraphLsc) -> Tuple[GraphLsc, ...]:
    mesh = common_mesh([f.mesh for f in fs])
    return tuple(f.refine(mesh) for f in fs)


def graph_sum(fs: Sequence[GraphLsc], where: Union[Mesh, MetricGraph]) -> GraphLsc:
    """Pointwise sum of a possibly empty sequence of functions."""
    total = GraphLsc.constant(where, 0)
    for f in fs:
        total = total + f
    return total


__all__ = ["GraphLsc", "graph_sum", "on_common_mesh"]
