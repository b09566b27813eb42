from enum import Enum
from typing import Any, Tuple, Union
from typing_extensions import Protocol

import attr

from ..graph import GraphLsc, MetricGraph
from ..graph import way_below as graph_way_below
from ..rational import to_extended
from ..types import INF
from .cuz import CuZElement
from .exceptions import CodomainError


class CodomainKind(Enum):
    """Enumeration of the supported target semigroups."""

    FIN_DIM = "findim"  #: N^r, the Cuntz semigroup of a finite-dimensional algebra.
    GRAPH = "graph"  #: Lsc(X, N) bounded by d, for M_d(C(X)) over a metric graph X.
    JIANG_SU = "jiang_su"  #: Cu(Z) = N u (0, inf].

    @classmethod
    def from_str(cls, name: str) -> "CodomainKind":
        lower = name.lower().replace("-", "_")
        for kind in cls:
            if lower == kind.value:
                return kind
        raise ValueError(f"unknown codomain kind '{name}'")


class Codomain(Protocol):
    """Protocol for the ordered monoids arc valuations take values in.

    Implementations know their zero and unit, decide the order and compact
    containment, add elements, and coerce raw input to canonical elements.
    """

    kind: CodomainKind

    def zero(self) -> Any:
        ...

    def unit(self) -> Any:
        """The class of the unit of the target algebra."""
        ...

    def coerce(self, value: Any) -> Any:
        """Convert `value` to an element, raising `CodomainError` if impossible."""
        ...

    def leq(self, a: Any, b: Any) -> bool:
        ...

    def add(self, a: Any, b: Any) -> Any:
        ...

    def way_below(self, a: Any, b: Any) -> bool:
        ...

    def equal(self, a: Any, b: Any) -> bool:
        ...


def _validate_blocks(instance, attribute: attr.Attribute, value: Tuple[int, ...]):
    if not value:
        raise CodomainError("a finite-dimensional codomain needs at least one block")
    for d in value:
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            raise CodomainError(f"block sizes must be positive ints, got {d}")


@attr.s(frozen=True, slots=True)
class FinDim:
    """N^r with the componentwise order, for M_{d_1} + ... + M_{d_r}.

    Attributes:
        blocks (Tuple[int, ...]): The matrix sizes d_1, ..., d_r.
    """

    blocks: Tuple[int, ...] = attr.ib(converter=tuple, validator=[_validate_blocks])
    kind: CodomainKind = attr.ib(default=CodomainKind.FIN_DIM, init=False)

    @property
    def rank(self) -> int:
        return len(self.blocks)

    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.rank

    def unit(self) -> Tuple[int, ...]:
        return self.blocks

    def coerce(self, value: Any) -> Tuple[int, ...]:
        if isinstance(value, int) and not isinstance(value, bool) and self.rank == 1:
            value = (value,)
        try:
            out = tuple(to_extended(v) for v in value)
        except (TypeError, ValueError) as e:
            raise CodomainError(f"'{value}' is not an element of n^{self.rank}") from e
        if len(out) != self.rank:
            raise CodomainError(f"expected {self.rank} components, got {len(out)}")
        return out

    def leq(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def add(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(x + y for x, y in zip(a, b))

    def way_below(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> bool:
        return INF not in a and self.leq(a, b)

    def equal(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> bool:
        return tuple(a) == tuple(b)


def _validate_dimension(instance, attribute: attr.Attribute, value: int):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise CodomainError(f"'{attribute.name}' must be a positive int, got {value}")


@attr.s(frozen=True, slots=True)
class Graph:
    """Lsc(X, N) bounded by d, the Cuntz semigroup of M_d(C(X)) for a metric graph X.

    Attributes:
        graph (MetricGraph): The spectrum X.
        dimension (int): The matrix size d.
    """

    graph: MetricGraph = attr.ib()
    dimension: int = attr.ib(validator=[_validate_dimension])
    kind: CodomainKind = attr.ib(default=CodomainKind.GRAPH, init=False)

    def zero(self) -> GraphLsc:
        return GraphLsc.constant(self.graph, 0)

    def unit(self) -> GraphLsc:
        return GraphLsc.constant(self.graph, self.dimension)

    def coerce(self, value: Any) -> GraphLsc:
        if not isinstance(value, GraphLsc):
            raise CodomainError(f"expected a graph function, got {type(value).__name__}")
        if value.graph != self.graph:
            raise CodomainError("graph function lives on a different graph")
        if not value.is_finite() or value.max_value() > self.dimension:
            raise CodomainError(
                f"graph function exceeds the matrix size {self.dimension}"
            )
        return value.simplified()

    def leq(self, a: GraphLsc, b: GraphLsc) -> bool:
        return a <= b

    def add(self, a: GraphLsc, b: GraphLsc) -> GraphLsc:
        return a + b

    def way_below(self, a: GraphLsc, b: GraphLsc) -> bool:
        return graph_way_below(a, b)

    def equal(self, a: GraphLsc, b: GraphLsc) -> bool:
        return a.same_as(b)


@attr.s(frozen=True, slots=True)
class JiangSu:
    """Cu(Z) with its mixed compact/soft order; the unit is the compact 1."""

    kind: CodomainKind = attr.ib(default=CodomainKind.JIANG_SU, init=False)

    def zero(self) -> CuZElement:
        return CuZElement.zero()

    def unit(self) -> CuZElement:
        return CuZElement.compact(1)

    def coerce(self, value: Any) -> CuZElement:
        if not isinstance(value, CuZElement):
            raise CodomainError(f"expected a cu(z) element, got {type(value).__name__}")
        return value

    def leq(self, a: CuZElement, b: CuZElement) -> bool:
        return a <= b

    def add(self, a: CuZElement, b: CuZElement) -> CuZElement:
        return a + b

    def way_below(self, a: CuZElement, b: CuZElement) -> bool:
        return a.way_below(b)

    def equal(self, a: CuZElement, b: CuZElement) -> bool:
        return a == b


def new(kind: Union[CodomainKind, str], **params: Any) -> Codomain:
    """Create a codomain of the given kind.

    Args:
        kind (Union[CodomainKind, str]): The codomain kind.
        **params: `blocks` for finite-dimensional codomains; `graph` and `dimension`
            for graph codomains; nothing for the Jiang-Su codomain.

    Returns:
        Codomain: The codomain.
    """
    if isinstance(kind, str):
        kind = CodomainKind.from_str(kind)

    if kind == CodomainKind.FIN_DIM:
        return FinDim(params["blocks"])
    elif kind == CodomainKind.GRAPH:
        return Graph(params["graph"], params["dimension"])
    else:
        return JiangSu()


__all__ = ["Codomain", "CodomainKind", "FinDim", "Graph", "JiangSu", "new"]
