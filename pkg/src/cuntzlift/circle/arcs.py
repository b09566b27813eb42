import functools
import itertools

from fractions import Fraction
from typing import Iterator, Optional, Tuple

import attr

from .exceptions import ResolutionError
from .lsc import StepLsc


def _validate_nonnegative(instance, attribute: attr.Attribute, value: int):
    if not isinstance(value, int) or value < 0:
        raise ValueError(f"'{attribute.name}' must be a non-negative int, got {value}")


def _validate_start(instance, attribute: attr.Attribute, value: int):
    if not 0 <= value < (1 << instance.resolution):
        raise ValueError(f"arc start {value} outside the resolution grid")


def _validate_span(instance, attribute: attr.Attribute, value: int):
    size = 1 << instance.resolution
    if not 1 <= value <= size:
        raise ValueError(f"arc span {value} outside 1..{size}")
    if instance.whole and (instance.start != 0 or value != size):
        raise ValueError("the whole circle is stored with start 0 and full span")


@attr.s(frozen=True, slots=True, cache_hash=True)
class Arc:
    """A connected open dyadic subset of T: a proper open arc, or T itself.

    A proper arc covers `span` consecutive partition arcs starting at U_{start+1},
    together with the breakpoints between them. A proper arc with full span is T minus
    the breakpoint x_{start}.

    Attributes:
        resolution (int): The exponent n of the grid the arc lives on.
        start (int): Index of the first partition arc.
        span (int): Number of partition arcs, in 1..2^n.
        whole (bool): Whether this is the whole circle.
    """

    resolution: int = attr.ib(validator=[_validate_nonnegative])
    start: int = attr.ib(validator=[_validate_start])
    span: int = attr.ib(validator=[_validate_span])
    whole: bool = attr.ib(default=False)

    @classmethod
    def full(cls, resolution: int) -> "Arc":
        return cls(resolution, 0, 1 << resolution, whole=True)

    @classmethod
    def U(cls, resolution: int, k: int) -> "Arc":
        """The partition arc U_k, k in 1..2^n."""
        return cls(resolution, (k - 1) % (1 << resolution), 1)

    @classmethod
    def V(cls, resolution: int, k: int) -> "Arc":
        """V_k = U_k u {x_k} u U_{k+1}; at resolution 0 this is the whole circle."""
        if resolution == 0:
            return cls.full(0)
        return cls(resolution, (k - 1) % (1 << resolution), 2)

    @property
    def size(self) -> int:
        return 1 << self.resolution

    @property
    def length(self) -> Fraction:
        return Fraction(self.span, self.size)

    def cells(self) -> Tuple[int, ...]:
        """Cyclic cell indices covered by the arc."""
        total = 2 * self.size
        if self.whole:
            return tuple(range(total))
        return tuple((2 * self.start + j) % total for j in range(2 * self.span - 1))

    def closure_cells(self) -> Tuple[int, ...]:
        total = 2 * self.size
        if self.whole or self.span == self.size:
            return tuple(range(total))
        return tuple((2 * self.start - 1 + j) % total for j in range(2 * self.span + 1))

    def indicator(self) -> StepLsc:
        values = [0] * (2 * self.size)
        for c in self.cells():
            values[c] = 1
        return StepLsc.from_cells(self.resolution, values)

    def refine(self, resolution: int) -> "Arc":
        if resolution < self.resolution:
            raise ResolutionError(
                f"cannot refine resolution {self.resolution} down to {resolution}"
            )
        if self.whole:
            return Arc.full(resolution)
        factor = 1 << (resolution - self.resolution)
        return Arc(resolution, self.start * factor, self.span * factor)

    def coarsen(self, resolution: int) -> "Arc":
        """The same arc on a coarser grid; its endpoints must be grid points there."""
        if resolution > self.resolution:
            raise ResolutionError(
                f"cannot coarsen resolution {self.resolution} up to {resolution}"
            )
        if self.whole:
            return Arc.full(resolution)
        factor = 1 << (self.resolution - resolution)
        if self.start % factor or self.span % factor:
            raise ResolutionError(f"arc {self} does not lie on the resolution {resolution} grid")
        return Arc(resolution, self.start // factor, self.span // factor)

    def thicken(self, steps: int) -> "Arc":
        """Thicken by `steps` grid widths on both sides, at the same resolution."""
        if steps < 0:
            raise ValueError(f"thickening steps must be non-negative, got {steps}")
        if self.whole or steps == 0:
            return self
        span = self.span + 2 * steps
        if span > self.size:
            return Arc.full(self.resolution)
        return Arc(self.resolution, (self.start - steps) % self.size, span)

    def shrink(self, steps: int) -> Optional["Arc"]:
        """The open interior Int_r of the arc for r = `steps` grid widths.

        Returns `None` when nothing is left. The whole circle is its own interior.
        """
        if steps < 0:
            raise ValueError(f"shrinking steps must be non-negative, got {steps}")
        if self.whole or steps == 0:
            return self
        span = self.span - 2 * steps
        if span < 1:
            return None
        return Arc(self.resolution, (self.start + steps) % self.size, span)

    def neighborhood(self) -> "Arc":
        """The least arc h with the closure of this arc inside h."""
        return self.thicken(1)

    def contains(self, other: "Arc") -> bool:
        resolution = max(self.resolution, other.resolution)
        return set(other.refine(resolution).cells()) <= set(
            self.refine(resolution).cells()
        )

    def __str__(self) -> str:
        if self.whole:
            return "T"
        return f"({Fraction(self.start, self.size)}, +{self.length})"


@functools.lru_cache(maxsize=None)
def proper_arcs(resolution: int) -> Tuple[Arc, ...]:
    """All proper arcs at a resolution, ordered by start then span."""
    size = 1 << resolution
    return tuple(
        Arc(resolution, start, span)
        for start in range(size)
        for span in range(1, size + 1)
    )


def support_components(f: StepLsc) -> Tuple[Arc, ...]:
    """Connected components of the open support {f > 0}, in order of their start."""
    cells = f.cells()
    total = len(cells)
    inside = [v > 0 for v in cells]
    if all(inside):
        return (Arc.full(f.resolution),)
    if not any(inside):
        return ()
    first_gap = inside.index(False)
    components = []
    run_start = None
    run_length = 0
    for j in range(1, total + 1):
        c = (first_gap + j) % total
        if inside[c]:
            if run_start is None:
                run_start, run_length = c, 0
            run_length += 1
        elif run_start is not None:
            components.append(Arc(f.resolution, run_start // 2, (run_length + 1) // 2))
            run_start = None
    return tuple(sorted(components, key=lambda arc: arc.start))


def _validate_indicator(instance, attribute: attr.Attribute, value: StepLsc):
    if not value.is_indicator():
        raise ValueError("lambda elements are {0, 1}-valued")


@attr.s(frozen=True, slots=True)
class LambdaElement:
    """An element of the test lattice Lambda_n with its support components.

    Attributes:
        function (StepLsc): The {0, 1}-valued lsc indicator.
        components (Tuple[Arc, ...]): Connected components of its support.
    """

    function: StepLsc = attr.ib(validator=[_validate_indicator])
    components: Tuple[Arc, ...] = attr.ib(converter=tuple)

    @classmethod
    def from_function(cls, function: StepLsc) -> "LambdaElement":
        return cls(function, support_components(function))

    @property
    def resolution(self) -> int:
        return self.function.resolution


def lambda_generators(resolution: int) -> Iterator[LambdaElement]:
    """Enumerate every element of Lambda_n exactly once.

    An element is a choice of partition arcs plus, for each breakpoint whose two
    neighboring arcs are chosen, whether the breakpoint is included. The count grows
    like 2.618^(2^n): 3, 7, 47, 2207 for n = 0..3.

    Args:
        resolution (int): The exponent n >= 0.

    Yields:
        LambdaElement: Each lattice element with its support components.
    """
    if resolution < 0:
        raise ValueError(f"resolution must be non-negative, got {resolution}")
    size = 1 << resolution
    for arcs in itertools.product((0, 1), repeat=size):
        free = [i for i in range(size) if arcs[i] and arcs[(i + 1) % size]]
        for choice in itertools.product((0, 1), repeat=len(free)):
            points = [0] * size
            for i, included in zip(free, choice):
                points[i] = included
            yield LambdaElement.from_function(StepLsc(resolution, arcs, points))


__all__ = [
    "Arc",
    "LambdaElement",
    "lambda_generators",
    "proper_arcs",
    "support_components",
]
