import logging

from typing import Any, Iterable, Sequence, Tuple

import attr

from ..exceptions import NonDyadicError
from ..rational import dyadic_exponent, to_extended, to_fraction
from ..types import INF, Extended
from .angle import DyadicPartition
from .exceptions import LscViolationError, ResolutionError, UnboundedValueError

logger = logging.getLogger(__name__)


def _to_values(values: Iterable[Any]) -> Tuple[Extended, ...]:
    return tuple(to_extended(v) for v in values)


def _validate_resolution(instance, attribute: attr.Attribute, value: int):
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ValueError(f"'{attribute.name}' must be a non-negative int, got {value}")


def _validate_length(instance, attribute: attr.Attribute, value: Tuple[Extended, ...]):
    expected = 1 << instance.resolution
    if len(value) != expected:
        raise ValueError(
            f"'{attribute.name}' must hold {expected} values at resolution "
            f"{instance.resolution}, got {len(value)}"
        )


def _validate_lsc(instance, attribute: attr.Attribute, value: Tuple[Extended, ...]):
    arcs = instance.arc_values
    size = len(arcs)
    for i, v in enumerate(value):
        bound = min(arcs[i], arcs[(i + 1) % size])
        if v > bound:
            raise LscViolationError(
                f"breakpoint {i + 1} has value {v} above its neighboring arcs ({bound})"
            )


@attr.s(frozen=True, slots=True, order=False)
class StepLsc:
    """A lower semicontinuous N u {inf}-valued step function on T.

    The function is constant on each open arc of the resolution-n dyadic partition and
    takes an explicit value at each breakpoint. Cell indexing follows
    :class:`DyadicPartition`.

    Equality is structural. Use :meth:`same_as` to compare functions given at different
    resolutions; `<=` and `+` refine to a common resolution first.

    Attributes:
        resolution (int): The exponent n; there are 2^n arcs.
        arc_values (Tuple): `arc_values[i]` is the value on U_{i+1}.
        point_values (Tuple): `point_values[i]` is the value at x_{i+1}.
    """

    resolution: int = attr.ib(validator=[_validate_resolution])
    arc_values: Tuple[Extended, ...] = attr.ib(
        converter=_to_values, validator=[_validate_length]
    )
    point_values: Tuple[Extended, ...] = attr.ib(
        converter=_to_values, validator=[_validate_length, _validate_lsc]
    )

    @classmethod
    def constant(cls, resolution: int, value: Any) -> "StepLsc":
        size = 1 << resolution
        return cls(resolution, [value] * size, [value] * size)

    @classmethod
    def zero(cls, resolution: int = 0) -> "StepLsc":
        return cls.constant(resolution, 0)

    @classmethod
    def from_cells(cls, resolution: int, cells: Sequence[Any]) -> "StepLsc":
        """Build a function from its 2 * 2^n cell values in cyclic cell order."""
        return cls(resolution, cells[0::2], cells[1::2])

    @property
    def size(self) -> int:
        return 1 << self.resolution

    @property
    def partition(self) -> DyadicPartition:
        return DyadicPartition(self.resolution)

    def cells(self) -> Tuple[Extended, ...]:
        out = []
        for a, p in zip(self.arc_values, self.point_values):
            out.append(a)
            out.append(p)
        return tuple(out)

    def value_at(self, angle: Any) -> Extended:
        return self.cells()[self.partition.locate(angle)]

    def refine(self, resolution: int) -> "StepLsc":
        """Return the same function expressed at a finer resolution.

        Raises:
            ResolutionError: raised when `resolution` is coarser than this function.
        """
        if resolution < self.resolution:
            raise ResolutionError(
                f"cannot refine resolution {self.resolution} down to {resolution}"
            )
        if resolution == self.resolution:
            return self
        factor = 1 << (resolution - self.resolution)
        arcs = []
        points = []
        for a, p in zip(self.arc_values, self.point_values):
            arcs.extend([a] * factor)
            points.extend([a] * (factor - 1))
            points.append(p)
        return StepLsc(resolution, arcs, points)

    def coarsen(self, resolution: int) -> "StepLsc":
        """Return the same function at a coarser resolution.

        Raises:
            ResolutionError: raised when `resolution` is finer than this function, or
                when the function is not constant on the coarse arcs.
        """
        if resolution > self.resolution:
            raise ResolutionError(
                f"cannot coarsen resolution {self.resolution} up to {resolution}"
            )
        factor = 1 << (self.resolution - resolution)
        cells = self.cells()
        arcs = []
        points = []
        for i in range(1 << resolution):
            block = cells[2 * i * factor : 2 * (i + 1) * factor - 1]
            if len(set(block)) != 1:
                raise ResolutionError(
                    f"function is not constant on arc {i + 1} at resolution {resolution}"
                )
            arcs.append(block[0])
            points.append(cells[2 * (i + 1) * factor - 1])
        return StepLsc(resolution, arcs, points)

    def same_as(self, other: "StepLsc") -> bool:
        f, g = common_resolution(self, other)
        return f.cells() == g.cells()

    def __le__(self, other: "StepLsc") -> bool:
        f, g = common_resolution(self, other)
        return all(a <= b for a, b in zip(f.cells(), g.cells()))

    def __add__(self, other: "StepLsc") -> "StepLsc":
        f, g = common_resolution(self, other)
        return StepLsc.from_cells(
            f.resolution, [a + b for a, b in zip(f.cells(), g.cells())]
        )

    def max_value(self) -> Extended:
        return max(self.arc_values)

    def is_finite(self) -> bool:
        return INF not in self.arc_values

    def is_indicator(self) -> bool:
        return all(v in (0, 1) for v in self.arc_values)

    def level_set(self, level: int) -> "StepLsc":
        """Indicator of the open set W_l = f^{-1}((l - 1, inf])."""
        return StepLsc.from_cells(
            self.resolution, [1 if v >= level else 0 for v in self.cells()]
        )

    def support(self) -> "StepLsc":
        return self.level_set(1)


def common_resolution(f: StepLsc, g: StepLsc) -> Tuple[StepLsc, StepLsc]:
    resolution = max(f.resolution, g.resolution)
    return f.refine(resolution), g.refine(resolution)


def _closure_cells(f: StepLsc) -> Tuple[Extended, ...]:
    # A breakpoint lies in the closure of a level set iff a neighboring arc does.
    cells = f.cells()
    total = len(cells)
    out = list(cells)
    for c in range(1, total, 2):
        out[c] = max(cells[c - 1], cells[(c + 1) % total])
    return tuple(out)


def way_below(f: StepLsc, g: StepLsc) -> bool:
    """Decide f << g in Lsc(T, N u {inf}).

    This holds iff f is finite and, for every level l >= 1, the closure of
    f^{-1}((l - 1, inf]) lies inside g^{-1}((l - 1, inf]).

    Args:
        f (StepLsc): The candidate small element.
        g (StepLsc): The candidate large element.

    Returns:
        bool: Whether f is way below g.
    """
    f, g = common_resolution(f, g)
    if not f.is_finite():
        return False
    return all(a <= b for a, b in zip(_closure_cells(f), g.cells()))


def thicken(f: StepLsc, r: Any) -> StepLsc:
    """Thicken every level set of `f` by the open radius `r`.

    The result g satisfies g^{-1}((l - 1, inf]) = (W_l)_r with
    U_r = union of the open balls B_r(x), x in U.

    Args:
        f (StepLsc): The function to thicken.
        r (Any): A non-negative dyadic rational radius.

    Returns:
        StepLsc: The thickened function, at resolution max(n, p) for r = m/2^p.

    Raises:
        ResolutionError: raised when `r` is not dyadic.
        ValueError: raised when `r` is negative.
    """
    r = to_fraction(r)
    if r < 0:
        raise ValueError(f"thickening radius must be non-negative, got {r}")
    if r == 0:
        return f
    try:
        p = dyadic_exponent(r)
    except NonDyadicError as e:
        raise ResolutionError(f"thickening radius '{r}' is not on a dyadic grid") from e
    f = f.refine(max(f.resolution, p))
    steps = int(r * f.size)
    cells = f.cells()
    total = len(cells)
    out = []
    for c in range(total):
        reach = 2 * steps if c % 2 == 0 else 2 * steps - 1
        if 2 * reach + 1 >= total:
            out.append(max(cells))
        else:
            out.append(max(cells[(c + j) % total] for j in range(-reach, reach + 1)))
    return StepLsc.from_cells(f.resolution, out)


def chain_decomposition(f: StepLsc) -> Tuple[StepLsc, ...]:
    """Return the decreasing open level sets (1_{W_1}, ..., 1_{W_M}) of `f`.

    Raises:
        UnboundedValueError: raised when `f` attains infinity.
    """
    if not f.is_finite():
        raise UnboundedValueError("chain decomposition needs a finite-valued function")
    return tuple(f.level_set(level) for level in range(1, f.max_value() + 1))


__all__ = ["StepLsc", "chain_decomposition", "common_resolution", "thicken", "way_below"]
