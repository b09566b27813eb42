import functools
import logging

from typing import Any, Callable, Dict, Iterator, Tuple, Union

import attr

from ..circle import Arc, LambdaElement, StepLsc, chain_decomposition, proper_arcs
from ..circle import support_components
from ..circle.exceptions import ResolutionError
from .codomain import Codomain
from .exceptions import InconsistentValuationError

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def valuation_arcs(resolution: int) -> Tuple[Arc, ...]:
    """The connected generators of Lambda_n: every proper arc, then T."""
    return proper_arcs(resolution) + (Arc.full(resolution),)


def _validate_complete(instance, attribute: attr.Attribute, value: Dict[Arc, Any]):
    expected = valuation_arcs(instance.resolution)
    for arc in expected:
        if arc not in value:
            raise InconsistentValuationError("complete", str(arc), "missing value")
    if len(value) != len(expected):
        extra = next(arc for arc in value if arc.resolution != instance.resolution)
        raise InconsistentValuationError(
            "complete", str(extra), f"arc is not at resolution {instance.resolution}"
        )


@attr.s(frozen=True, slots=True)
class ArcValuation:
    """A Cu-morphism out of Lsc(T, N u {inf}) restricted to the test lattice Lambda_n.

    Values are stored on connected generators only (proper dyadic arcs and T) and
    extend to all of Lambda_n by additivity over connected components. Construction
    checks completeness only; :func:`validate` checks the remaining consistency
    conditions.

    Attributes:
        resolution (int): The exponent n of the lattice.
        codomain (Codomain): The target semigroup.
        values (Dict[Arc, Any]): The value of every arc of :func:`valuation_arcs`.
    """

    resolution: int = attr.ib()
    codomain: Codomain = attr.ib()
    values: Dict[Arc, Any] = attr.ib(converter=dict, validator=[_validate_complete])

    @classmethod
    def from_rule(
        cls, resolution: int, codomain: Codomain, rule: Callable[[Arc], Any]
    ) -> "ArcValuation":
        """Build a valuation by evaluating `rule` on every connected generator.

        Args:
            resolution (int): The exponent n.
            codomain (Codomain): The target semigroup; values are coerced into it.
            rule (Callable[[Arc], Any]): The value of each arc.

        Returns:
            ArcValuation: The (unvalidated) valuation.
        """
        return cls(
            resolution,
            codomain,
            {arc: codomain.coerce(rule(arc)) for arc in valuation_arcs(resolution)},
        )

    @property
    def unit(self) -> Any:
        return self.values[Arc.full(self.resolution)]

    def value(self, arc: Arc) -> Any:
        """The value of a connected arc given at this or a coarser resolution."""
        if arc.resolution > self.resolution:
            raise ResolutionError(
                f"arc at resolution {arc.resolution} is finer than the valuation "
                f"({self.resolution})"
            )
        return self.values[arc.refine(self.resolution)]

    def items(self) -> Iterator[Tuple[Arc, Any]]:
        for arc in valuation_arcs(self.resolution):
            yield arc, self.values[arc]

    def coarsen(self, resolution: int) -> "ArcValuation":
        """Restrict to Lambda_m for m <= n.

        Raises:
            ResolutionError: raised when `resolution` is finer than this valuation.
        """
        if resolution > self.resolution:
            raise ResolutionError(
                f"cannot coarsen resolution {self.resolution} up to {resolution}"
            )
        if resolution == self.resolution:
            return self
        return ArcValuation(
            resolution,
            self.codomain,
            {arc: self.value(arc) for arc in valuation_arcs(resolution)},
        )

    def same_as(self, other: "ArcValuation") -> bool:
        if self.resolution != other.resolution or self.codomain != other.codomain:
            return False
        return all(
            self.codomain.equal(value, other.values[arc]) for arc, value in self.items()
        )


def evaluate(alpha: ArcValuation, g: Union[LambdaElement, StepLsc, Arc, None]) -> Any:
    """Evaluate a valuation on an element of Lambda_n, or on a finite step function.

    Indicators are split into connected components and the component values are
    summed. Other finite functions are split into their open level sets first.

    Args:
        alpha (ArcValuation): The valuation.
        g (Union[LambdaElement, StepLsc, Arc, None]): The argument. `None` stands for
            the empty arc.

    Returns:
        Any: The codomain element.

    Raises:
        ResolutionError: raised when `g` lives on a finer grid than `alpha`.
    """
    codomain = alpha.codomain
    if g is None:
        return codomain.zero()
    if isinstance(g, Arc):
        return alpha.value(g)
    if isinstance(g, LambdaElement):
        components = g.components
    elif g.is_indicator():
        components = support_components(g)
    else:
        total = codomain.zero()
        for level in chain_decomposition(g):
            total = codomain.add(total, evaluate(alpha, level))
        return total
    total = codomain.zero()
    for component in components:
        total = codomain.add(total, alpha.value(component))
    return total


def _check_monotone(alpha: ArcValuation):
    n = alpha.resolution
    size = 1 << n
    codomain = alpha.codomain
    for arc in proper_arcs(n):
        if arc.span == size:
            larger = (Arc.full(n),)
        else:
            larger = (
                Arc(n, arc.start, arc.span + 1),
                Arc(n, (arc.start - 1) % size, arc.span + 1),
            )
        for other in larger:
            if not codomain.leq(alpha.values[arc], alpha.values[other]):
                raise InconsistentValuationError(
                    "monotone", str(arc), f"value exceeds the value on {other}"
                )


def _check_cover(alpha: ArcValuation):
    n = alpha.resolution
    codomain = alpha.codomain
    lhs = codomain.zero()
    rhs = alpha.unit
    for k in range(1, (1 << n) + 1):
        lhs = codomain.add(lhs, alpha.values[Arc.V(n, k)])
        rhs = codomain.add(rhs, alpha.values[Arc.U(n, k)])
    if not codomain.equal(lhs, rhs):
        raise InconsistentValuationError(
            "cover identity", "T", "sum over V_k differs from T plus the sum over U_k"
        )


def _check_superadditive(alpha: ArcValuation):
    n = alpha.resolution
    size = 1 << n
    codomain = alpha.codomain
    values = alpha.values
    for start in range(size):
        for left in range(1, size):
            a = values[Arc(n, start, left)]
            for right in range(1, size - left + 1):
                b = values[Arc(n, (start + left) % size, right)]
                hull = Arc(n, start, left + right)
                if not codomain.leq(codomain.add(a, b), values[hull]):
                    raise InconsistentValuationError(
                        "superadditive",
                        str(hull),
                        f"split after {left} arcs exceeds the value on the hull",
                    )


def _check_way_below(alpha: ArcValuation):
    codomain = alpha.codomain
    for arc in proper_arcs(alpha.resolution):
        wider = arc.neighborhood()
        if not codomain.way_below(alpha.values[arc], alpha.values[wider]):
            raise InconsistentValuationError(
                "way-below", str(arc), f"value is not way below the value on {wider}"
            )


def validate(alpha: ArcValuation) -> ArcValuation:
    """Check that arc data can be the restriction of a Cu-morphism to Lambda_n.

    The checks run in order: monotone, unital, cover identity (n >= 1, where V_k
    is defined), superadditivity across every breakpoint, and preservation of
    compact containment between an arc and its closed neighborhood.

    Args:
        alpha (ArcValuation): The valuation to check.

    Returns:
        ArcValuation: `alpha` itself.

    Raises:
        InconsistentValuationError: raised on the first violated condition, naming
            the condition and the arc.
    """
    _check_monotone(alpha)
    if not alpha.codomain.equal(alpha.unit, alpha.codomain.unit()):
        raise InconsistentValuationError(
            "unital", "T", f"value differs from the unit {alpha.codomain.unit()}"
        )
    if alpha.resolution >= 1:
        _check_cover(alpha)
    _check_superadditive(alpha)
    _check_way_below(alpha)
    logger.debug("valuation at resolution %d is consistent", alpha.resolution)
    return alpha


__all__ = ["ArcValuation", "evaluate", "validate", "valuation_arcs"]
