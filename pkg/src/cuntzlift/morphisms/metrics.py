import logging

from fractions import Fraction
from typing import Union

import attr

from ..circle import lambda_generators
from ..circle import way_below as circle_way_below
from ..circle.exceptions import ResolutionError
from ..rational import format_rational
from ..types import INF
from .exceptions import IncomparableError
from .valuation import ArcValuation, evaluate, valuation_arcs

logger = logging.getLogger(__name__)


@attr.s(frozen=True, slots=True)
class Distance:
    """A distance between two valuations, computed at a finite resolution.

    Attributes:
        value (Union[Fraction, float]): The distance, `math.inf` when none exists.
        resolution (int): The finest resolution the two valuations were tested at.
        exact (bool): `False` when the valuations compare at every tested resolution
            without agreeing, so that `value` is only an upper bound. Equal valuations
            report 0 with `exact` set.
    """

    value: Union[Fraction, float] = attr.ib()
    resolution: int = attr.ib()
    exact: bool = attr.ib(default=True)

    def __str__(self) -> str:
        text = format_rational(self.value)
        return text if self.exact else f"<= {text}"


def _common_resolution(alpha: ArcValuation, beta: ArcValuation) -> int:
    if alpha.codomain != beta.codomain:
        raise IncomparableError("valuations take values in different codomains")
    return min(alpha.resolution, beta.resolution)


def compare_on_lambda(
    alpha: ArcValuation, beta: ArcValuation, n: int, exhaustive: bool = False
) -> bool:
    """Decide whether two valuations compare on Lambda_n.

    They compare when alpha(g) <= beta(h) and beta(g) <= alpha(h) for all g << h in
    Lambda_n. For consistent valuations it is enough to test each connected
    generator against its least compact neighborhood; `exhaustive` tests every pair
    of lattice elements instead, which is practical up to n = 2.

    Args:
        alpha (ArcValuation): The first valuation.
        beta (ArcValuation): The second valuation.
        n (int): The lattice resolution.
        exhaustive (bool, optional): Whether to enumerate all pairs. Defaults to
            `False`.

    Returns:
        bool: Whether the valuations compare on Lambda_n.

    Raises:
        IncomparableError: raised when the codomains differ.
        ResolutionError: raised when either valuation is coarser than `n`.
    """
    if n > _common_resolution(alpha, beta):
        raise ResolutionError(f"valuations are not given on lambda_{n}")
    alpha = alpha.coarsen(n)
    beta = beta.coarsen(n)
    leq = alpha.codomain.leq
    if exhaustive:
        elements = list(lambda_generators(n))
        for g in elements:
            for h in elements:
                if not circle_way_below(g.function, h.function):
                    continue
                if not leq(evaluate(alpha, g), evaluate(beta, h)):
                    return False
                if not leq(evaluate(beta, g), evaluate(alpha, h)):
                    return False
        return True
    for arc in valuation_arcs(n):
        wider = arc.neighborhood()
        if not leq(alpha.values[arc], beta.values[wider]):
            return False
        if not leq(beta.values[arc], alpha.values[wider]):
            return False
    return True


def dd_cu(alpha: ArcValuation, beta: ArcValuation) -> Distance:
    """The discrete Cu-semimetric: inf{1/2^n : alpha and beta compare on Lambda_n}.

    Resolutions are scanned upwards from 0 up to the common resolution M. When the
    valuations still compare at M they either agree there (distance 0) or the
    result 1/2^M is reported as an upper bound.

    Raises:
        IncomparableError: raised when the codomains differ.
    """
    top = _common_resolution(alpha, beta)
    settled = None
    for n in range(top + 1):
        if not compare_on_lambda(alpha, beta, n):
            break
        settled = n
    if settled is None:
        distance = Distance(INF, 0)
    elif settled < top:
        distance = Distance(Fraction(1, 1 << settled), settled)
    elif alpha.coarsen(top).same_as(beta.coarsen(top)):
        distance = Distance(Fraction(0), top)
    else:
        distance = Distance(Fraction(1, 1 << top), top, exact=False)
    logger.info("dd_cu = %s", distance)
    return distance


def _thickened_compare(alpha: ArcValuation, beta: ArcValuation, steps: int) -> bool:
    leq = alpha.codomain.leq
    for arc in valuation_arcs(alpha.resolution):
        wider = arc.thicken(steps)
        if not leq(alpha.values[arc], beta.values[wider]):
            return False
        if not leq(beta.values[arc], alpha.values[wider]):
            return False
    return True


def d_cu(alpha: ArcValuation, beta: ArcValuation) -> Distance:
    """The Cu-metric: the least grid radius r with alpha(U) <= beta(U_r) and back.

    Radii r = m/2^M are tested on every connected arc U at the common resolution M,
    where U_r is the open r-neighborhood of U. The condition is monotone in r, so the
    least radius is found by bisection.

    Raises:
        IncomparableError: raised when the codomains differ.
    """
    top = _common_resolution(alpha, beta)
    alpha = alpha.coarsen(top)
    beta = beta.coarsen(top)
    size = 1 << top
    # every proper arc thickens to T at this many steps
    lo, hi = 0, (size + 1) // 2
    if not _thickened_compare(alpha, beta, hi):
        distance = Distance(INF, top)
    else:
        while lo < hi:
            mid = (lo + hi) // 2
            if _thickened_compare(alpha, beta, mid):
                hi = mid
            else:
                lo = mid + 1
        distance = Distance(Fraction(lo, size), top)
    logger.info("d_cu = %s", distance)
    return distance


__all__ = ["Distance", "compare_on_lambda", "d_cu", "dd_cu"]
