import logging

from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple

import attr

from ..circle.exceptions import ResolutionError
from ..rational import to_fraction
from .codomain import CodomainKind
from .exceptions import CodomainError, IncomparableError, NotSettledError
from .metrics import Distance, dd_cu
from .valuation import ArcValuation, evaluate, valuation_arcs

logger = logging.getLogger(__name__)

#: Grid steps, at the common resolution of the terms, removed from both ends of an arc.
SHRINK_STEPS = 1


def cauchy_check(seq: Sequence[ArcValuation], C: Any, start: int = 1) -> bool:
    """Check the geometric bound dd_cu(a_{n-1}, a_n) <= C/2^n along a sequence.

    Args:
        seq (Sequence[ArcValuation]): The terms; `seq[i]` has index `start + i`.
        C (Any): The rational constant.
        start (int, optional): Index of the first term. Defaults to 1.

    Returns:
        bool: Whether every consecutive pair obeys the bound.
    """
    C = to_fraction(C)
    for i in range(1, len(seq)):
        index = start + i
        distance = dd_cu(seq[i - 1], seq[i])
        if distance.value > C / (1 << index):
            logger.info(
                "terms %d and %d are %s apart, above %s", index - 1, index, distance, C
            )
            return False
    return True


@attr.s(frozen=True, slots=True)
class CauchyLimit:
    """The limit of a Cauchy sequence of valuations.

    Attributes:
        limit (ArcValuation): The limit valuation at the target resolution.
        settled_resolution (int): The target resolution the tail settled at.
        tail_distances (Tuple[Distance, ...]): dd_cu from the limit to each tail term.
        error_bounds (Tuple[Fraction, ...]): C/2^i for each tail term of index i.
    """

    limit: ArcValuation = attr.ib()
    settled_resolution: int = attr.ib()
    tail_distances: Tuple[Distance, ...] = attr.ib(converter=tuple)
    error_bounds: Tuple[Fraction, ...] = attr.ib(converter=tuple)


def _tail_values(
    tail: Sequence[ArcValuation], target: int, common: int
) -> Optional[dict]:
    # the last two terms decide; earlier ones may still sit C/2^i away from the limit
    last = tail[-2:]
    values = {}
    for arc in valuation_arcs(target):
        inner = arc.refine(common).shrink(SHRINK_STEPS)
        first = evaluate(last[0], inner)
        for term in last[1:]:
            if not term.codomain.equal(evaluate(term, inner), first):
                return None
        values[arc] = first
    return values


def cauchy_limit(
    seq: Sequence[ArcValuation],
    C: Any,
    resolution: Optional[int] = None,
    start: int = 1,
) -> CauchyLimit:
    """Compute the limit of a Cauchy sequence of finite-dimensional valuations.

    The value on an arc U at the target resolution m is read on the interiors
    Int_{2/2^j}(U). They grow with j, so the supremum of the schedule is its finest
    level, one grid step of the common resolution R of the terms. The tail, the terms
    of index at least m, has settled on U when its last two terms agree there; a tail
    of one term is read as it is. Dropping a prefix of the sequence, with `start`
    moved accordingly, leaves the limit unchanged.

    Args:
        seq (Sequence[ArcValuation]): The terms; `seq[i]` has index `start + i`.
        C (Any): The Cauchy constant.
        resolution (int, optional): The target resolution m. Defaults to one less
            than the index of the last term, the finest target two terms speak for,
            capped at R - 2 so that the one-step interior of an arc keeps every grid
            point of resolution m + 1.
        start (int, optional): Index of the first term. Defaults to 1.

    Returns:
        CauchyLimit: The limit and its distances to the tail.

    Raises:
        CodomainError: raised for terms outside finite-dimensional codomains.
        IncomparableError: raised when the terms have different codomains.
        NotSettledError: raised when the sequence is not Cauchy or the tail disagrees
            at the target resolution; carries the deepest settled resolution.
    """
    if not seq:
        raise ValueError("cannot take the limit of an empty sequence")
    codomain = seq[0].codomain
    for term in seq:
        if term.codomain.kind != CodomainKind.FIN_DIM:
            raise CodomainError("limits are computed for finite-dimensional codomains")
        if term.codomain != codomain:
            raise IncomparableError("terms take values in different codomains")
    if not cauchy_check(seq, C, start):
        raise NotSettledError(None, f"sequence is not cauchy with constant {C}")

    common = min(term.resolution for term in seq)
    if resolution is None:
        resolution = max(min(start + len(seq) - 2, common - 2), 0)
    if resolution > common:
        raise ResolutionError(
            f"target resolution {resolution} is finer than the terms ({common})"
        )

    def tail_at(target: int) -> Sequence[ArcValuation]:
        return [term for i, term in enumerate(seq) if start + i >= target]

    tail = tail_at(resolution)
    values = _tail_values(tail, resolution, common) if tail else None
    if values is None:
        settled = None
        for target in range(resolution - 1, -1, -1):
            coarse_tail = tail_at(target)
            if coarse_tail and _tail_values(coarse_tail, target, common) is not None:
                settled = target
                break
        raise NotSettledError(
            settled, f"tail does not settle at resolution {resolution}"
        )

    limit = ArcValuation(resolution, codomain, values)
    first_index = start + len(seq) - len(tail)
    distances = tuple(dd_cu(limit, term) for term in tail)
    bounds = tuple(
        to_fraction(C) / (1 << (first_index + j)) for j in range(len(tail))
    )
    logger.info(
        "limit settled at resolution %d over %d tail terms", resolution, len(tail)
    )
    return CauchyLimit(limit, resolution, distances, bounds)


__all__ = ["CauchyLimit", "SHRINK_STEPS", "cauchy_check", "cauchy_limit"]
