import logging

from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple

import attr

from ..circle import Angle
from ..morphisms import d_cu
from ..rational import dyadic_exponent, to_fraction
from .counting import cu_of_unitary
from .exceptions import DimensionMismatchError, FullSpectrumError
from .unitary import DiagonalUnitary

logger = logging.getLogger(__name__)


def log_transfer(u: DiagonalUnitary, gap: Any) -> Tuple[Fraction, ...]:
    """Take the logarithm of u that avoids the spectral gap.

    Every angle is lifted into the window (gap, gap + 1), so that e^{2 i pi h} = u
    for the self-adjoint diag(h).

    Args:
        u (DiagonalUnitary): The unitary, with no eigenvalue at `gap`.
        gap (Any): The gap angle.

    Returns:
        Tuple[Fraction, ...]: The lifts, in the order of `u.angles`.

    Raises:
        FullSpectrumError: raised when `gap` is an eigenvalue of u.
    """
    gap = to_fraction(gap)
    lifts = []
    for a in u.angles:
        if a == Angle(gap):
            raise FullSpectrumError(f"{gap} is an eigenvalue, there is no gap there")
        lift = a.value
        while lift <= gap:
            lift += 1
        while lift > gap + 1:
            lift -= 1
        lifts.append(lift)
    return tuple(lifts)


def self_adjoint_distance(h: Sequence[Any], k: Sequence[Any]) -> Fraction:
    """The Cu-distance of diag(h) and diag(k): the largest gap between sorted entries."""
    h = sorted(to_fraction(x) for x in h)
    k = sorted(to_fraction(x) for x in k)
    if len(h) != len(k):
        raise DimensionMismatchError(f"cannot compare {len(h)} entries with {len(k)}")
    return max((abs(a - b) for a, b in zip(h, k)), default=Fraction(0))


def free_arc_length(u: DiagonalUnitary, v: DiagonalUnitary, gap: Any) -> Fraction:
    """Length of the arc around `gap` that meets neither spectrum."""
    gap = to_fraction(gap) % 1
    angles = {a.value for a in u.angles + v.angles}
    if gap in angles:
        raise FullSpectrumError(f"{gap} is an eigenvalue, there is no gap there")
    above = min((a - gap) % 1 for a in angles)
    below = min((gap - a) % 1 for a in angles)
    return above + below


@attr.s(frozen=True, slots=True)
class TransferComparison:
    """Both sides of the exp/log transfer for two unitaries sharing a gap.

    Attributes:
        gap (Fraction): The common gap angle.
        unitary (Fraction): d_cu of the Cu valuations of u and v.
        self_adjoint (Fraction): The distance of their logarithms.
        free_arc (Fraction): The length of the spectrum-free arc around the gap.
    """

    gap: Fraction = attr.ib(converter=to_fraction)
    unitary: Fraction = attr.ib()
    self_adjoint: Fraction = attr.ib()
    free_arc: Fraction = attr.ib()

    @property
    def margin_holds(self) -> bool:
        return self.free_arc > self.unitary

    @property
    def equal(self) -> bool:
        return self.unitary == self.self_adjoint


def transfer_comparison(
    u: DiagonalUnitary, v: DiagonalUnitary, gap: Any, resolution: Optional[int] = None
) -> TransferComparison:
    """Compare u and v through their Cu valuations and through their logarithms at `gap`.

    The unitary side is d_cu of the valuations on Lambda_n. It never exceeds the
    self-adjoint side, and the two agree when the free arc around the gap is longer
    than the unitary distance.

    Args:
        u (DiagonalUnitary): The first unitary.
        v (DiagonalUnitary): The second unitary.
        gap (Any): An angle in neither spectrum.
        resolution (int, optional): The resolution n of the valuations. Defaults to the
            finest grid holding every eigenvalue of u and v.

    Raises:
        DimensionMismatchError: raised when the block sizes differ.
        FullSpectrumError: raised when either unitary has an eigenvalue at `gap`.
        NonDyadicError: raised, without a resolution, for eigenvalues off every grid.
    """
    if u.dimensions != v.dimensions:
        raise DimensionMismatchError(f"block sizes {u.dimensions} and {v.dimensions} differ")
    if resolution is None:
        resolution = max([1] + [dyadic_exponent(a.value) for a in u.angles + v.angles])
    unitary = d_cu(cu_of_unitary(u, resolution), cu_of_unitary(v, resolution)).value
    self_adjoint = max(
        self_adjoint_distance(log_transfer(u.block(i), gap), log_transfer(v.block(i), gap))
        for i in range(len(u.blocks))
    )
    result = TransferComparison(gap, unitary, self_adjoint, free_arc_length(u, v, gap))
    logger.debug(
        "transfer at %s on Lambda_%d: unitary %s, self-adjoint %s",
        result.gap,
        resolution,
        unitary,
        self_adjoint,
    )
    return result


__all__ = [
    "TransferComparison",
    "free_arc_length",
    "log_transfer",
    "self_adjoint_distance",
    "transfer_comparison",
]
