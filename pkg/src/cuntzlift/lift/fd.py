import logging

from typing import List, Tuple

from ..circle import Arc, DyadicPartition
from ..morphisms import ArcValuation, CodomainKind, validate
from ..morphisms.exceptions import CodomainError, InconsistentValuationError
from ..spectral import DiagonalUnitary
from ..types import INF

logger = logging.getLogger(__name__)


def _component(alpha: ArcValuation, arc: Arc, block: int) -> int:
    value = alpha.value(arc)[block]
    if value == INF:
        raise CodomainError(f"value on {arc} is infinite")
    return value


def multiplicities(alpha: ArcValuation, block: int = 0) -> Tuple[List[int], List[int]]:
    """The center and breakpoint multiplicities of one block of a fill-up.

    q_k = alpha(U_k) and r_k = alpha(V_k) - alpha(U_k) - alpha(U_{k+1}) for
    k = 1..2^n. At n = 0 the only breakpoint x_0 takes the d - q_1 entries left over.

    Raises:
        InconsistentValuationError: raised when some r_k is negative, or the
            multiplicities do not add up to alpha(T).
    """
    n = alpha.resolution
    size = 1 << n
    d = _component(alpha, Arc.full(n), block)
    q = [_component(alpha, Arc.U(n, k), block) for k in range(1, size + 1)]
    if n == 0:
        r = [d - q[0]]
    else:
        r = [
            _component(alpha, Arc.V(n, k), block) - q[k - 1] - q[k % size]
            for k in range(1, size + 1)
        ]
    for k, count in enumerate(r, start=1):
        if count < 0:
            raise InconsistentValuationError(
                "breakpoint multiplicity",
                str(Arc.V(n, k)),
                f"block {block} needs {count} entries at x_{k % size}",
            )
    if sum(q) + sum(r) != d:
        raise InconsistentValuationError(
            "cover identity",
            "T",
            f"block {block} fills {sum(q) + sum(r)} entries instead of {d}",
        )
    return q, r


def fill_up(alpha: ArcValuation) -> DiagonalUnitary:
    """Lift a finite-dimensional valuation to a diagonal unitary agreeing with it on Lambda_n.

    Every block gets q_k copies of the center c_k of U_k and r_k copies of the
    breakpoint x_k, in arc order with centers first.

    Args:
        alpha (ArcValuation): A validated valuation into N^r.

    Returns:
        DiagonalUnitary: u with Cu(phi_u) = alpha on Lambda_n.

    Raises:
        CodomainError: raised for codomains other than N^r, or infinite values.
        InconsistentValuationError: raised when the multiplicities are inconsistent.
    """
    if alpha.codomain.kind != CodomainKind.FIN_DIM:
        raise CodomainError(f"cannot fill up a valuation into {alpha.codomain.kind.value}")
    partition = DyadicPartition(alpha.resolution)
    blocks = []
    for block in range(len(alpha.codomain.blocks)):
        q, r = multiplicities(alpha, block)
        angles = []
        for k in range(1, partition.size + 1):
            angles.extend([partition.center(k)] * q[k - 1])
            angles.extend([partition.breakpoint(k)] * r[k - 1])
        blocks.append(angles)
    u = DiagonalUnitary(blocks)
    logger.debug("filled up %s at resolution %d", u.dimensions, alpha.resolution)
    return u


def lift_sequence(alpha: ArcValuation, n_max: int) -> List[DiagonalUnitary]:
    """Lift the restrictions of alpha to Lambda_1, ..., Lambda_m.

    m is `n_max`, capped at the resolution of alpha. Each restriction is validated
    before it is filled up.

    Raises:
        InconsistentValuationError: raised with the failing resolution in its message.
    """
    top = min(n_max, alpha.resolution)
    out = []
    for n in range(1, top + 1):
        try:
            out.append(fill_up(validate(alpha.coarsen(n))))
        except InconsistentValuationError as e:
            raise InconsistentValuationError(
                e.invariant, e.index, f"at resolution {n}"
            ) from e
    logger.info("lifted %d resolutions", len(out))
    return out


__all__ = ["fill_up", "lift_sequence", "multiplicities"]
