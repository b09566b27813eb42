"""Unitaries that agree on Cu but are told apart by their determinants.

Both constructions live in limit algebras and are run at finite truncation levels:
the pair 1 (x) w and e^{2 i pi t} (x) w over [0, 1] with w the limit of the roots of
unity w_n, and the exponentials of positive elements a_k of the Jiang-Su algebra
with spectrum (0, k] and uniform spectral measure.
"""
import logging

from fractions import Fraction
from typing import Any, Optional, Tuple

import attr

from ..circle import Arc, LambdaElement, lambda_generators, proper_arcs, thicken
from ..graph import GraphLsc, MetricGraph, Point
from ..morphisms import ArcValuation, CuZElement, JiangSu, compare_on_lambda
from ..morphisms import dd_cu, evaluate
from ..rational import format_rational
from ..spectral import DiagonalUnitary, TrackPiece, UnitaryField, cu_of_unitary
from ..spectral import matching_distance
from .winding import Certificate, aue_obstruction, lattice_certificate

logger = logging.getLogger(__name__)

#: Levels up to which the component bound runs over all of Lambda_n.
EXHAUSTIVE_LEVEL = 2

#: How many levels past n the tower bound is checked for.
TOWER_DEPTH = 3


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    return str(value)


@attr.s(frozen=True, slots=True)
class Check:
    """One verified claim: the bound asserted and the value computed.

    Attributes:
        name (str): What was checked.
        claimed_bound (str): The asserted bound or outcome.
        computed_value (str): The value found.
        passed (bool): Whether the computed value meets the claim.
    """

    name: str = attr.ib()
    claimed_bound: str = attr.ib(converter=_fmt)
    computed_value: str = attr.ib(converter=_fmt)
    passed: bool = attr.ib()


@attr.s(frozen=True, slots=True)
class Report:
    """The outcome of a demo run.

    Attributes:
        name (str): The demo.
        checks (Tuple[Check, ...]): Every claim checked, in order.
        verdict (str, optional): The classification outcome, where there is one.
        certificate (Certificate, optional): The determinant obstruction found.
        notes (Tuple[str, ...]): Remarks on what was not computed.
    """

    name: str = attr.ib()
    checks: Tuple[Check, ...] = attr.ib(converter=tuple)
    verdict: Optional[str] = attr.ib(default=None)
    certificate: Optional[Certificate] = attr.ib(default=None)
    notes: Tuple[str, ...] = attr.ib(converter=tuple, default=())

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> Tuple[Check, ...]:
        return tuple(check for check in self.checks if not check.passed)


def obstruction_pair(n: int) -> Tuple[UnitaryField, UnitaryField]:
    """u_n = 1 (x) w_n and v_n = e^{2 i pi t} (x) w_n over [0, 1], of size 2^n."""
    interval = MetricGraph.interval()
    size = 1 << n
    angles = [Fraction(j, size) for j in range(size)]
    u = UnitaryField.constant(interval, angles)
    v = UnitaryField(
        interval,
        size,
        {"0": angles, "1": angles},
        [[[TrackPiece(0, 1, a, a + 1)] for a in angles]],
    )
    return u, v


def tower_distance(n: int, m: int) -> Fraction:
    """The matching distance between w_m and the image of w_n in M_{2^m}."""
    if not 0 <= n <= m:
        raise ValueError(f"need 0 <= n <= m, got n = {n} and m = {m}")
    fine = DiagonalUnitary.roots_of_unity(m)
    coarse = DiagonalUnitary.roots_of_unity(n).amplify(1 << (m - n))
    return matching_distance(fine, coarse)


def _component_bound(alpha: ArcValuation, beta: ArcValuation, n: int) -> bool:
    # g(t) <= g(0) + k <= h(t) for g << h, with k the support components of g
    graph = alpha.codomain.graph
    origin = Point.at_vertex(graph.vertices[0])
    if n <= EXHAUSTIVE_LEVEL:
        elements = [g for g in lambda_generators(n) if g.components != (Arc.full(n),)]
    else:
        elements = [LambdaElement.from_function(arc.indicator()) for arc in proper_arcs(n)]
    for g in elements:
        h = thicken(g.function, Fraction(1, 1 << n))
        k = len(g.components)
        at_origin = evaluate(alpha, g).value_at(origin)
        if evaluate(beta, g).value_at(origin) != at_origin:
            return False
        bound = GraphLsc.constant(graph, at_origin + k)
        for valuation in (alpha, beta):
            if not evaluate(valuation, g) <= bound:
                return False
            if not bound <= evaluate(valuation, h):
                return False
    return True


def obstruction_demo(n: int) -> Report:
    """Run the determinant obstruction at truncation level n.

    The two fields agree on Lambda_n, so their Cu-distance is at most 1/2^n, while
    their determinants differ by the nonconstant function t.

    Args:
        n (int): The level, at least 1.

    Returns:
        Report: The checks, with the determinant certificate.
    """
    if n < 1:
        raise ValueError(f"the obstruction demo needs n >= 1, got {n}")
    u, v = obstruction_pair(n)
    alpha = cu_of_unitary(u, n)
    beta = cu_of_unitary(v, n)
    bound = Fraction(1, 1 << n)
    checks = []

    compares = compare_on_lambda(alpha, beta, n)
    checks.append(Check("compare_on_lambda", True, compares, compares))
    distance = dd_cu(alpha, beta)
    checks.append(
        Check(
            "dd_cu",
            f"<= {format_rational(bound)}",
            distance.value,
            distance.value <= bound,
        )
    )
    holds = _component_bound(alpha, beta, n)
    checks.append(
        Check(
            "component_bound",
            "g(t) <= g(0) + k <= h(t)",
            "holds" if holds else "fails",
            holds,
        )
    )
    certificate = aue_obstruction(u, v)
    kind = certificate.kind.value if certificate is not None else "inconclusive"
    checks.append(
        Check(
            "determinant_certificate",
            "nonconstant",
            kind,
            certificate is not None and certificate.witnesses != (),
        )
    )
    for m in range(n, n + TOWER_DEPTH + 1):
        tower_bound = Fraction(1, 1 << n) - Fraction(1, 1 << m)
        found = tower_distance(n, m)
        checks.append(
            Check(
                f"tower_{n}_{m}",
                f"<= {format_rational(tower_bound)}",
                found,
                found <= tower_bound,
            )
        )

    report = Report("obstruction", checks, certificate=certificate)
    logger.info("obstruction demo at level %d: %s", n, "pass" if report.passed else "fail")
    return report


def _preimage_length(arc: Arc, k: int) -> Fraction:
    # Lebesgue measure of {t in (0, k] : e^{2 i pi t} in arc}, one turn at a time
    start = Fraction(arc.start, arc.size)
    total = Fraction(0)
    for turn in range(-1, k):
        lo = max(turn + start, Fraction(0))
        hi = min(turn + start + arc.length, Fraction(k))
        if hi > lo:
            total += hi - lo
    return total


def jiang_su_valuation(k: int, n: int) -> ArcValuation:
    """Cu of the exponential of a_k on Lambda_n.

    a_k has spectrum (0, k] and spectral measure m/k, so a proper arc U goes to the
    soft element of mass |exp^{-1}(U)|/k and the circle goes to the compact unit.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")

    def rule(arc: Arc) -> CuZElement:
        if arc.whole:
            return CuZElement.compact(1)
        return CuZElement.soft(_preimage_length(arc, k) / k)

    return ArcValuation.from_rule(n, JiangSu(), rule)


def jiang_su_trace(k: int) -> Fraction:
    """tau(a_k), the integral of t against m/k over (0, k]."""
    return Fraction(k * k, 2) / k


def jiang_su_determinant(k: int) -> Fraction:
    """The determinant of e^{2 i pi a_k} in C/Z, as a representative in [0, 1)."""
    return jiang_su_trace(k) % 1


def jiang_su_demo(k: int, l: int, top: int = 6) -> Report:
    """Compare u_k and u_l in the Jiang-Su algebra.

    Cu-values agree on every arc up to resolution `top`. The determinants agree iff
    k - l is even, and a differing determinant certifies that u_k and u_l are not
    approximately unitarily equivalent.

    Args:
        k (int): The first spectrum length, at least 1.
        l (int): The second spectrum length, at least 1.
        top (int, optional): The finest resolution compared. Defaults to 6.

    Returns:
        Report: The checks, verdict and certificate.
    """
    if k < 1 or l < 1:
        raise ValueError(f"k and l must be positive, got {k} and {l}")
    equal = all(
        jiang_su_valuation(k, n).same_as(jiang_su_valuation(l, n)) for n in range(top + 1)
    )
    det_k = jiang_su_determinant(k)
    det_l = jiang_su_determinant(l)
    certificate = lattice_certificate(jiang_su_trace(k) - jiang_su_trace(l), 1)
    odd = (k - l) % 2 == 1
    checks = [
        Check("cu_equal", "equal", "equal" if equal else "differ", equal),
        Check(f"determinant_{k}", Fraction(k, 2) % 1, det_k, det_k == Fraction(k, 2) % 1),
        Check(f"determinant_{l}", Fraction(l, 2) % 1, det_l, det_l == Fraction(l, 2) % 1),
        Check(
            "certificate_iff_odd",
            odd,
            certificate is not None,
            (certificate is not None) == odd,
        ),
    ]
    report = Report(
        "jiang_su",
        checks,
        verdict="not aue" if certificate is not None else "aue",
        certificate=certificate,
        notes=(
            "an 'aue' verdict rests on the classification of unitaries of the jiang-su "
            "algebra and is not computed here",
        ),
    )
    logger.info("jiang-su demo for k = %d, l = %d: %s", k, l, report.verdict)
    return report


__all__ = [
    "Check",
    "EXHAUSTIVE_LEVEL",
    "Report",
    "TOWER_DEPTH",
    "jiang_su_demo",
    "jiang_su_determinant",
    "jiang_su_trace",
    "jiang_su_valuation",
    "obstruction_demo",
    "obstruction_pair",
    "tower_distance",
]
