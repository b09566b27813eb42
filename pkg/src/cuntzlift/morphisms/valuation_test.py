from fractions import Fraction
from typing import Any, Sequence

import attr
import pytest

from . import codomain, exceptions, valuation
from ..circle import Arc, DyadicPartition, LambdaElement, StepLsc, lambda_generators
from ..circle.exceptions import ResolutionError


def counting(angles: Sequence[Any], n: int) -> valuation.ArcValuation:
    partition = DyadicPartition(n)
    located = [partition.locate(a) for a in angles]

    def rule(arc: Arc):
        cells = set(arc.cells())
        return (sum(1 for c in located if c in cells),)

    return valuation.ArcValuation.from_rule(n, codomain.FinDim([len(angles)]), rule)


def table(n: int, d: int, spans: dict) -> valuation.ArcValuation:
    def rule(arc: Arc):
        if arc.whole:
            return (d,)
        return (spans[arc.start, arc.span],)

    return valuation.ArcValuation.from_rule(n, codomain.FinDim([d]), rule)


@attr.s(frozen=True, slots=True)
class StrictReals:
    """[0, inf) with no compact elements but 0."""

    kind = codomain.CodomainKind.FIN_DIM

    def zero(self):
        return 0

    def unit(self):
        return 1

    def coerce(self, value):
        return Fraction(value)

    def leq(self, a, b):
        return a <= b

    def add(self, a, b):
        return a + b

    def way_below(self, a, b):
        return a == 0 or a < b

    def equal(self, a, b):
        return a == b


def test_valuation_arcs():
    arcs = valuation.valuation_arcs(2)
    assert len(arcs) == 17
    assert arcs[-1].whole
    assert len(set(arcs)) == 17


def test_ArcValuation_completeness():
    values = dict(counting(["1/8"], 2).values)
    del values[Arc.U(2, 3)]

    with pytest.raises(exceptions.InconsistentValuationError) as e:
        valuation.ArcValuation(2, codomain.FinDim([1]), values)
    assert e.value.invariant == "complete"

    values[Arc.U(2, 3)] = (0,)
    values[Arc.U(3, 1)] = (1,)
    with pytest.raises(exceptions.InconsistentValuationError):
        valuation.ArcValuation(2, codomain.FinDim([1]), values)


def test_ArcValuation_value_and_coarsen():
    alpha = counting(["1/8", "1/2"], 3)
    assert alpha.unit == (2,)
    assert alpha.value(Arc.U(1, 1)) == (1,)
    assert alpha.value(Arc(1, 0, 2)) == (2,)
    assert alpha.value(Arc(1, 1, 2)) == (1,)
    coarse = alpha.coarsen(1)
    assert coarse.same_as(counting(["1/8", "1/2"], 1))
    assert alpha.coarsen(3) is alpha

    with pytest.raises(ResolutionError):
        coarse.value(Arc.U(2, 1))

    with pytest.raises(ResolutionError):
        coarse.coarsen(2)


def test_ArcValuation_same_as():
    alpha = counting(["1/8"], 2)
    assert alpha.same_as(counting(["3/16"], 2))
    assert not alpha.same_as(counting(["3/8"], 2))
    assert not alpha.same_as(counting(["1/8"], 3))


def test_evaluate():
    alpha = counting(["1/8", "5/8"], 2)
    assert valuation.evaluate(alpha, None) == (0,)
    assert valuation.evaluate(alpha, Arc.full(2)) == (2,)
    two_arcs = StepLsc(2, [1, 0, 1, 0], [0, 0, 0, 0])
    assert valuation.evaluate(alpha, two_arcs) == (2,)
    assert valuation.evaluate(alpha, LambdaElement.from_function(two_arcs)) == (2,)
    # 2 on U_1 and 1 on U_3 split into the level sets U_1 u U_3 and U_1
    stacked = StepLsc(2, [2, 0, 1, 0], [0, 0, 0, 0])
    assert valuation.evaluate(alpha, stacked) == (3,)
    assert valuation.evaluate(alpha, StepLsc.zero(1)) == (0,)

    with pytest.raises(ResolutionError):
        valuation.evaluate(alpha, Arc.U(3, 1).indicator())


@pytest.mark.parametrize(
    "angles,n",
    [
        (["0"], 0),
        (["1/2", "0", "1/4"], 1),
        (["1/8", "1/4", "1/4", "3/4"], 2),
        (["1/16", "7/16", "1/2", "0", "15/16"], 3),
    ],
)
def test_validate_counting(angles, n):
    alpha = counting(angles, n)
    assert valuation.validate(alpha) is alpha
    d = len(angles)
    for g in lambda_generators(min(n, 2)):
        # one eigenvalue count per component, summed
        expected = sum(valuation.evaluate(alpha, c)[0] for c in g.components)
        assert valuation.evaluate(alpha, g) == (expected,)
        assert 0 <= expected <= d


def test_validate_monotone():
    alpha = counting(["1/8", "5/8"], 2)
    values = dict(alpha.values)
    values[Arc.U(2, 1)] = (2,)
    broken = valuation.ArcValuation(2, alpha.codomain, values)

    with pytest.raises(exceptions.InconsistentValuationError) as e:
        valuation.validate(broken)
    assert e.value.invariant == "monotone"
    assert e.value.index == str(Arc.U(2, 1))


def test_validate_unital():
    alpha = counting(["1/8", "5/8"], 2)
    wrong_unit = attr.evolve(alpha, codomain=codomain.FinDim([3]))

    with pytest.raises(exceptions.InconsistentValuationError) as e:
        valuation.validate(wrong_unit)
    assert e.value.invariant == "unital"


def test_validate_cover_identity():
    # both long arcs see the single eigenvalue, neither partition arc does
    alpha = table(1, 1, {(0, 1): 0, (1, 1): 0, (0, 2): 1, (1, 2): 1})

    with pytest.raises(exceptions.InconsistentValuationError) as e:
        valuation.validate(alpha)
    assert e.value.invariant == "cover identity"


def test_validate_superadditive():
    spans = {(k, 4): 1 for k in range(4)}
    spans.update({(k, 3): 1 for k in range(4)})
    spans.update({(0, 2): 1, (1, 2): 1, (2, 2): 0, (3, 2): 1})
    spans.update({(0, 1): 1, (1, 1): 1, (2, 1): 0, (3, 1): 0})
    alpha = table(2, 1, spans)

    with pytest.raises(exceptions.InconsistentValuationError) as e:
        valuation.validate(alpha)
    assert e.value.invariant == "superadditive"
    assert e.value.index == str(Arc(2, 0, 2))


def test_validate_way_below():
    # arcs of span 3 already carry the whole unit, which is not compact
    weights = {1: 0, 2: Fraction(1, 4), 3: 1, 4: 1}
    spans = {(k, s): w for k in range(4) for s, w in weights.items()}
    alpha = valuation.ArcValuation.from_rule(
        2, StrictReals(), lambda arc: 1 if arc.whole else spans[arc.start, arc.span]
    )

    with pytest.raises(exceptions.InconsistentValuationError) as e:
        valuation.validate(alpha)
    assert e.value.invariant == "way-below"
    assert e.value.index == str(Arc(2, 0, 3))
