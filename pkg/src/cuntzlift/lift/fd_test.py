import random

from fractions import Fraction

import pytest

from . import fd
from ..circle import Arc, lambda_generators
from ..graph import MetricGraph
from ..morphisms import ArcValuation, FinDim, cauchy_check, cauchy_limit, evaluate
from ..morphisms.exceptions import CodomainError, InconsistentValuationError
from ..sampling import random_unitary, random_valuation
from ..spectral import DiagonalUnitary, UnitaryField, cu_of_unitary, matching_distance


def arc_table(n: int, d: int, values: dict) -> ArcValuation:
    def rule(arc: Arc):
        return (d,) if arc.whole else (values[arc],)

    return ArcValuation.from_rule(n, FinDim([d]), rule)


def angles(u: DiagonalUnitary):
    return [a.value for a in u.angles]


def test_fill_up_two_centers():
    alpha = cu_of_unitary(DiagonalUnitary.from_angles(["3/4", "1/4"]), 1)
    assert angles(fd.fill_up(alpha)) == [Fraction(1, 4), Fraction(3, 4)]


def test_fill_up_breakpoints():
    alpha = arc_table(
        1,
        3,
        {Arc(1, 0, 1): 1, Arc(1, 1, 1): 0, Arc(1, 0, 2): 2, Arc(1, 1, 2): 2},
    )
    assert fd.multiplicities(alpha) == ([1, 0], [1, 1])
    assert angles(fd.fill_up(alpha)) == [Fraction(1, 4), Fraction(1, 2), Fraction(0)]


def test_fill_up_resolution_zero():
    alpha = cu_of_unitary(DiagonalUnitary.from_angles(["1/4", 0, "3/4"]), 0)
    assert angles(fd.fill_up(alpha)) == [Fraction(1, 2), Fraction(1, 2), Fraction(0)]


def test_fill_up_fixes_center_supported_unitaries():
    u = DiagonalUnitary([["3/8", "1/8", "1/8", "7/8"], ["5/8"]])
    assert fd.fill_up(cu_of_unitary(u, 2)).same_spectrum(u)


@pytest.mark.parametrize("seed", range(6))
def test_fill_up_agrees_on_lambda(seed):
    rng = random.Random(seed)
    n = seed % 3
    alpha = random_valuation(rng, (4, 2), n)
    u = fd.fill_up(alpha)
    assert u.dimensions == (4, 2)
    beta = cu_of_unitary(u, n)
    assert beta.same_as(alpha)
    for g in lambda_generators(n):
        assert evaluate(beta, g) == evaluate(alpha, g)


def test_fill_up_splits_into_blocks():
    rng = random.Random(7)
    u = random_unitary(rng, (3, 2), 3)
    whole = fd.fill_up(cu_of_unitary(u, 2))
    for i in range(2):
        assert whole.block(i) == fd.fill_up(cu_of_unitary(u.block(i), 2))


def test_fill_up_negative_breakpoint():
    alpha = arc_table(
        1,
        2,
        {Arc(1, 0, 1): 1, Arc(1, 1, 1): 1, Arc(1, 0, 2): 1, Arc(1, 1, 2): 2},
    )

    with pytest.raises(InconsistentValuationError) as e:
        fd.fill_up(alpha)
    assert e.value.invariant == "breakpoint multiplicity"
    assert e.value.index == str(Arc.V(1, 1))


def test_fill_up_missing_entries():
    alpha = arc_table(
        1,
        3,
        {Arc(1, 0, 1): 0, Arc(1, 1, 1): 0, Arc(1, 0, 2): 1, Arc(1, 1, 2): 1},
    )

    with pytest.raises(InconsistentValuationError) as e:
        fd.fill_up(alpha)
    assert e.value.invariant == "cover identity"


def test_fill_up_rejects_graph_codomain():
    alpha = cu_of_unitary(UnitaryField.constant(MetricGraph.interval(), [0]), 1)

    with pytest.raises(CodomainError):
        fd.fill_up(alpha)


def test_lift_sequence_constant():
    u = DiagonalUnitary.from_angles(["1/2", "1/2"])
    sequence = fd.lift_sequence(cu_of_unitary(u, 3), 5)
    assert len(sequence) == 3
    assert all(v.same_spectrum(u) for v in sequence)


def test_lift_sequence_roots_of_unity():
    w = DiagonalUnitary.roots_of_unity(3)
    sequence = fd.lift_sequence(cu_of_unitary(w, 3), 3)
    assert sequence[-1].same_spectrum(w)
    # level-1 fill-up: x_0, three copies of c_1, x_1, three copies of c_2
    assert sorted(a.value for a in sequence[0].angles) == [
        0,
        Fraction(1, 4),
        Fraction(1, 4),
        Fraction(1, 4),
        Fraction(1, 2),
        Fraction(3, 4),
        Fraction(3, 4),
        Fraction(3, 4),
    ]


@pytest.mark.parametrize("seed", range(100))
def test_lift_sequence_is_cauchy(seed):
    rng = random.Random(seed)
    n_max = 4 if seed % 10 == 0 else 3
    dimensions = [rng.randint(1, 4) for _ in range(rng.randint(1, 3))]
    alpha = random_valuation(rng, dimensions, n_max)
    sequence = fd.lift_sequence(alpha, n_max)
    for n, u in enumerate(sequence, start=1):
        assert cu_of_unitary(u, n).same_as(alpha.coarsen(n))
        for m in range(n, n_max + 1):
            assert matching_distance(u, sequence[m - 1]) <= Fraction(4, 2 ** n)

    measured = [cu_of_unitary(u, n_max + 2) for u in sequence]
    assert cauchy_check(measured, 4)
    for target in range(n_max + 1):
        result = cauchy_limit(measured, 4, resolution=target)
        assert result.limit.same_as(alpha.coarsen(target))
        assert len(result.tail_distances) == n_max - max(target, 1) + 1

    default = cauchy_limit(measured, 4)
    assert default.settled_resolution == n_max - 1
    assert default.limit.same_as(alpha.coarsen(n_max - 1))
    assert cauchy_limit(measured[1:], 4, start=2).limit == default.limit


def test_lift_sequence_reports_resolution():
    alpha = arc_table(
        1,
        2,
        {Arc(1, 0, 1): 2, Arc(1, 1, 1): 0, Arc(1, 0, 2): 1, Arc(1, 1, 2): 2},
    )

    with pytest.raises(InconsistentValuationError) as e:
        fd.lift_sequence(alpha, 1)
    assert "at resolution 1" in str(e.value)
