from fractions import Fraction
import pytest

from diophlab.arith import CFNumber, Interval
from diophlab.construct import cbrt2, golden
from diophlab.errors import BudgetExceededError
from diophlab.minima import (DUAL, SIMULTANEOUS, ParametricMinima, exponent_from_trajectory, independent_dimension,
                             is_independent, make_body, mahler_constant, minkowski_bracket, psi_range, successive_minima)
from diophlab.construct.numbers import build_bw
from diophlab.minima.bodies import Enclosures
from diophlab.minima.reduction import lattice_points, reduce


@pytest.fixture
def half():
    return CFNumber.from_rational(Fraction(1, 2))


def test_simultaneous_minima_of_one_half(half):
    result = successive_minima(make_body(SIMULTANEOUS, half, 1, 10))
    assert result.complete
    assert result.lambdas == [Interval.point(Fraction(1, 5)), Interval.point(5)]
    assert result.witnesses == [(2, 1), (1, 0)]


def test_dual_minima_of_one_half(half):
    result = successive_minima(make_body(DUAL, half, 1, 10))
    assert result.lambdas == [Interval.point(Fraction(1, 5)), Interval.point(5)]
    assert result.witnesses == [(-1, 2), (0, 1)]
    assert [p.to_json() for p in result.witness_polynomials()] == [[-1, 2], [0, 1]]


def test_minkowski_bracket():
    assert minkowski_bracket(1) == Interval(Fraction(1, 2), 1)
    assert minkowski_bracket(3) == Interval(Fraction(1, 24), 1)


def test_mahler_gap_vanishes_for_one_half(half):
    minima = ParametricMinima(half, 1)
    assert minima.mahler_gap(1, 10).contains(0)
    assert minima.minkowski_product(10)["status"] == "pass"


@pytest.mark.parametrize("n,Q", [(1, 100), (2, 100), (2, 1000)])
def test_minkowski_product_cbrt2(n, Q):
    outcome = ParametricMinima(cbrt2(), n).minkowski_product(Q)
    assert outcome["status"] == "pass"


def test_minima_are_ordered_and_independent():
    result = successive_minima(make_body(DUAL, golden(), 2, 1000))
    assert all(a.lo <= b.hi for a, b in zip(result.lambdas, result.lambdas[1:]))
    assert is_independent([list(w) for w in result.witnesses])
    for lam in result.lambdas:
        assert lam.width <= Fraction(1, 64) * lam.lo


def test_psi_stays_in_minkowski_range():
    minima = ParametricMinima(cbrt2(), 2)
    for Q in (100, 1000):
        for j in (1, 2, 3):
            assert minima.psi(j, Q).intersects(psi_range(2, Q))
            assert minima.psi_star(j, Q).intersects(psi_range(2, Q))


def test_duality_residual_below_constant():
    minima = ParametricMinima(cbrt2(), 2)
    residual = minima.duality_residual(100)
    assert residual["passed"]
    assert residual["constant"] == mahler_constant(2, cbrt2())


def test_budget_exhaustion_keeps_partial_result():
    with pytest.raises(BudgetExceededError) as info:
        successive_minima(make_body(SIMULTANEOUS, golden(), 3, 10 ** 4), budget=1)
    partial = info.value.partial
    assert not partial.complete
    assert len(partial.lambdas) == 4


def test_index_is_checked():
    with pytest.raises(ValueError):
        ParametricMinima(golden(), 2).psi(4, 100)


def test_trajectory_needs_four_points():
    with pytest.raises(ValueError):
        exponent_from_trajectory(1, 1, [10, 100], golden())


def test_trajectory_estimate_for_golden():
    estimate = exponent_from_trajectory(1, 1, [10, 100, 1000, 10000], golden())
    assert estimate.heuristic
    # badly approximable: psi_(1,1) stays near -1/2
    liminf = estimate.summary["liminf"]
    assert Fraction(-3, 4) < liminf.lo and liminf.hi < Fraction(-1, 4)


def test_reduce_returns_unimodular_transform():
    matrix = [[1, 0, 1234], [0, 1, 5678], [0, 0, 10 ** 6]]
    reduced, transform = reduce(matrix)
    product = [[sum(transform[i][k] * matrix[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert product == reduced


def test_lattice_points_inside_radius():
    rows = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    points = lattice_points(rows, 1.5)
    assert points == [(0, 1), (1, -1), (1, 0), (1, 1)]


@pytest.mark.parametrize("n,radius", [(2, Fraction(10)), (2, Fraction(5, 2)), (3, Fraction(4))])
def test_box_size_bounds_the_enumeration(n, radius):
    body = make_body(SIMULTANEOUS, golden(), n, 100)
    enc = Enclosures(body.zeta, n, body.Q, 40)
    assert len(list(body.candidates(radius, enc))) <= body.box_size(radius, enc)


def test_independent_dimension():
    assert independent_dimension(golden(), 3) == 1
    assert independent_dimension(cbrt2(), 3) == 2
    assert independent_dimension(cbrt2(), 1) == 1
    assert independent_dimension(build_bw(3, 1, 5).value, 3) == 3
    assert independent_dimension(CFNumber.from_rational(Fraction(3, 7)), 3) == 3
