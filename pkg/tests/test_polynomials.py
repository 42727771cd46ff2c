from fractions import Fraction
from itertools import product
import random
import pytest

from diophlab.arith import CFNumber, Interval
from diophlab.construct import cbrt2, sqrt2
from diophlab.errors import NoWitnessError, PreconditionViolation, UnsupportedDegreeError
from diophlab.polynomials import (IntPoly, brute_force_factor, coprime, coprime_corpus, coprime_value_bounds,
                                  gelfond_exhaustive, gelfond_ratio, has_linear_factor, height_bracket, is_irreducible,
                                  isolate_real_roots, nearest_root, rational_roots, real_roots, sympy_is_irreducible,
                                  witness_convert)
from diophlab.polynomials.pairs import random_coprime_pair


def test_intpoly_basics():
    P = IntPoly([-1, 0, 1, 0])
    assert P.degree == 2
    assert P.height == 1
    assert str(P) == "T^2 - 1"
    assert IntPoly([0, 0, 1]).shift(1) == IntPoly([1, 2, 1])
    assert IntPoly([1, 2, 3]).reversed() == IntPoly([3, 2, 1])
    assert IntPoly([-4, 6]).primitive_part() == IntPoly([-2, 3])
    assert IntPoly([4, -6]).primitive_part() == IntPoly([-2, 3])
    with pytest.raises(ValueError):
        IntPoly([1, 0.5])


def test_exact_quotient():
    P = IntPoly([-1, 0, 1])
    assert P.exact_quotient(IntPoly([-1, 1])) == IntPoly([1, 1])
    assert P.exact_quotient(IntPoly([0, 2])) is None


def test_gelfond_ratio():
    # (T + 1)(T - 1) = T^2 - 1
    assert gelfond_ratio(IntPoly([1, 1]), IntPoly([-1, 1])) == 1
    # (T + 1)^2 = T^2 + 2T + 1
    assert gelfond_ratio(IntPoly([1, 1]), IntPoly([1, 1])) == 2


def test_rational_roots():
    assert rational_roots(IntPoly([1, -3, 2])) == {Fraction(1), Fraction(1, 2)}
    assert rational_roots(IntPoly([0, -2, 0, 1])) == {Fraction(0)}
    assert not has_linear_factor(IntPoly([-2, 0, 1]))
    assert has_linear_factor(IntPoly([-2, 1, 0, 1]))


def test_isolate_real_roots():
    intervals = isolate_real_roots(IntPoly([-2, 0, 1]))
    assert len(intervals) == 2
    assert intervals[0].hi <= intervals[1].lo
    assert intervals[0].lo < -1 and intervals[1].hi > 1
    assert isolate_real_roots(IntPoly([1, 0, 1])) == []


@pytest.mark.parametrize("coefficients,expected", [
    ([-2, 0, 0, 1], True),
    ([1, 0, 0, 0, 1], True),
    ([4, 0, 0, 0, 1], False),
    ([-1, 0, 1], False),
    ([1, 1, 1], True),
    ([2, 2, 2, 1], True),
])
def test_is_irreducible(coefficients, expected):
    P = IntPoly(coefficients)
    assert is_irreducible(P) == expected
    assert sympy_is_irreducible(P) == expected


def test_is_irreducible_degree_limit():
    with pytest.raises(UnsupportedDegreeError):
        is_irreducible(IntPoly([1, 0, 0, 0, 0, 1]))


def test_is_irreducible_agrees_with_sympy_on_random_quartics():
    rng = random.Random(7)
    for _ in range(40):
        P = IntPoly([rng.randint(-6, 6) for _ in range(4)] + [rng.randint(1, 3)])
        assert is_irreducible(P) == sympy_is_irreducible(P)


def small_corpus(max_degree, max_height):
    """Every polynomial of degree 1..max_degree and height <= max_height with positive leading coefficient."""
    for degree in range(1, max_degree + 1):
        for lower in product(range(-max_height, max_height + 1), repeat=degree):
            for lead in range(1, max_height + 1):
                yield IntPoly(list(lower) + [lead])


@pytest.mark.slow
def test_is_irreducible_agrees_with_exhaustive_factor_search():
    # factors of degree <= 2 of a quartic of height 3 have height at most 2 * sqrt(5) * 3
    checked = 0
    for P in small_corpus(4, 3):
        if not P.is_primitive:
            continue
        assert is_irreducible(P) == (brute_force_factor(P, 13) is None), P
        checked += 1
    assert checked > 8000


def test_brute_force_factor_finds_quadratic_pairs():
    A, B = brute_force_factor(IntPoly([1, 0, 1]) * IntPoly([2, 1, 1]), 13)
    assert A * B == IntPoly([2, 1, 3, 1, 1])
    assert brute_force_factor(IntPoly([-2, 0, 0, 0, 1]), 13) is None


def test_rational_roots_match_a_fraction_scan():
    for P in small_corpus(4, 2):
        H = P.height
        expected = {Fraction(a, b) for a in range(-H - 1, H + 2) for b in range(1, H + 2) if P(Fraction(a, b)) == 0}
        assert rational_roots(P) == expected, P


def test_real_roots_split_factors():
    roots = real_roots(IntPoly([2, -1, -2, 1]))  # (T - 2)(T^2 - 1)
    assert [w.degree for w in roots] == [1, 1, 1]


def test_nearest_root_distance():
    zeta = CFNumber.from_rational(Fraction(3, 2))
    witness, distance = nearest_root(IntPoly([-2, 0, 1]), zeta, Fraction(1, 10 ** 6))
    assert witness.minimal_polynomial == IntPoly([-2, 0, 1])
    assert witness.isolating_interval.lo > 0
    # 3/2 - sqrt(2) = 0.0857864...
    assert Fraction(857, 10 ** 4) < distance.lo and distance.hi < Fraction(86, 1000)


def test_nearest_root_tie_goes_to_smaller_root():
    witness, distance = nearest_root(IntPoly([-1, 0, 1]), CFNumber.from_rational(0), Fraction(1, 64))
    assert witness.minimal_polynomial == IntPoly([1, 1])
    assert distance == Interval.point(1)


def test_nearest_root_errors():
    with pytest.raises(PreconditionViolation):
        nearest_root(IntPoly([-2, 0, 1]), sqrt2(), Fraction(1, 64))
    with pytest.raises(NoWitnessError):
        nearest_root(IntPoly([1, 0, 1]), sqrt2(), Fraction(1, 64))


def test_witness_convert_bound_holds():
    witness, _ = nearest_root(IntPoly([-3, 0, 2]), sqrt2(), Fraction(1, 64))
    record = witness_convert(witness, sqrt2())
    assert record.kind == "poly"
    assert record.value.hi <= record.bound.hi


def test_height_bracket():
    assert height_bracket(6) == (Fraction(1, 64), Fraction(7))


def test_gelfond_exhaustive_small():
    report = gelfond_exhaustive(max_degree_sum=4, max_height=2)
    assert report["violations"] == 0
    assert report["pairs"] > 0
    lower, upper = height_bracket(4)
    assert lower <= report["min_ratio"] <= 1
    assert 2 <= report["max_ratio"] <= upper


@pytest.mark.slow
def test_gelfond_exhaustive_full():
    report = gelfond_exhaustive(max_degree_sum=6, max_height=3)
    assert report["violations"] == 0


def test_coprime():
    assert coprime(IntPoly([0, 1]), IntPoly([1, 1]))
    assert not coprime(IntPoly([-1, 1]), IntPoly([-1, 0, 1]))


def test_random_coprime_pairs_are_coprime():
    rng = random.Random(3)
    for _ in range(10):
        P, Q = random_coprime_pair(rng)
        assert coprime(P, Q)
        assert 1 <= P.degree <= 3 and P.height <= 5


def test_coprime_value_bounds_certify():
    result = coprime_value_bounds(IntPoly([-1, 1]), IntPoly([-1, 0, 1, 1]), cbrt2())
    assert result["certified"]


def test_coprime_corpus_passes():
    report = coprime_corpus(cbrt2(), size=20, seed=42)
    assert report["passed"]
    assert report["size"] == 20
    assert report["calibrated_constant"].lo > 0
