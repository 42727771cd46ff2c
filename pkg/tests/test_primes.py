from fractions import Fraction
import random
import pytest

from diophlab.errors import UnsupportedDegreeError
from diophlab.polynomials import IntPoly, is_irreducible
from diophlab.primes import (FilterInstance, bad_primes, bad_primes_oracle, build_corpus, calibrate_count_constant,
                             check_corpus, count_ratio, count_scale, find_good_prime, irreducible_combination,
                             is_bad_prime, random_instance, theorem_bound)


def instance(P, Q):
    return FilterInstance(IntPoly(P), IntPoly(Q))


def test_bad_primes_of_t_minus_one_and_t_squared():
    inst = instance([-1, 1], [0, 0, 1])
    assert bad_primes(inst, 100) == [2]
    assert bad_primes_oracle(inst, 100) == [2]
    assert find_good_prime(inst) == 3
    # P + 2Q = 2T^2 + T - 1 = (2T - 1)(T + 1)
    assert is_bad_prime(inst, 2)
    assert not is_bad_prime(inst, 3)


@pytest.mark.parametrize("P,Q,p,R", [
    ([1, 1, 1], [0, 0, 0, 1], 2, [2, 2, 2, 1]),
    ([1, 0, 1], [0, 0, 0, 1], 3, [3, 0, 3, 1]),
])
def test_irreducible_combination(P, Q, p, R):
    found, combination = irreducible_combination(instance(P, Q))
    assert found == p
    assert combination == IntPoly(R)
    assert is_irreducible(combination)


def test_irreducible_combination_needs_small_degree():
    with pytest.raises(UnsupportedDegreeError):
        irreducible_combination(instance([1], [0, 0, 0, 0, 1]))


@pytest.mark.parametrize("P,Q", [
    ([1, 1], [1, 0, 1]),          # Q(0) != 0
    ([1, 0, 1], [0, 0, 1]),       # deg P >= n
    ([-1, 1], [0, -1, 1]),        # shared root 1
    ([0, 1], [0, 0, 1]),          # P(0) = 0
    ([1, 0, 1], [0, 1, 0, 1]),    # Q = T P
    ([1], [0, 1]),                # n < 2
])
def test_invalid_instances(P, Q):
    with pytest.raises(ValueError):
        instance(P, Q)


def test_theorem_bound():
    assert theorem_bound(2, 1) == 2
    assert theorem_bound(3, 10) == 30000
    with pytest.raises(ValueError):
        theorem_bound(1, 5)


def test_random_instances_are_valid_and_seeded():
    first = [i.to_json() for i in build_corpus(5, seed=42)]
    second = [i.to_json() for i in build_corpus(5, seed=42)]
    assert first == second
    rng = random.Random(1)
    inst = random_instance(rng, max_n=3, max_height=4)
    assert 2 <= inst.n <= 3 and inst.X <= 4


def test_structured_search_matches_oracle():
    for inst in build_corpus(10, seed=42):
        scan = min(theorem_bound(inst.n, inst.X), 500)
        assert bad_primes(inst, scan) == bad_primes_oracle(inst, scan)


def test_check_corpus_small():
    report = check_corpus(build_corpus(10, seed=42), oracle_bound=300)
    assert report["passed"]
    assert report["observed_count_constant"] <= report["count_constant"]
    assert isinstance(report["observed_count_constant"], Fraction)
    assert report["count_constant"] == 12


def test_count_scale_encloses_the_divisor_scale():
    inst = FilterInstance(IntPoly([6, 1]), IntPoly([0, 0, 4]))
    scale = count_scale(inst)
    # tau(6) tau(4) (1 + log 6) = 33.5011...
    assert Fraction(3350, 100) < scale.lo < scale.hi < Fraction(3351, 100)
    assert scale.width < Fraction(1, 10 ** 20)
    assert count_ratio(inst, 3) == 3 / scale.lo


@pytest.mark.slow
def test_check_corpus_full():
    corpus = build_corpus(100, seed=42)
    report = check_corpus(corpus)
    assert report["passed"]
    assert calibrate_count_constant(corpus) == report["observed_count_constant"]
