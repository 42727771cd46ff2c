from fractions import Fraction
from itertools import product
import json
import pytest

from diophlab.arith import CFNumber, Interval
from diophlab.construct import cbrt2, golden, sqrt2
from diophlab.errors import IncompatibleEstimatesError, NoWitnessError, PreconditionViolation
from diophlab.exponents import (InhomogeneousOracle, best_records, certify_exponent, corrupted_copy, ds_constant,
                                ds_witnesses, estimate_lambda, estimate_uniform, estimate_w, estimate_w_star,
                                factor_records, first_hit, inhom_w1_hat, min_residue, mu, negative_control,
                                relation_report, satisfies_exponent)
from diophlab.exponents.estimation import check_grid, coarse_upper, critical_points, minimal_polynomial_scan
from diophlab.polynomials import IntPoly
from diophlab.polynomials.witness import irreducible_factors
from diophlab.records import ApproxRecord, Constraint, ExponentEstimate, RecordList
from diophlab.util import dumps


@pytest.fixture(scope="module")
def root2():
    return sqrt2()


@pytest.fixture(scope="module")
def root2_records(root2):
    return best_records(root2, Constraint.at_most(1), 50)


def test_sqrt2_records_are_convergents(root2_records):
    assert not root2_records.truncated
    assert [r.height for r in root2_records] == [1, 3, 7, 17, 41]
    assert [r.polynomial.to_json() for r in root2_records] == [[-1, 1], [-3, 2], [-7, 5], [-17, 12], [-41, 29]]
    values = [r.value for r in root2_records]
    assert all(b.hi < a.lo for a, b in zip(values, values[1:]))


def test_lattice_agrees_with_exhaustive(root2):
    constraint = Constraint.at_most(1)
    exhaustive = best_records(root2, constraint, 50, method="exhaustive")
    lattice = best_records(root2, constraint, 50, method="lattice")
    assert [r.height for r in lattice] == [r.height for r in exhaustive]


def test_bad_record_arguments(root2):
    with pytest.raises(ValueError):
        best_records(root2, Constraint.at_most(1), 0)
    with pytest.raises(ValueError):
        best_records(root2, Constraint.at_most(1), 10, method="greedy")


def test_exact_degree_records_are_irreducible():
    records = best_records(cbrt2(), Constraint.exactly(2), 8)
    assert records
    for record in records:
        assert record.polynomial.degree == 2
        assert Constraint.exactly(2).admits(record.polynomial)


def test_coarse_upper():
    x = Fraction(1, 3)
    assert x <= coarse_upper(x) <= x * (1 + Fraction(1, 2 ** 60))
    with pytest.raises(ValueError):
        coarse_upper(Fraction(0))


def test_satisfies_exponent():
    # 1/8 = 2^-3
    assert satisfies_exponent(Fraction(1, 8), 2, Fraction(3))
    assert not satisfies_exponent(Fraction(1, 8), 2, Fraction(7, 2))
    assert certify_exponent(Interval.point(Fraction(1, 8)), 2, Interval(Fraction(3), Fraction(3))) == 3


def test_estimate_w_sqrt2(root2_records):
    estimate = estimate_w(root2_records)
    assert estimate.symbol == "w_1"
    assert not estimate.infinite
    # best slope comes from 2T - 3: -log(3 - 2 sqrt2) / log 3 = 1.6045...
    assert Fraction(159, 100) <= estimate.certified_lower <= Fraction(1605, 1000)
    assert estimate.witness.polynomial.to_json() == [-3, 2]
    assert [h for h, _ in estimate.slope_series] == [3, 7, 17, 41]
    assert estimate.summary["truncated"] is False


def test_estimate_w_from_a_minimum_height(root2_records):
    estimate = estimate_w(root2_records, min_height=10)
    assert estimate.summary["min_height"] == 10
    assert [h for h, _ in estimate.slope_series] == [17, 41]
    # -log(17 - 12 sqrt2) / log 17 = 1.2444...
    assert estimate.witness.polynomial.to_json() == [-17, 12]
    assert Fraction(123, 100) <= estimate.value <= Fraction(1245, 1000)


def test_factor_records_split_reducible_records(root2):
    # T (2T - 1) and 2 (T - 1)(T + 1) at sqrt 2
    records = [ApproxRecord(IntPoly([0, -1, 2]), 2, Interval(Fraction(1), Fraction(3))),
               ApproxRecord(IntPoly([-2, 0, 2]), 2, Interval.point(Fraction(2)))]
    factors = factor_records(root2, records, 2)
    assert sorted(f.polynomial.to_json() for f in factors[1]) == [[-1, 1], [-1, 2], [0, 1], [1, 1]]
    assert factors[2] == []
    by_poly = {tuple(f.polynomial.to_json()): f for f in factors[1]}
    assert by_poly[(-1, 2)].height == 2
    assert Fraction(18, 10) < by_poly[(-1, 2)].value.lo <= by_poly[(-1, 2)].value.hi < Fraction(19, 10)
    assert by_poly[(-1, 2)].constraint == Constraint.exactly(1)


def test_estimate_w_rational_hit():
    records = best_records(CFNumber.from_rational(Fraction(7, 5)), Constraint.at_most(1), 10)
    estimate = estimate_w(records)
    assert estimate.infinite
    assert estimate.value is None
    assert estimate.witness.polynomial.to_json() == [-7, 5]


def test_check_grid():
    assert check_grid([10, 100, 1000, 10000]) == [10, 100, 1000, 10000]
    for grid in ([], [10, 100, 1000], [10, 100, 100, 1000], [1, 10, 100, 1000]):
        with pytest.raises(ValueError):
            check_grid(grid)


def test_uniform_golden():
    estimate = estimate_uniform(golden(), Constraint.at_most(1), [10, 100, 1000, 2000])
    assert estimate.symbol == "ŵ_1"
    assert not estimate.heuristic
    assert estimate.summary["grid"] == [10, 100, 1000, 2000]
    assert estimate.summary["range"] == [10, 2000]
    # one below each Fibonacci height 13, 21, ..., 1597
    assert estimate.summary["critical"] == [12, 20, 33, 54, 88, 143, 232, 376, 609, 986, 1596]
    # smallest slope about 0.963, just below the heights 21 and 34
    assert 0.95 <= float(estimate.value) <= 1.02


def test_critical_points():
    assert critical_points([10, 100, 1000, 2000], [1, 10, 11, 100, 101, 2000, 3000]) == [99, 1999]
    assert critical_points([10, 100, 1000, 2000], [2, 5]) == []


def test_uniform_exact_hit_at_the_end_is_infinite():
    estimate = estimate_uniform(CFNumber.from_rational(Fraction(5, 7)), Constraint.at_most(1), [2, 4, 8, 16])
    assert estimate.infinite
    assert estimate.witness.polynomial.to_json() == [-5, 7]


@pytest.mark.slow
def test_uniform_bw5_quadratic_worst_case_sits_below_a_record():
    from diophlab.construct.numbers import build_bw
    zeta = build_bw(5, 1, 6).value
    estimate = estimate_uniform(zeta, Constraint.at_most(2), [10, 100, 1000, 10000])
    # (2T - 1)^2 stays best up to X = 32, just below the height of 33 T - 16
    assert 32 in estimate.summary["critical"]
    assert 1.7 <= float(estimate.value) <= 2.3


def test_w_star_below_w(root2, root2_records):
    star = estimate_w_star(root2, Constraint.at_most(1), 50, root2_records)
    w = estimate_w(root2_records)
    assert star.symbol == "w_1^{*}"
    assert star.witness.kind == "root"
    assert star.value <= w.value


def test_w_star_scan_finds_witnesses_without_records():
    no_records = RecordList([], hmax=100)
    with pytest.raises(NoWitnessError):
        estimate_w_star(cbrt2(), Constraint.at_most(1), 100, no_records, scan=False)
    star = estimate_w_star(cbrt2(), Constraint.at_most(1), 100, no_records)
    assert star.summary["scan_complete"]
    assert star.summary["from_records"] == 0
    # |2^(1/3) - 5/4| * 5 = 0.0496 gives -log(0.0496) / log 5 = 1.867
    assert star.witness.polynomial.to_json() == [-5, 4]
    assert Fraction(18, 10) <= star.value <= Fraction(187, 100)


def test_minimal_polynomial_scan_keeps_irreducible_candidates():
    found, complete = minimal_polynomial_scan(cbrt2(), Constraint.at_most(2), 30, Fraction(2))
    assert complete
    assert found
    for P in found:
        assert P.height <= 30
        assert irreducible_factors(P) == [P]
    assert IntPoly([-5, 4]) in found


def test_lambda_sqrt2(root2):
    estimate = estimate_lambda(root2, 1, 30)
    assert estimate.symbol == "λ_1"
    assert [x for x, _ in estimate.slope_series] == [2, 5, 12, 29]
    assert estimate.value >= 1


def test_lambda_from_a_minimum_height(root2):
    estimate = estimate_lambda(root2, 1, 30, min_height=10)
    assert [x for x, _ in estimate.slope_series] == [12, 29]
    assert estimate.witness.height == 12
    assert estimate.summary["min_height"] == 10


def test_lambda_arguments(root2):
    with pytest.raises(ValueError):
        estimate_lambda(root2, 0, 30)
    with pytest.raises(ValueError):
        estimate_lambda(root2, 1, 1)


@pytest.mark.parametrize("zeta", [golden(), CFNumber.from_rational(Fraction(3, 7))])
def test_ds_witnesses_preconditions(zeta):
    with pytest.raises(PreconditionViolation):
        ds_witnesses(zeta, 20)


def test_ds_witnesses_cbrt2():
    zeta = cbrt2()
    constant = ds_constant(zeta)
    # 160/9 * 2^(2/3)
    assert 28.2 < float(constant.hi) < 28.3
    witnesses = ds_witnesses(zeta, 20)
    heights = [alpha.height for alpha, _ in witnesses]
    assert heights == sorted(heights)
    for alpha, c in witnesses:
        assert alpha.minimal_polynomial.degree == 2
        assert c.hi <= constant.hi


def test_first_hit_examples():
    assert first_hit(3, 0, 7, 5, 5) == 4
    assert first_hit(2, 0, 4, 1, 1) is None
    assert first_hit(5, 3, 11, 0, 0) == 6
    with pytest.raises(ValueError):
        first_hit(1, 0, 5, 3, 2)


def test_first_hit_brute_force():
    for m in range(2, 10):
        for a, b, lo in product(range(m), range(m), range(m)):
            for hi in range(lo, m):
                expected = next((x for x in range(m) if lo <= (a * x + b) % m <= hi), None)
                assert first_hit(a, b, m, lo, hi) == expected, (a, b, m, lo, hi)


def test_min_residue():
    assert min_residue(3, 0, 7, 2) == (1, 1, 2)
    assert min_residue(3, 0, 7, 7) == (0, 0, 7)
    lower, upper, x = min_residue(1000003, 17, 2 ** 20, 500)
    expected = min(min((1000003 * y + 17) % 2 ** 20, 2 ** 20 - (1000003 * y + 17) % 2 ** 20) for y in range(1, 501))
    assert lower <= expected <= upper
    assert 1 <= x <= 500
    with pytest.raises(ValueError):
        min_residue(3, 0, 7, 0)


def test_inhomogeneous_rational():
    oracle = InhomogeneousOracle(CFNumber.from_rational(Fraction(1, 3)), [Fraction(1, 2)])
    value, x0, x1 = oracle.best(5)
    assert value == Interval.point(Fraction(1, 6))
    assert abs(Fraction(1, 2) + x0 + Fraction(x1, 3)) == Fraction(1, 6)


def test_inhomogeneous_rational_shared_denominator():
    # 1/4 + x/6 = (3 + 2x) / 12 is odd over 12, so the distance is 1/12 at best
    oracle = InhomogeneousOracle(CFNumber.from_rational(Fraction(1, 6)), [Fraction(1, 4)])
    value, x0, x1 = oracle.best(10)
    brute = min(abs(Fraction(1, 4) + Fraction(x, 6) - round(Fraction(1, 4) + Fraction(x, 6))) for x in range(1, 11))
    assert value == Interval.point(brute) == Interval.point(Fraction(1, 12))
    assert abs(Fraction(1, 4) + x0 + Fraction(x1, 6)) == Fraction(1, 12)


def test_inhomogeneous_symbolic_zero():
    value, x0, x1 = InhomogeneousOracle(golden(), [3, -2]).best(10)
    assert value.is_point and value.lo == 0
    assert (x0, x1) == (-3, 2)


def test_inhomogeneous_homogeneous_golden():
    estimate = inhom_w1_hat(golden(), [0], [10, 100, 1000, 10000])
    assert not estimate.infinite
    assert estimate.value >= Fraction(9, 10)


def test_mu():
    assert mu(1) == Interval.point(1)
    for n, expected in ((2, 2.6180339887), (3, 4.4142135624), (4, 3.5 + 9.25 ** 0.5)):
        enclosure = mu(n)
        assert enclosure.lo < enclosure.hi < enclosure.lo + Fraction(1, 2 ** 80)
        assert float(enclosure.mid) == pytest.approx(expected)
    # (3 + sqrt 5) / 2 is the root of T^2 - 3T + 1 in the enclosure
    golden_square = mu(2)
    assert (golden_square.lo ** 2 - 3 * golden_square.lo + 1) * (golden_square.hi ** 2 - 3 * golden_square.hi + 1) < 0
    with pytest.raises(ValueError):
        mu(0)


def test_relation_report_writes_mu_as_rationals():
    estimates = {
        "ŵ_2": ExponentEstimate("ŵ_2", Fraction(2), method="uniform_grid"),
    }
    report = relation_report(estimates, 2)
    data = json.loads(dumps(report))
    lo, hi = data["annotations"]["mu"]
    assert Fraction(lo) < Fraction(hi)
    assert data["annotations"]["uniform_in_known_range"]


def _suite(level=Fraction(1), **overrides):
    symbols = ["w_1", "w_{=1}", "ŵ_1", "ŵ_{=1}", "w_1^{*}", "w_{=1}^{*}", "w_1^{int}", "λ_1"]
    suite = {}
    for symbol in symbols:
        estimate = ExponentEstimate(symbol, overrides.get(symbol, level))
        estimate.summary["zeta"] = "golden"
        suite[symbol] = estimate
    return suite


def test_relation_report_consistent_suite():
    report = relation_report(_suite(), 1, slack=0.1)
    assert report.passed
    assert report.annotations["uniform_in_known_range"]
    assert any(c.status == "skipped" for c in report.checks)


def test_relation_report_flags_transference():
    report = relation_report(_suite(**{"λ_1": Fraction(3)}), 1, slack=0.1)
    assert not report.passed
    assert [c.name for c in report.failures] == ["transference bounds on λ_1"]


def test_relation_report_missing_estimates_skip():
    suite = _suite()
    del suite["λ_1"]
    report = relation_report(suite, 1)
    assert report.passed
    assert [c.status for c in report.checks if c.name.startswith("transference")] == ["skipped"]


def test_negative_control():
    suite = _suite()
    assert negative_control(suite, 1)
    corrupted = corrupted_copy(suite, 1)
    assert corrupted["w_1^{*}"].value == 3
    assert suite["w_1^{*}"].value == 1


def test_incompatible_estimates():
    suite = _suite()
    with pytest.raises(IncompatibleEstimatesError):
        relation_report(list(suite.values()) + [suite["w_1"]], 1)
    suite["λ_1"].summary["zeta"] = "sqrt2"
    with pytest.raises(IncompatibleEstimatesError):
        relation_report(suite, 1)
    with pytest.raises(IncompatibleEstimatesError):
        corrupted_copy({}, 1)
