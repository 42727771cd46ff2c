from fractions import Fraction
import pytest

from diophlab.arith import CFNumber, Interval, as_rational, eval_poly, horner, log_base, neg_log_slope
from diophlab.construct import cbrt2, golden, sqrt2
from diophlab.polynomials import IntPoly


def test_as_rational_parses_strings():
    assert as_rational("5/1") == 5
    assert as_rational(" -3/4 ") == Fraction(-3, 4)
    with pytest.raises(ValueError):
        as_rational("five")
    with pytest.raises(ValueError):
        as_rational(True)


def test_interval_arithmetic_is_outward():
    x = Interval(-1, 2)
    y = Interval(3, 4)
    assert x + y == Interval(2, 6)
    assert x - y == Interval(-5, -1)
    assert x * y == Interval(-4, 8)
    assert x ** 2 == Interval(0, 4)
    assert abs(Interval(-3, 1)) == Interval(0, 3)
    assert Interval(1, 2).reciprocal() == Interval(Fraction(1, 2), 1)
    with pytest.raises(ZeroDivisionError):
        x.reciprocal()
    with pytest.raises(ValueError):
        Interval(2, 1)


def test_interval_json_uses_rational_strings():
    interval = Interval(Fraction(1, 3), Fraction(2, 3))
    assert interval.to_json() == ["1/3", "2/3"]
    assert Interval.from_json(interval.to_json()) == interval


def test_horner_contains_true_value():
    # 1 + 2x + x^2 on [1, 2]
    value = horner([1, 2, 1], Interval(1, 2))
    assert value.contains(4) and value.contains(9)


def test_convergents_of_sqrt2():
    cf = sqrt2()
    assert [cf.partial_quotient(i) for i in range(5)] == [1, 2, 2, 2, 2]
    assert [cf.q(i) for i in range(5)] == [1, 2, 5, 12, 29]
    assert cf.convergent(3) == Fraction(17, 12)


def test_cbrt2_partial_quotients_are_exact():
    cf = cbrt2()
    assert [cf.partial_quotient(i) for i in range(10)] == [1, 3, 1, 5, 1, 1, 4, 1, 1, 8]


def test_enclose_width_and_containment():
    cf = golden()
    tol = Fraction(1, 10 ** 12)
    interval = cf.enclose(tol)
    assert interval.width <= tol
    # x^2 - x - 1 changes sign across the enclosure
    assert interval.lo ** 2 - interval.lo - 1 < 0 < interval.hi ** 2 - interval.hi - 1


def test_finite_expansion_is_rational():
    cf = CFNumber.from_rational(Fraction(7, 5))
    assert cf.quotients == [1, 2, 2]
    assert cf.rational_value() == Fraction(7, 5)
    assert cf.enclose(Fraction(1, 100)) == Interval.point(Fraction(7, 5))


def test_max_terms_truncation_is_flagged():
    cf = CFNumber(generator=lambda cf, i: 1, name="truncated", max_terms=4)
    assert cf.is_rational(lookahead=10)
    assert cf.truncated
    assert cf.rational_value() == Fraction(8, 5)


def test_eval_poly_detects_exact_zero():
    assert eval_poly(IntPoly([-1, -1, 1]), golden(), Fraction(1, 64)) == Interval.point(0)
    assert eval_poly(IntPoly([-2, 0, 0, 1]), cbrt2(), Fraction(1, 64)) == Interval.point(0)


def test_eval_poly_relative_width():
    value = eval_poly(IntPoly([-3, 2]), sqrt2(), Fraction(1, 1000))
    assert value.hi < 0
    assert value.width <= Fraction(1, 1000) * value.max_abs


def test_eval_poly_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        eval_poly(IntPoly([1, 1]), sqrt2(), 0)


def test_log_base_encloses():
    value = log_base(Interval.point(8), Interval.point(2))
    assert value.contains(3)
    assert value.width < Fraction(1, 10 ** 20)


def test_neg_log_slope():
    slope = neg_log_slope(Interval.point(Fraction(1, 100)), 10)
    assert slope.contains(2)
    assert neg_log_slope(Interval(0, 1), 10) is None
    with pytest.raises(ValueError):
        neg_log_slope(Interval.point(Fraction(1, 2)), 1)
