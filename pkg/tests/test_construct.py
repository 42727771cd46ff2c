from fractions import Fraction
import pytest

from diophlab.arith import Interval
from diophlab.construct import (build_bw, build_strong_liouville, check_bw_recurrence, check_liouville_growth,
                                convergent_slope, liouville_ratios, number_from_spec, periodic_cf)
from diophlab.errors import ConfigError, DiophlabError


def test_bw_convergent_denominators():
    number = build_bw(3, 1, 8)
    assert number.q_sequence(5) == [1, 2, 9, 731, 390617900]
    assert number.value.quotients[:3] == [0, 2, 4]


def test_bw_recurrence_and_slopes():
    number = build_bw(3, 1, 7)
    assert check_bw_recurrence(number, 7) == [2, 3, 4, 5, 6, 7]
    target = Interval(Fraction(285, 100), Fraction(315, 100))
    for j in range(3, 7):
        assert convergent_slope(number.value, j).intersects(target)


def test_bw_rejects_bad_parameters():
    with pytest.raises(ValueError):
        build_bw(Fraction(1, 2))
    with pytest.raises(ValueError):
        build_bw(3, 0)


def test_bw_claims_follow_two_n_minus_one():
    number = build_bw(5, 1, 6)
    assert [claim.n for claim in number.claimed_dnw] == [1, 2, 3]


def test_strong_liouville_default_schedule():
    number = build_strong_liouville(6)
    assert number.class_tag.schedule == "geometric"
    assert [number.value.partial_quotient(j) for j in range(4)] == [0, 2, 2, 25]
    assert number.q_sequence(5) == [1, 2, 5, 127, 33038369412]
    ratios = check_liouville_growth(number, 6)
    assert [j for j, _ in ratios] == [1, 2, 3, 4, 5]
    for j, ratio in ratios:
        assert ratio.hi >= j
    assert all(r.strictly_below(s) for (_, r), (_, s) in zip(ratios, ratios[1:]))
    # log 25 / log 2 = 4.64...
    assert Fraction(464, 100) < ratios[1][1].lo < Fraction(465, 100)


def test_power_schedule_fails_the_growth_check():
    number = build_strong_liouville(6, "power")
    ratios = dict(liouville_ratios(number, 5))
    # 3 log 127 / (2 log 5) = 4.515 after log 25 / log 2 = 4.644
    assert ratios[3].hi < ratios[2].lo
    with pytest.raises(DiophlabError):
        check_liouville_growth(number, 5)


def test_strong_liouville_doubling_is_increasing():
    number = build_strong_liouville(5, "doubling")
    ratios = check_liouville_growth(number, 4)
    assert all(r.strictly_below(s) for (_, r), (_, s) in zip(ratios, ratios[1:]))


def test_unknown_schedule():
    with pytest.raises(ValueError):
        build_strong_liouville(4, "tripling")


def test_bit_limit_truncates():
    number = build_bw(3, 1, 20, bit_limit=64)
    assert len(number.q_sequence(20)) < 20
    assert number.truncated


def test_periodic_minimal_polynomial():
    cf = periodic_cf([1], [2])
    assert cf.minimal_polynomial.coefficient(1) == 0
    assert abs(cf.minimal_polynomial.coefficient(2)) == 1
    assert abs(cf.minimal_polynomial.coefficient(0)) == 2


@pytest.mark.parametrize("spec,name", [
    ("golden", "golden"),
    ("cbrt2", "cbrt2"),
    ('{"class": "Bw", "w": "3", "M": 1}', "B_3(M=1)"),
    ({"class": "BInfinity", "schedule": "doubling", "max_terms": 4}, "B_inf(doubling)"),
    ({"class": "BInfinity", "max_terms": 4}, "B_inf(geometric)"),
])
def test_number_from_spec(spec, name):
    assert number_from_spec(spec).name == name


def test_rational_spec():
    number = number_from_spec({"class": "Rational", "value": "7/5"})
    assert number.value.rational_value() == Fraction(7, 5)


@pytest.mark.parametrize("spec", ["pi", '{"w": 3}', {"class": "Bw"}, {"class": "CF", "quotients": [0, -1]}])
def test_bad_specs(spec):
    with pytest.raises(ConfigError):
        number_from_spec(spec)
