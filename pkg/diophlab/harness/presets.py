"""Named verification suites; every assertion carries the mathematical statement it checks."""
from fractions import Fraction
from typing import Any, Callable, Dict, List
import logging
import random
from tqdm.autonotebook import tqdm

from ..arith.interval import Interval, as_rational
from ..arith.logs import neg_log_slope, to_float
from ..construct.algebraic import cbrt2, golden
from ..construct.numbers import (DEFAULT_SCHEDULE, build_bw, build_strong_liouville, check_bw_recurrence,
                                check_liouville_growth, convergent_slope, liouville_ratios)
from ..construct.spec import number_from_spec
from ..errors import ConfigError, DiophlabError
from ..exponents.approximation import best_records
from ..exponents.estimation import ds_constant, ds_witnesses, estimate_uniform, minimal_c_value
from ..exponents.inhomogeneous import inhom_w1_hat
from ..exponents.relations import estimate_suite, negative_control, relation_report
from ..minima.parametric import ParametricMinima, independent_dimension
from ..polynomials.intpoly import IntPoly
from ..polynomials.pairs import coprime_corpus, gelfond_exhaustive
from ..primes.corpus import build_corpus, check_corpus
from ..primes.filter import FilterInstance, bad_primes, find_good_prime, irreducible_combination
from ..records import Constraint
from .config import RunConfig

logger = logging.getLogger(__name__)


class Assertion:

    def __init__(self, name: str, anchor: str, passed: bool, detail: Any = None):
        self.name = name
        self.anchor = anchor
        self.passed = bool(passed)
        self.detail = detail

    def to_json(self) -> Dict[str, Any]:
        return {"name": self.name, "anchor": self.anchor, "passed": self.passed, "detail": self.detail}

    def __repr__(self) -> str:
        return "{} {} [{}]".format("PASS" if self.passed else "FAIL", self.name, self.anchor)


class PresetResult:

    def __init__(self, name: str, assertions: List[Assertion], artifacts: Dict[str, Any] = None):
        self.name = name
        self.assertions = assertions
        self.artifacts = artifacts or {}

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def to_json(self) -> Dict[str, Any]:
        return {"preset": self.name, "passed": self.passed,
                "assertions": [a.to_json() for a in self.assertions], "artifacts": self.artifacts}


class VerificationPreset:

    def __init__(self, name: str, anchor: str, run: Callable[[RunConfig], PresetResult]):
        self.name = name
        self.anchor = anchor
        self._run = run

    def run(self, config: RunConfig) -> PresetResult:
        logger.info("Running preset {} ({})".format(self.name, self.anchor))
        result = self._run(config)
        for assertion in result.assertions:
            logger.info("{}".format(assertion))
        return result


def _option(config: RunConfig, key: str, default):
    return config.options.get(key, default)


def _number(config: RunConfig, default):
    if config.number is not None:
        return number_from_spec(config.number).value
    return default() if callable(default) else default


def bw_slope(config: RunConfig) -> PresetResult:
    w = as_rational(_option(config, "w", 3))
    M = int(_option(config, "M", 1))
    terms = int(_option(config, "terms", 7))
    slack = as_rational(_option(config, "slack", Fraction(3, 20)))
    number = build_bw(w, M, terms, config.bit_limit)
    anchor = "convergent polynomials of B_w satisfy |P_j(zeta)| comparable to H(P_j)^(-w)"
    checked = check_bw_recurrence(number, terms)
    target = Interval(w - slack, w + slack)
    assertions = [Assertion("B_w recurrence holds for j <= {}".format(terms), "a_j = M floor(q_(j-1)^(w-1))",
                            len(checked) == terms - 1, checked)]
    slopes = []
    for j in range(min(3, terms - 1), terms):
        slope = convergent_slope(number.value, j)
        slopes.append([j, slope])
        assertions.append(Assertion("slope at j={} meets [{}, {}]".format(j, target.lo, target.hi), anchor,
                                    slope.intersects(target), slope))
    return PresetResult("bw-slope", assertions, {"q": number.q_sequence(terms + 1), "slopes": slopes})


def bw_uniform(config: RunConfig) -> PresetResult:
    w = as_rational(_option(config, "w", 5))
    n = int(_option(config, "n", 2))
    zeta = build_bw(w, int(_option(config, "M", 1)), int(_option(config, "terms", 8)), config.bit_limit).value
    slack = config.trend_slack
    hmax = config.xgrid[-1]
    assertions, artifacts = [], {}
    for constraint, target, anchor in (
            (Constraint.exactly(n), n / (w - n + 1), "irreducible degree-n uniform exponent of B_w equals n/(w-n+1)"),
            (Constraint.at_most(n), Fraction(n), "classical uniform exponent of B_w equals n")):
        records = best_records(zeta, constraint, hmax, limit=config.enumeration_limit, time_limit=config.time_limit)
        estimate = estimate_uniform(zeta, constraint, config.xgrid, records)
        value = estimate.value
        ok = value is not None and abs(to_float(value) - to_float(target)) <= slack
        assertions.append(Assertion("{} within {} of {}".format(estimate.symbol, slack, target), anchor, ok, value))
        artifacts[estimate.symbol] = estimate
    return PresetResult("theorem-bs", assertions, artifacts)


def irreducible_upper_bound(config: RunConfig) -> PresetResult:
    w = as_rational(_option(config, "w", 5))
    n = int(_option(config, "n", 2))
    if w < 2 * n - 1:
        raise ConfigError("liouspez-upper needs w >= 2n - 1, got w={} n={}".format(w, n))
    zeta = build_bw(w, int(_option(config, "M", 1)), int(_option(config, "terms", 8)), config.bit_limit).value
    bound = to_float(n * w / (w - n + 1)) + config.trend_slack
    records = best_records(zeta, Constraint.exactly(n), config.hmax, limit=config.enumeration_limit,
                           time_limit=config.time_limit)
    anchor = "irreducible degree-n polynomials approximate B_w (w >= 2n-1) to order at most nw/(w-n+1)"
    worst, rows = None, []
    for record in records:
        if record.height < 2 or record.is_exact_hit:
            continue
        slope = neg_log_slope(record.value, record.height)
        if slope is None:
            continue
        rows.append([record.height, slope])
        if worst is None or slope.lo > worst.lo:
            worst = slope
    ok = worst is None or to_float(worst.lo) <= bound
    assertion = Assertion("every record slope <= {:.3f}".format(bound), anchor, ok, worst)
    return PresetResult("liouspez-upper", [assertion], {"slopes": rows, "truncated": records.truncated})


def mahler_duality(config: RunConfig) -> PresetResult:
    zeta = _number(config, cbrt2)
    n = int(_option(config, "n", 2))
    minima = ParametricMinima(zeta, n)
    anchor = "psi_(n,j) + psi*_(n,n+2-j) = O(1/log Q) for the dual pair of parametric bodies"
    assertions, residuals = [], []
    for Q in config.qgrid:
        residual = minima.duality_residual(Q)
        residuals.append(residual)
        assertions.append(Assertion("|gap| log Q below log(2 (n+1)! max(1,|zeta|)^n) at Q={}".format(Q), anchor,
                                    residual["passed"], residual["scaled"]))
    first, last = residuals[0]["gap"], residuals[-1]["gap"]
    assertions.append(Assertion("gap shrinks from Q={} to Q={}".format(config.qgrid[0], config.qgrid[-1]), anchor,
                                last < first, [first, last]))
    return PresetResult("mahler-duality", assertions, {"residuals": residuals,
                                                       "trajectory": minima.trajectory(config.qgrid)})


def minkowski_product(config: RunConfig) -> PresetResult:
    count = int(_option(config, "count", 50))
    max_n = int(_option(config, "max_n", 3))
    max_q = int(_option(config, "max_q", 10 ** 4))
    rng = random.Random(config.seed)
    numbers = [cbrt2(), golden(), build_bw(3, 1, 5).value]
    anchor = "Minkowski's second theorem: 1/(n+1)! <= lambda_1 ... lambda_(n+1) <= 1 for the unit-volume box"
    rows, failed = [], []
    cache = {}
    for _ in tqdm(range(count), disable=not _option(config, "progress", False), desc="Minkowski bodies"):
        zeta = rng.choice(numbers)
        n = rng.randint(1, independent_dimension(zeta, max_n))
        Q = rng.randint(10, max_q)
        minima = cache.setdefault((zeta.name, n), ParametricMinima(zeta, n))
        outcome = minima.minkowski_product(Q)
        rows.append({"zeta": zeta.name, "n": n, "Q": Q, "product": outcome["product"], "status": outcome["status"]})
        if outcome["status"] != "pass":
            failed.append(rows[-1])
    assertion = Assertion("{} products inside the bracket".format(count), anchor, not failed, failed)
    return PresetResult("minkowski-product", [assertion], {"bodies": rows})


def prime_filter_corpus(config: RunConfig) -> PresetResult:
    size = int(_option(config, "size", 100))
    anchor = "no linear factor of Q + pP modulo primes p > n X^(n+1)"
    fixed = FilterInstance(IntPoly([-1, 1]), IntPoly([0, 0, 1]))
    assertions = [
        Assertion("bad primes of (T-1, T^2) up to 100 are [2]", anchor, bad_primes(fixed, 100) == [2]),
        Assertion("good prime of (T-1, T^2) is 3", anchor, find_good_prime(fixed) == 3),
    ]
    cubic = FilterInstance(IntPoly([1, 1, 1]), IntPoly([0, 0, 0, 1]))
    p, combination = irreducible_combination(cubic)
    assertions.append(Assertion("T^3 + p(T^2+T+1) irreducible at p = 2", "aP + bQ is irreducible for a good prime",
                                p == 2 and combination == IntPoly([2, 2, 2, 1]), combination))
    report = check_corpus(build_corpus(size, config.seed), show_progress_bar=_option(config, "progress", False))
    assertions.append(Assertion("structured search agrees with the oracle on {} instances".format(size), anchor,
                                report["passed"], {k: report[k] for k in ("observed_count_constant", "count_constant")}))
    return PresetResult("irrpol-corpus", assertions, {"corpus": report})


def ds_witness(config: RunConfig) -> PresetResult:
    zeta = _number(config, cbrt2)
    witnesses = ds_witnesses(zeta, config.hmax)
    constant = ds_constant(zeta)
    smallest = minimal_c_value(witnesses)
    anchor = "infinitely many quadratic alpha with |zeta - alpha| <= c H(alpha)^(-3), c > (160/9) max(1, zeta^2)"
    assertions = [
        Assertion("quadratic witnesses up to height {}".format(config.hmax), anchor, bool(witnesses), len(witnesses)),
        Assertion("smallest c below (160/9) max(1, zeta^2)", anchor,
                  smallest is not None and smallest.hi < constant.lo, smallest),
    ]
    rows = [{"poly": alpha.minimal_polynomial.to_json(), "H": alpha.height, "c": c} for alpha, c in witnesses]
    return PresetResult("ds-witness", assertions, {"constant": constant, "witnesses": rows})


def gelfond(config: RunConfig) -> PresetResult:
    report = gelfond_exhaustive(int(_option(config, "degree_sum", 6)), int(_option(config, "height", 3)),
                                show_progress_bar=_option(config, "progress", False))
    anchor = "H(PQ) is comparable to H(P) H(Q) up to constants depending on the degrees"
    assertion = Assertion("ratio inside [2^-(m+n), m+n+1] for {} pairs".format(report["pairs"]), anchor,
                          report["violations"] == 0, [report["min_ratio"], report["max_ratio"]])
    return PresetResult("gelfond-exhaustive", [assertion], report)


def coprime_values(config: RunConfig) -> PresetResult:
    zeta = _number(config, cbrt2)
    report = coprime_corpus(zeta, int(_option(config, "size", 100)), config.seed, int(_option(config, "max_degree", 3)),
                            int(_option(config, "max_height", 5)))
    anchor = "for coprime P, Q one of |P(zeta)| H(P)^(n-1) H(Q)^m, |Q(zeta)| H(P)^n H(Q)^(m-1) is bounded below"
    assertion = Assertion("resultant bound certifies every pair", anchor, report["passed"],
                          report["calibrated_constant"])
    return PresetResult("bslemma-corpus", [assertion], report)


def relations(config: RunConfig) -> PresetResult:
    zeta = _number(config, lambda: build_bw(3, 1, 8).value)
    n = int(_option(config, "n", 2))
    suite = estimate_suite(zeta, n, config.hmax, config.xgrid, time_limit=config.time_limit)
    report = relation_report(suite, n, slack=config.trend_slack, zeta=zeta)
    assertions = [Assertion("relation checks for n <= {}".format(n), "standard inequalities between exponents",
                            report.passed, [c.name for c in report.failures])]
    assertions.append(Assertion("corrupted suite is flagged", "starred exponents never exceed the polynomial ones",
                                negative_control(suite, n, config.trend_slack)))
    return PresetResult("relation-report", assertions, {"report": report, "estimates": suite})


def liouville_grid(zeta, first: int = 2) -> List[int]:
    """X_j = q_(j+1) // (8 q_j): far above q_j, still below the next convergent."""
    grid = []
    j = first
    while True:
        try:
            q_j, q_next = zeta.q(j), zeta.q(j + 1)
        except DiophlabError:
            break
        grid.append(q_next // (8 * q_j))
        j += 1
    return grid


def inhom_liouville(config: RunConfig) -> PresetResult:
    schedule = _option(config, "schedule", DEFAULT_SCHEDULE)
    terms = int(_option(config, "terms", 6))
    threshold = to_float(as_rational(_option(config, "threshold", Fraction(1, 10))))
    number = build_strong_liouville(terms, schedule, config.bit_limit)
    zeta = number.value
    try:
        ratios = check_liouville_growth(number, terms)
        growth = None
    except DiophlabError as e:
        ratios, growth = liouville_ratios(number, terms), str(e)
    grid = liouville_grid(zeta)
    anchor = "a Liouville number has vanishing uniform exponent for alpha = zeta^2"
    shifted = inhom_w1_hat(zeta, [0, 0, 1], grid)
    homogeneous = inhom_w1_hat(zeta, [0], grid)
    value = shifted.value
    assertions = [
        Assertion("log a_(j+1) / log a_j increases for the {} schedule".format(schedule),
                  "a_(j+1) grows faster than any fixed power of q_j", growth is None, growth or ratios),
        Assertion("alpha = zeta^2 stays below {}".format(threshold), anchor,
                  value is not None and to_float(value) < threshold, value),
        Assertion("alpha = 0 stays at least 0.9", "Dirichlet: the homogeneous exponent is at least 1",
                  homogeneous.value is not None and to_float(homogeneous.value) >= 0.9, homogeneous.value),
    ]
    return PresetResult("inhom-liouville", assertions, {"schedule": schedule, "ratios": ratios, "grid": grid,
                                                      "shifted": shifted, "homogeneous": homogeneous})


def algint_bounds(config: RunConfig) -> PresetResult:
    w = as_rational(_option(config, "w", 5))
    n = int(_option(config, "n", 2))
    zeta = build_bw(w, int(_option(config, "M", 1)), int(_option(config, "terms", 8)), config.bit_limit).value
    constraint = Constraint.at_most(n, monic=True)
    records = best_records(zeta, constraint, config.xgrid[-1], limit=config.enumeration_limit,
                           time_limit=config.time_limit)
    estimate = estimate_uniform(zeta, constraint, config.xgrid, records)
    lower, upper = Fraction(n - 1) / (w - n + 2), Fraction(n) / (w - n + 1)
    value = estimate.value
    ok = value is not None and to_float(lower) - config.trend_slack <= to_float(value) <= to_float(upper) + config.trend_slack
    anchor = "(n-1)/(w-n+2) <= uniform algebraic integer exponent <= n/(w-n+1)"
    return PresetResult("algint-bounds", [Assertion("{} in [{}, {}]".format(estimate.symbol, lower, upper), anchor, ok,
                                                    value)], {"estimate": estimate})


PRESETS: Dict[str, VerificationPreset] = {p.name: p for p in [
    VerificationPreset("bw-slope", "construction invariant of B_w", bw_slope),
    VerificationPreset("theorem-bs", "uniform exponents of B_w numbers", bw_uniform),
    VerificationPreset("liouspez-upper", "upper bound for irreducible approximation of B_w", irreducible_upper_bound),
    VerificationPreset("mahler-duality", "parametric geometry of numbers duality", mahler_duality),
    VerificationPreset("minkowski-product", "Minkowski's second theorem", minkowski_product),
    VerificationPreset("irrpol-corpus", "irreducible combinations through a prime filter", prime_filter_corpus),
    VerificationPreset("ds-witness", "quadratic approximation of cubic-like numbers", ds_witness),
    VerificationPreset("gelfond-exhaustive", "Gelfond's height lemma", gelfond),
    VerificationPreset("bslemma-corpus", "coprime polynomial value lemma", coprime_values),
    VerificationPreset("relation-report", "relations between exponents", relations),
    VerificationPreset("inhom-liouville", "inhomogeneous characterisation of Liouville numbers", inhom_liouville),
    VerificationPreset("algint-bounds", "approximation by algebraic integers", algint_bounds),
]}


def presets() -> List[str]:
    return list(PRESETS)


def get_preset(name: str) -> VerificationPreset:
    if name not in PRESETS:
        raise ConfigError("Unknown preset {!r}, expected one of {}".format(name, presets()))
    return PRESETS[name]
