"""Consistency report across a suite of exponent estimates computed for one number."""
from fractions import Fraction
from math import inf
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union
import copy
import logging

from ..arith.continued_fraction import CFNumber
from ..arith.interval import Interval
from ..arith.logs import neg_log_slope, sqrt_interval, to_float
from ..errors import DiophlabError, IncompatibleEstimatesError
from ..polynomials.witness import irreducible_factors, witness_convert
from ..records import ApproxRecord, Constraint, ExponentEstimate
from .approximation import ValueOracle, best_records
from .estimation import estimate_lambda, estimate_uniform, estimate_w, estimate_w_star

logger = logging.getLogger(__name__)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
DEFAULT_SLACK = 0.3
CLASSICAL_SLACK = 0.1


def mu(n: int) -> Interval:
    """Known upper end of the spectrum of the uniform exponent of degree n, as an enclosure."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("mu needs a positive integer, got {!r}".format(n))
    if n == 2:
        return (sqrt_interval(5) + 3) * Fraction(1, 2)
    if n == 3:
        return sqrt_interval(2) + 3
    return sqrt_interval(Fraction(4 * n * n - 8 * n + 5, 4)) + Fraction(2 * n - 1, 2)


def lambda_symbol(n: int) -> str:
    return "λ_{}".format(n)


class Check:

    def __init__(self, name: str, anchor: str, status: str, detail: str = ""):
        self.name = name
        self.anchor = anchor
        self.status = status
        self.detail = detail

    def to_json(self) -> Dict[str, Any]:
        return {"name": self.name, "anchor": self.anchor, "status": self.status, "detail": self.detail}

    def __repr__(self) -> str:
        return "{} {} [{}] {}".format(self.status.upper(), self.name, self.anchor, self.detail)


class RelationReport:
    """Outcome of every relation check; ``passed`` ignores skipped checks."""

    def __init__(self, n: int, slack: float, checks: List[Check], annotations: Dict[str, Any] = None):
        self.n = n
        self.slack = slack
        self.checks = checks
        self.annotations = annotations or {}

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "slack": self.slack, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks], "annotations": self.annotations}


def _level(estimate: Optional[ExponentEstimate]) -> Optional[float]:
    if estimate is None:
        return None
    if estimate.infinite:
        return inf
    value = estimate.value
    return None if value is None else to_float(value)


def _index(estimates: Union[Dict[str, ExponentEstimate], Iterable[ExponentEstimate]]) -> Dict[str, ExponentEstimate]:
    if isinstance(estimates, dict):
        items = list(estimates.values())
    else:
        items = list(estimates)
    indexed: Dict[str, ExponentEstimate] = {}
    for estimate in items:
        if estimate.symbol in indexed:
            raise IncompatibleEstimatesError("Estimate {} appears twice".format(estimate.symbol))
        indexed[estimate.symbol] = estimate
    names = {e.summary.get("zeta") for e in items if e.summary.get("zeta") is not None}
    if len(names) > 1:
        raise IncompatibleEstimatesError("Estimates mix different numbers: {}".format(sorted(names)))
    return indexed


def _compare(name: str, anchor: str, small: Optional[float], large: Optional[float], slack: float) -> Check:
    """small <= large + slack."""
    if small is None or large is None:
        return Check(name, anchor, SKIPPED, "missing estimate")
    detail = "{:.4f} <= {:.4f} + {}".format(small, large, slack)
    if small == inf and large != inf:
        return Check(name, anchor, FAIL, detail)
    return Check(name, anchor, PASS if small <= large + slack else FAIL, detail)


def _symbols(k: int) -> Dict[str, str]:
    return {
        "w": Constraint.at_most(k).symbol(),
        "w_eq": Constraint.exactly(k).symbol(),
        "w_hat": Constraint.at_most(k).symbol(uniform=True),
        "w_hat_eq": Constraint.exactly(k).symbol(uniform=True),
        "w_star": Constraint.at_most(k).symbol(starred=True),
        "w_star_eq": Constraint.exactly(k).symbol(starred=True),
        "w_int": Constraint.at_most(k, monic=True).symbol(),
    }


def _conversion_check(star: Optional[ExponentEstimate], zeta: Optional[CFNumber], k: int) -> Check:
    name = "starred witness converts (k={})".format(k)
    anchor = "|zeta - alpha| small forces |P(zeta)| small for the minimal polynomial P of alpha"
    if star is None or zeta is None or star.witness is None or star.witness.kind != "root":
        return Check(name, anchor, SKIPPED, "no algebraic witness")
    try:
        record = witness_convert(star.witness.witness, zeta)
    except DiophlabError as e:
        return Check(name, anchor, FAIL, str(e))
    slope = neg_log_slope(record.bound, record.height) if record.height > 1 else None
    shown = "n/a" if slope is None else "{:.4f}".format(to_float(slope.lo))
    return Check(name, anchor, PASS, "|P(zeta)| <= {:.4g}, slope {}".format(to_float(record.bound.hi), shown))


def relation_report(estimates, n: int, slack: float = DEFAULT_SLACK, zeta: CFNumber = None) -> RelationReport:
    """Checks the standard inequalities between the exponents present in ``estimates``.

    Missing symbols make their checks ``skipped``; everything is compared at the level of
    certified lower bounds, within ``slack``.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer, got {!r}".format(n))
    by_symbol = _index(estimates)
    if zeta is not None:
        names = {e.summary.get("zeta") for e in by_symbol.values()} - {None}
        if names and names != {zeta.name}:
            raise IncompatibleEstimatesError("Estimates for {} checked against {}".format(sorted(names), zeta.name))
    get = by_symbol.get
    checks: List[Check] = []
    for k in range(1, n + 1):
        s = _symbols(k)
        w, w_eq = _level(get(s["w"])), _level(get(s["w_eq"]))
        w_hat, w_hat_eq = _level(get(s["w_hat"])), _level(get(s["w_hat_eq"]))
        w_star = _level(get(s["w_star"]))
        checks.append(_compare("{} <= {}".format(s["w_eq"], s["w"]),
                               "irreducible exact-degree witnesses are polynomials of degree at most k",
                               w_eq, w, slack))
        checks.append(_compare("{} <= {}".format(s["w_hat_eq"], s["w_hat"]),
                               "uniform exact-degree witnesses are polynomials of degree at most k",
                               w_hat_eq, w_hat, slack))
        checks.append(_compare("{} <= {}".format(s["w_star"], s["w"]),
                               "starred exponents never exceed the polynomial ones",
                               w_star, w, slack))
        checks.append(_conversion_check(get(s["w_star"]), zeta, k))
        checks.append(_compare("{} <= {}".format(s["w_hat"], s["w"]),
                               "uniform exponents never exceed the ordinary ones",
                               w_hat, w, slack))
        checks.append(_compare("{} >= {}".format(s["w"], k),
                               "Dirichlet pigeon hole floor",
                               float(k), w, slack))
        checks.append(_compare("{} >= {}".format(s["w_hat"], k),
                               "Dirichlet pigeon hole floor, uniform version",
                               float(k), w_hat, slack))
        checks.append(_compare("{} <= {}".format(s["w_int"], s["w"]),
                               "monic witnesses are polynomials of degree at most k",
                               _level(get(s["w_int"])), w, slack))

    s = _symbols(n)
    w_n = _level(get(s["w"]))
    exact_levels = [_level(get(_symbols(k)["w_eq"])) for k in range(1, n + 1)]
    name = "{} = max_k w_{{=k}}".format(s["w"])
    anchor = "the best polynomial of degree at most n has an irreducible factor of some degree k <= n"
    if w_n is None or any(v is None for v in exact_levels):
        checks.append(Check(name, anchor, SKIPPED, "missing estimate"))
    else:
        top = max(exact_levels)
        agree = (w_n == top == inf) or abs(w_n - top) <= slack
        checks.append(Check(name, anchor, PASS if agree else FAIL, "{:.4f} vs {:.4f}".format(w_n, top)))

    lam = _level(get(lambda_symbol(n)))
    anchor = "Khintchine transference between simultaneous and polynomial approximation"
    if w_n is None or lam is None or w_n == inf:
        checks.append(Check("transference bounds on λ_{}".format(n), anchor, SKIPPED, "missing or infinite estimate"))
    else:
        lower = w_n / ((n - 1) * w_n + n)
        upper = (w_n - n + 1) / n
        ok = lower - slack <= lam <= upper + slack
        checks.append(Check("transference bounds on λ_{}".format(n), anchor, PASS if ok else FAIL,
                            "{:.4f} <= {:.4f} <= {:.4f}".format(lower, lam, upper)))
    checks.append(_compare("λ_{} >= 1/{}".format(n, n), "Dirichlet floor for simultaneous approximation",
                           1.0 / n, lam, slack))

    if n >= 2:
        s2 = _symbols(2)
        w_hat2 = _level(get(s2["w_hat"]))
        target = None if w_hat2 is None or w_hat2 == inf else w_hat2 * (w_hat2 - 1)
        checks.append(_compare("{} >= ŵ_2(ŵ_2 - 1)".format(s2["w_star_eq"]),
                               "quadratic witnesses from uniform quadratic approximation",
                               target, _level(get(s2["w_star_eq"])), slack))

    annotations = {}
    w_hat_n = _level(get(s["w_hat"]))
    if w_hat_n is not None:
        upper_end = mu(n)
        annotations["mu"] = upper_end
        annotations["uniform_in_known_range"] = n - slack <= w_hat_n <= to_float(upper_end.hi) + slack
    report = RelationReport(n, slack, checks, annotations)
    for check in checks:
        if check.status == FAIL:
            logger.warning("Relation check failed: {}".format(check))
    logger.info("Relation report n={}: {} checks, {} failed, {} skipped".format(
        n, len(checks), len(report.failures), sum(c.status == SKIPPED for c in checks)))
    return report


def corrupted_copy(estimates: Dict[str, ExponentEstimate], n: int, shift: Fraction = Fraction(2)) -> Dict[str, ExponentEstimate]:
    """Copy of ``estimates`` with the starred estimate pushed above the unstarred one."""
    s = _symbols(n)
    if s["w"] not in estimates:
        raise IncompatibleEstimatesError("Cannot corrupt a suite without {}".format(s["w"]))
    out = dict(estimates)
    source = estimates[s["w"]]
    fake = copy.copy(estimates.get(s["w_star"], source))
    fake.symbol = s["w_star"]
    fake.witness = None
    fake.infinite = False
    fake.certified_lower = (source.value or Fraction(n)) + shift
    out[s["w_star"]] = fake
    return out


def negative_control(estimates: Dict[str, ExponentEstimate], n: int, slack: float = DEFAULT_SLACK) -> bool:
    """True when the report flags the corrupted copy."""
    report = relation_report(corrupted_copy(estimates, n), n, slack)
    return not report.passed


def factor_records(zeta: CFNumber, records: Sequence[ApproxRecord], n: int) -> Dict[int, List[ApproxRecord]]:
    """Irreducible factors of the degree <= n records, grouped by degree with certified values."""
    oracle = ValueOracle(zeta, n)
    out: Dict[int, List[ApproxRecord]] = {k: [] for k in range(1, n + 1)}
    seen = set()
    for record in records:
        for factor in irreducible_factors(record.polynomial):
            if factor.leading < 0:
                factor = -factor
            if factor in seen:
                continue
            seen.add(factor)
            out[factor.degree].append(ApproxRecord(factor, factor.height, oracle.certified(factor),
                                                   constraint=Constraint.exactly(factor.degree)))
    return out


def estimate_suite(zeta: CFNumber, n: int, hmax: int, xgrid: List[int], lambda_xmax: int = None,
                   time_limit: float = None) -> Dict[str, ExponentEstimate]:
    """Every estimate the relation report knows about for degrees 1..n.

    w and λ count heights from the first grid point on. The irreducible factors of every
    degree <= n record also count towards the exact-degree estimates.
    """
    suite: Dict[str, ExponentEstimate] = {}
    hmax = max(hmax, xgrid[-1])
    min_height = xgrid[0]
    records_by_constraint = {}
    for k in range(1, n + 1):
        for constraint in (Constraint.at_most(k), Constraint.exactly(k), Constraint.at_most(k, monic=True)):
            records_by_constraint[constraint] = best_records(zeta, constraint, hmax, time_limit=time_limit)
    factors = factor_records(zeta, records_by_constraint[Constraint.at_most(n)], n)
    for constraint, records in records_by_constraint.items():
        if not records:
            continue
        scored = records
        if constraint.exact and not constraint.monic:
            scored = list(records) + factors[constraint.n]
        suite[constraint.symbol()] = estimate_w(scored, constraint.symbol(), min_height=min_height)
        suite[constraint.symbol(uniform=True)] = estimate_uniform(zeta, constraint, xgrid, records)
        if not constraint.monic:
            try:
                suite[constraint.symbol(starred=True)] = estimate_w_star(zeta, constraint, hmax, records)
            except DiophlabError as e:
                logger.warning("No starred estimate for {}: {}".format(constraint, e))
    suite[lambda_symbol(n)] = estimate_lambda(zeta, n, lambda_xmax or xgrid[-1], min_height=min_height)
    for estimate in suite.values():
        estimate.summary["zeta"] = zeta.name
    return suite
