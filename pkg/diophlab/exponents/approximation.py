"""Best approximation polynomials: the records of strictly decreasing |P(zeta)| along increasing height."""
from fractions import Fraction
from itertools import product as cartesian
from typing import Dict, Iterator, List, Sequence, Tuple
import logging
import math
import time

from ..arith.continued_fraction import CFNumber, eval_poly
from ..arith.interval import Interval, as_rational
from ..errors import BudgetExceededError
from ..minima.reduction import lattice_points
from ..polynomials.intpoly import IntPoly
from ..records import ApproxRecord, Constraint, RecordList

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 30
EXHAUSTIVE_TAIL_LIMIT = 300000
LEVEL_FACTOR = 2
ENUMERATION_LIMIT = 200000
RECORD_REL_TOL = Fraction(1, 64)
VALUE_ABS_FLOOR = Fraction(1, 2 ** 512)

Coefficients = Tuple[int, ...]


class ValueOracle:
    """Quick enclosures of P(zeta) from cached powers; exact refinement through eval_poly."""

    def __init__(self, zeta: CFNumber, n: int, abs_tol=Fraction(1, 2 ** 64)):
        self.zeta = zeta
        self.n = n
        self.abs_tol = as_rational(abs_tol)
        self.powers = [Interval.point(1)] + [zeta.power_interval(k, self.abs_tol) for k in range(1, n + 1)]

    def quick(self, coefficients: Sequence[int]) -> Interval:
        acc = Interval.point(coefficients[0])
        for k in range(1, len(coefficients)):
            if coefficients[k]:
                acc = acc + self.powers[k] * coefficients[k]
        return abs(acc)

    def certified(self, P: IntPoly, rel_tol=RECORD_REL_TOL) -> Interval:
        return abs(eval_poly(P, self.zeta, rel_tol, abs_floor=VALUE_ABS_FLOOR))

    def magnitude_bound(self, height: int) -> Fraction:
        """Upper bound of |P(zeta)| over all P of degree <= n and height <= ``height``."""
        return height * sum(p.max_abs for p in self.powers)


def canonical(coefficients: Sequence[int]) -> Coefficients:
    """Sign so that the leading coefficient is positive."""
    for c in reversed(coefficients):
        if c:
            return tuple(coefficients) if c > 0 else tuple(-x for x in coefficients)
    return tuple(coefficients)


def _tails(constraint: Constraint, hmax: int) -> Iterator[Coefficients]:
    """Coefficient tuples (c_1, ..., c_n) with positive leading entry, filtered by degree and monic flag."""
    n = constraint.n
    degrees = [n] if constraint.exact else range(1, n + 1)
    leads = [1] if constraint.monic else range(1, hmax + 1)
    for d in degrees:
        for lead in leads:
            for middle in cartesian(range(-hmax, hmax + 1), repeat=d - 1):
                yield tuple(middle) + (lead,) + (0,) * (n - d)


def _tail_count(constraint: Constraint, hmax: int) -> int:
    n = constraint.n
    degrees = [n] if constraint.exact else range(1, n + 1)
    leads = 1 if constraint.monic else hmax
    return sum(leads * (2 * hmax + 1) ** (d - 1) for d in degrees)


def _constant_walk(center: Fraction, hmax: int) -> Iterator[int]:
    """Integers in [-hmax, hmax] in order of distance from ``center``."""
    base = math.floor(center)
    left, right = min(base, hmax), max(base + 1, -hmax)
    while left >= -hmax or right <= hmax:
        if right > hmax or (left >= -hmax and center - left <= right - center):
            yield left
            left -= 1
        else:
            yield right
            right += 1


def _pareto_constants(tail: Coefficients, oracle: ValueOracle, constraint: Constraint, hmax: int) -> Iterator[Coefficients]:
    """Constant terms for one tail that no other constant term beats in both height and value.

    One candidate past the first height-optimal one is kept so near half-integer ties survive.
    """
    t = max(abs(c) for c in tail)
    s = Interval.point(0)
    for k, c in enumerate(tail, start=1):
        if c:
            s = s + oracle.powers[k] * c
    best_height = None
    extra = 1
    for c0 in _constant_walk(-s.mid, hmax):
        coefficients = (c0,) + tail
        if constraint.exact and not constraint.admits(IntPoly(coefficients)):
            continue
        height = max(t, abs(c0))
        if best_height is None or height < best_height:
            best_height = height
            yield coefficients
        elif best_height == t:
            yield coefficients
        if best_height == t:
            if extra == 0:
                return
            extra -= 1


def _sweep(pool: Dict[Coefficients, Interval], oracle: ValueOracle, records: List[ApproxRecord],
           constraint: Constraint) -> List[ApproxRecord]:
    """Merges candidate coefficient vectors (with quick values) into the record list."""
    known = {tuple(r.polynomial.coefficients): r for r in records}
    items = [(max(abs(c) for c in coefficients), quick, coefficients) for coefficients, quick in pool.items()
             if IntPoly(coefficients).coefficients not in known]
    items.extend((r.height, r.value, tuple(r.polynomial.coefficients) + (0,) * (oracle.n + 1 - len(r.polynomial.coefficients)))
                 for r in records)
    items.sort(key=lambda item: (item[0], item[1].lo, item[2]))
    result: List[ApproxRecord] = []
    best_hi = None
    for height, quick, coefficients in items:
        if best_hi is not None and quick.lo >= best_hi:
            continue
        P = IntPoly(coefficients)
        record = known.get(P.coefficients)
        if record is None:
            record = ApproxRecord(P, height, oracle.certified(P), constraint=constraint)
        if result and not _strictly_below(record, result[-1], oracle):
            continue
        if result and result[-1].height == height:
            result[-1] = record
        else:
            result.append(record)
        best_hi = record.value.hi
    return result


def _strictly_below(candidate: ApproxRecord, incumbent: ApproxRecord, oracle: ValueOracle) -> bool:
    if candidate.value.hi < incumbent.value.lo:
        return True
    if candidate.value.lo >= incumbent.value.hi:
        return False
    # overlapping enclosures: tighten both once
    for record in (candidate, incumbent):
        if not record.value.is_point:
            record.value = oracle.certified(record.polynomial, Fraction(1, 2 ** 40))
    return candidate.value.hi < incumbent.value.lo


def exhaustive_records(zeta: CFNumber, constraint: Constraint, hmax: int, oracle: ValueOracle = None) -> List[ApproxRecord]:
    """Records up to ``hmax`` from a scan of every tail (c_1, ..., c_n)."""
    oracle = oracle or ValueOracle(zeta, constraint.n)
    pool: Dict[Coefficients, Interval] = {}
    for tail in _tails(constraint, hmax):
        for coefficients in _pareto_constants(tail, oracle, constraint, hmax):
            pool[coefficients] = oracle.quick(coefficients)
    logger.debug("Exhaustive scan of {} to height {}: {} candidates".format(zeta.name, hmax, len(pool)))
    return _sweep(pool, oracle, [], constraint)


def shell_candidates(oracle: ValueOracle, X: int, bound: Fraction, limit: int = ENUMERATION_LIMIT) -> List[Coefficients]:
    """Every coefficient vector with H <= X and |P(zeta)| <= bound (plus a few more), leading entry positive."""
    n = oracle.n
    if bound <= 0:
        return []
    bound = as_rational(bound)
    tol = bound / (X * (n + 1) * 2 ** 20)
    powers = [Fraction(1)] + [oracle.zeta.power_interval(k, tol).mid for k in range(1, n + 1)]
    rows = []
    for k in range(n + 1):
        row = [Fraction(0)] * (n + 2)
        row[k] = Fraction(1, X)
        row[n + 1] = powers[k] / bound
        rows.append(row)
    radius = math.sqrt(n + 2) + 2.0 ** -16
    found = lattice_points(rows, radius, limit=limit)
    return [canonical(u) for u in found if max(abs(c) for c in u) <= X]


def lattice_records(zeta: CFNumber, constraint: Constraint, hmax: int, start: int = 0,
                    records: List[ApproxRecord] = None, oracle: ValueOracle = None, limit: int = ENUMERATION_LIMIT,
                    deadline: float = None) -> RecordList:
    """Extends ``records`` (complete up to height ``start``) level by level to ``hmax``.

    At level X every polynomial with H <= X and |P(zeta)| below the current best value is
    enumerated from the reduced embedding, so each height shell is verified in full.
    """
    oracle = oracle or ValueOracle(zeta, constraint.n)
    records = list(records or [])
    X = start
    while X < hmax:
        if deadline is not None and time.monotonic() > deadline:
            logger.warning("Time budget reached at height {} for {}".format(X, zeta.name))
            return RecordList(records, truncated=True, hmax=X)
        complete = X
        X = min(hmax, max(1, X * LEVEL_FACTOR))
        if records and records[-1].is_exact_hit:
            break
        bound = records[-1].value.hi if records else oracle.magnitude_bound(X)
        try:
            found = shell_candidates(oracle, X, bound, limit)
        except BudgetExceededError:
            logger.warning("Enumeration limit {} reached at height {} for {}".format(limit, X, zeta.name))
            return RecordList(records, truncated=True, hmax=complete)
        pool = {}
        for coefficients in found:
            if constraint.admits(IntPoly(coefficients)):
                pool[coefficients] = oracle.quick(coefficients)
        records = _sweep(pool, oracle, records, constraint)
        logger.debug("Level {}: {} lattice candidates, {} records".format(X, len(found), len(records)))
    return RecordList(records, hmax=hmax)


def best_records(zeta: CFNumber, constraint: Constraint, hmax: int, method: str = "auto",
                 limit: int = ENUMERATION_LIMIT, time_limit: float = None) -> RecordList:
    """Best approximation records with H <= hmax under the constraint.

    ``method`` is ``"exhaustive"``, ``"lattice"`` or ``"auto"`` (exhaustive up to height 30,
    lattice levels above).
    """
    if not isinstance(hmax, int) or hmax < 1:
        raise ValueError("hmax must be a positive integer, got {!r}".format(hmax))
    if method not in ("auto", "exhaustive", "lattice"):
        raise ValueError("Unknown record method {!r}".format(method))
    oracle = ValueOracle(zeta, constraint.n)
    deadline = time.monotonic() + time_limit if time_limit else None
    start_height = min(hmax, EXHAUSTIVE_LIMIT)
    if method == "exhaustive" or (method == "auto" and _tail_count(constraint, start_height) <= EXHAUSTIVE_TAIL_LIMIT):
        if method == "exhaustive":
            start_height = hmax
        records = exhaustive_records(zeta, constraint, start_height, oracle)
        result = lattice_records(zeta, constraint, hmax, start_height, records, oracle, limit, deadline)
    else:
        result = lattice_records(zeta, constraint, hmax, 0, [], oracle, limit, deadline)
    logger.info("{} records for {} under {} up to height {}{}".format(
        len(result), zeta.name, constraint.symbol(), hmax, " (truncated)" if result.truncated else ""))
    return result
