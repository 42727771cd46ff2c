from fractions import Fraction
from typing import List, Optional, Sequence, Tuple
import logging

from ..arith.continued_fraction import CFNumber
from ..arith.interval import Interval, as_rational, floor_fraction
from ..arith.logs import neg_log_slope
from ..errors import BudgetExceededError, NoWitnessError, PreconditionViolation
from ..polynomials.intpoly import IntPoly
from ..polynomials.witness import AlgebraicWitness, irreducible_factors, nearest_root
from ..records import BEST_RECORDS, UNIFORM_GRID, ApproxRecord, Constraint, ExponentEstimate, RecordList
from .approximation import ENUMERATION_LIMIT, ValueOracle, best_records, shell_candidates

logger = logging.getLogger(__name__)

EXPONENT_DENOMINATOR = 256
# keeps base ** numerator below about a million bits
EXACT_CHECK_BITS = 2 ** 20
MIN_GRID_POINTS = 4
DS_CONSTANT = Fraction(160, 9)


def coarse_upper(x: Fraction, bits: int = 64) -> Fraction:
    """Dyadic upper bound of a positive rational with about ``bits`` significant bits."""
    x = as_rational(x)
    if x <= 0:
        raise ValueError("coarse_upper needs a positive value, got {}".format(x))
    shift = bits - (x.numerator.bit_length() - x.denominator.bit_length())
    if shift >= 0:
        return Fraction(-(-(x.numerator << shift) // x.denominator), 1 << shift)
    return Fraction(-(-x.numerator // (x.denominator << -shift)) << -shift)


def satisfies_exponent(value_hi: Fraction, base, w: Fraction) -> bool:
    """Exact test of value_hi <= base^(-w) by integer powering, w = a/b."""
    w = as_rational(w)
    base = as_rational(base)
    if value_hi <= 0:
        return True
    v = coarse_upper(value_hi)
    return v ** w.denominator * base ** w.numerator <= 1


def certify_exponent(value: Interval, base, slope: Interval) -> Optional[Fraction]:
    """Largest dyadic w <= slope.lo with value.hi <= base^(-w) checked exactly, or None."""
    base = as_rational(base)
    denominator = EXPONENT_DENOMINATOR
    magnitude = max(abs(slope.lo), 1) * max(base.numerator.bit_length(), 1)
    while denominator > 1 and magnitude * denominator > EXACT_CHECK_BITS:
        denominator //= 2
    w = Fraction(floor_fraction(slope.lo * denominator), denominator)
    for _ in range(4):
        if satisfies_exponent(value.hi, base, w):
            return w
        w -= Fraction(1, denominator)
    return None


def _symbol_for(records: Sequence[ApproxRecord], uniform: bool = False, starred: bool = False) -> str:
    constraint = next((r.constraint for r in records if r.constraint is not None), None)
    if constraint is None:
        return ("ŵ" if uniform else "w") + ("^{*}" if starred else "")
    return constraint.symbol(uniform=uniform, starred=starred)


def estimate_w(records: Sequence[ApproxRecord], symbol: str = None, min_height: int = 2) -> ExponentEstimate:
    """max over records of -log|P(zeta)| / log H(P), each candidate checked exactly.

    Records below ``min_height`` are left out of the maximum; exact hits always count.
    """
    if not records:
        raise NoWitnessError("estimate_w needs at least one record")
    symbol = symbol or _symbol_for(records)
    series: List[Tuple[int, Interval]] = []
    best, witness = None, None
    hit = None
    for record in records:
        if record.is_exact_hit:
            hit = hit or record
            continue
        if record.height < max(2, min_height):
            continue
        slope = neg_log_slope(record.value, record.height)
        if slope is None:
            continue
        series.append((record.height, slope))
        w = certify_exponent(record.value, record.height, slope)
        if w is not None and (best is None or w > best):
            best, witness = w, record
    series.sort(key=lambda item: item[0])
    summary = {"records": len(records), "min_height": max(2, min_height)}
    if isinstance(records, RecordList):
        summary.update({"hmax": records.hmax, "truncated": records.truncated})
    if hit is not None:
        logger.info("{}: exact hit {} gives an infinite exponent".format(symbol, hit.polynomial))
        return ExponentEstimate(symbol, best, series, BEST_RECORDS, witness=hit, infinite=True, summary=summary)
    logger.info("{} >= {} from {} records".format(symbol, best, len(records)))
    return ExponentEstimate(symbol, best, series, BEST_RECORDS, witness=witness, summary=summary)


def check_grid(grid: Sequence, minimum: int = MIN_GRID_POINTS) -> List[int]:
    if grid is None or len(grid) == 0:
        raise ValueError("The grid is empty")
    grid = [int(X) for X in grid]
    if len(grid) < minimum:
        raise ValueError("The grid needs at least {} points, got {}".format(minimum, len(grid)))
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("The grid must be increasing, got {}".format(grid))
    if grid[0] < 2:
        raise ValueError("Grid points must be at least 2, got {}".format(grid[0]))
    return grid


def uniform_from_series(symbol: str, points: Sequence[Tuple[int, Optional[ApproxRecord], Interval]],
                        heuristic: bool, extra: dict = None) -> ExponentEstimate:
    """Minimum of per-X slopes over every point; ``points`` holds (X, best record or None, value at X).

    An exact hit at the last point is kept for every larger X, so the exponent is infinite.
    """
    series, certified = [], []
    for X, record, value in points:
        if value is not None and value.is_point and value.lo == 0:
            continue
        slope = neg_log_slope(value, X) if value is not None else None
        if slope is None:
            certified.append((None, record))
            continue
        series.append((X, slope))
        certified.append((certify_exponent(value, X, slope), record))
    grid = [X for X, _, _ in points]
    summary = {"grid": grid, "range": [grid[0], grid[-1]], "certified_on_grid": not heuristic}
    summary.update(extra or {})
    last = points[-1][2]
    if last is not None and last.is_point and last.lo == 0:
        return ExponentEstimate(symbol, None, series, UNIFORM_GRID, witness=points[-1][1], heuristic=heuristic,
                                infinite=True, summary=summary)
    if any(w is None for w, _ in certified):
        lower, witness = None, None
    else:
        lower, witness = min(certified, key=lambda item: item[0])
    summary["grid_value"] = lower
    logger.info("{} over [{}, {}]: minimum {}{}".format(symbol, grid[0], grid[-1], lower,
                                                        " (heuristic)" if heuristic else ""))
    return ExponentEstimate(symbol, lower, series, UNIFORM_GRID, witness=witness, heuristic=heuristic, summary=summary)


def critical_points(grid: Sequence[int], heights: Sequence[int]) -> List[int]:
    """X = H - 1 for every record height H inside the grid range.

    The best value is constant between consecutive record heights while log X grows, so the
    slope over the range is smallest at the grid ends or just below a record height.
    """
    return sorted({H - 1 for H in heights if grid[0] < H <= grid[-1]} - set(grid))


def estimate_uniform(zeta: CFNumber, constraint: Constraint, xgrid: Sequence[int],
                     records: RecordList = None, **kwargs) -> ExponentEstimate:
    """For each X the best record with H <= X; the minimum of -log value / log X over [X_first, X_last].

    The minimum runs over the grid points and the critical X just below each record height.
    Claims are labelled heuristic when the records were truncated.
    """
    grid = check_grid(xgrid)
    if records is None:
        records = best_records(zeta, constraint, grid[-1], **kwargs)
    truncated = getattr(records, "truncated", False)
    critical = critical_points(grid, [r.height for r in records])
    points = []
    for X in sorted(set(grid) | set(critical)):
        below = [r for r in records if r.height <= X]
        best = below[-1] if below else None
        points.append((X, best, best.value if best else None))
    estimate = uniform_from_series(constraint.symbol(uniform=True), points, heuristic=truncated,
                                   extra={"hmax": getattr(records, "hmax", None), "critical": critical})
    estimate.summary["grid"] = grid
    return estimate


def _derivative_bound(zeta: CFNumber, n: int) -> Fraction:
    """sum_k k (|zeta| + 1)^(k-1): bounds |P'| / H(P) within distance 1 of zeta."""
    size = zeta.enclose(Fraction(1, 2 ** 32)).max_abs + 1
    return sum(k * size ** (k - 1) for k in range(1, n + 1))


def minimal_polynomial_scan(zeta: CFNumber, constraint: Constraint, hmax: int, target: Fraction,
                            limit: int = ENUMERATION_LIMIT) -> Tuple[List[IntPoly], bool]:
    """Irreducible P with H(P) <= hmax that may have a root alpha with |zeta - alpha| H <= H^(-target).

    Height shells (X/2, X] are enumerated with |P(zeta)| <= X D d, where d bounds the distance
    at the bottom of the shell and D is the mean value constant. Returns (polynomials, complete).
    """
    n = constraint.n
    oracle = ValueOracle(zeta, n)
    slope = _derivative_bound(zeta, n)
    exponent = max(floor_fraction(target), 0) + 1
    out, seen = [], set()
    previous = 0
    while previous < hmax:
        X = min(hmax, max(1, 2 * previous))
        low = previous + 1
        bound = X * slope * Fraction(1, low ** exponent)
        try:
            found = shell_candidates(oracle, X, bound, limit)
        except BudgetExceededError:
            logger.warning("Minimal polynomial scan for {} stopped at height {}".format(zeta.name, previous))
            return out, False
        for coefficients in found:
            P = IntPoly(coefficients)
            if P.height < low or P in seen or not constraint.admits(P):
                continue
            seen.add(P)
            if irreducible_factors(P) == [P]:
                out.append(P)
        previous = X
    return out, True


def estimate_w_star(zeta: CFNumber, constraint: Constraint, hmax: int, records: RecordList = None,
                    scan: bool = True, **kwargs) -> ExponentEstimate:
    """Algebraic witnesses alpha of degree <= n, scored by -log(|zeta - alpha| H(alpha)) / log H(alpha).

    Candidates are the roots of the best approximation polynomials and, with ``scan``, every
    irreducible P with H(P) <= hmax whose value at zeta is small enough to beat them.
    """
    if records is None:
        records = best_records(zeta, constraint, hmax, **kwargs)
    symbol = constraint.symbol(starred=True)
    series, best, witness, hit = [], None, None, None
    seen = set()

    def score(P: IntPoly):
        nonlocal best, witness
        try:
            alpha, distance = nearest_root(P, zeta, Fraction(1, 64))
        except (NoWitnessError, PreconditionViolation):
            return
        key = (alpha.minimal_polynomial, alpha.isolating_interval.lo)
        if key in seen or not constraint.admits(alpha.minimal_polynomial):
            return
        seen.add(key)
        H = alpha.height
        if H < 2 or distance.lo <= 0:
            return
        value = distance * H
        slope = neg_log_slope(value, H)
        if slope is None:
            return
        series.append((H, slope))
        w = certify_exponent(value, H, slope)
        if w is not None and (best is None or w > best):
            best = w
            witness = ApproxRecord(alpha, H, distance, constraint=constraint, kind="root")

    for record in records:
        if record.is_exact_hit:
            hit = hit or record
            continue
        score(record.polynomial)
    if hit is not None:
        return ExponentEstimate(symbol, best, series, BEST_RECORDS, witness=hit, infinite=True)
    summary = {"hmax": hmax, "from_records": len(series)}
    if scan:
        candidates, complete = minimal_polynomial_scan(zeta, constraint, hmax, best if best is not None else Fraction(0))
        for P in candidates:
            score(P)
        summary.update({"scanned": len(candidates), "scan_complete": complete})
    if not series:
        raise NoWitnessError("No algebraic witness for {} under {} up to height {}".format(zeta.name, symbol, hmax))
    series.sort(key=lambda item: item[0])
    logger.info("{} >= {} from {} algebraic witnesses".format(symbol, best, len(series)))
    return ExponentEstimate(symbol, best, series, BEST_RECORDS, witness=witness, summary=summary)


def estimate_lambda(zeta: CFNumber, n: int, xmax: int, bits: int = 64, min_height: int = 2) -> ExponentEstimate:
    """Best simultaneous approximations x <= xmax: max_j ||x zeta^j|| against x^(-lambda).

    Only x >= ``min_height`` enter the maximum.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer, got {!r}".format(n))
    if xmax < 2:
        raise ValueError("xmax must be at least 2, got {}".format(xmax))
    tol = Fraction(1, 2 ** bits * xmax)
    powers = [zeta.power_interval(k, tol) for k in range(1, n + 1)]
    series, best, witness, hit = [], None, None, None
    record_hi = None
    for x in range(1, xmax + 1):
        parts = []
        for p in powers:
            scaled = p * x
            nearest = round(scaled.mid)
            parts.append(abs(scaled - nearest))
        value = Interval(max(v.lo for v in parts), max(v.hi for v in parts))
        if record_hi is not None and value.lo >= record_hi:
            continue
        record_hi = value.hi
        coefficients = [x] + [round((p * x).mid) for p in powers]
        record = ApproxRecord(IntPoly([-coefficients[1], x]), x, value)
        if value.is_point and value.lo == 0:
            hit = record
            break
        if x < max(2, min_height) or value.lo <= 0:
            continue
        slope = neg_log_slope(value, x)
        series.append((x, slope))
        w = certify_exponent(value, x, slope)
        if w is not None and (best is None or w > best):
            best, witness = w, record
    symbol = "λ_{}".format(n)
    summary = {"xmax": xmax, "min_height": max(2, min_height)}
    if hit is not None:
        return ExponentEstimate(symbol, best, series, BEST_RECORDS, witness=hit, infinite=True, summary=summary)
    logger.info("{} >= {} from simultaneous approximations up to {}".format(symbol, best, xmax))
    return ExponentEstimate(symbol, best, series, BEST_RECORDS, witness=witness, summary=summary)


def ds_constant(zeta: CFNumber) -> Interval:
    """(160/9) max(1, zeta^2); a straddling enclosure keeps its larger endpoint."""
    square = zeta.power_interval(2, Fraction(1, 2 ** 64))
    return square.max_with(1) * DS_CONSTANT


def ds_witnesses(zeta: CFNumber, hmax: int, show_progress_bar: bool = False) -> List[Tuple[AlgebraicWitness, Interval]]:
    """Quadratic irrationals alpha with H(alpha) <= hmax and |zeta - alpha| <= c H(alpha)^(-3).

    Returns (alpha, |zeta - alpha| H(alpha)^3) pairs sorted by height.
    """
    if zeta.rational_value() is not None:
        raise PreconditionViolation("{} is rational".format(zeta.name))
    if zeta.minimal_polynomial is not None and zeta.minimal_polynomial.degree <= 2:
        raise PreconditionViolation("{} is algebraic of degree {}".format(zeta.name, zeta.minimal_polynomial.degree))
    threshold = ds_constant(zeta).hi
    constraint = Constraint.exactly(2)
    oracle = ValueOracle(zeta, 2)
    derivative = [Interval.point(1), oracle.powers[1] * 2]
    out = []
    previous = 0
    X = 1
    while previous < hmax:
        X = min(hmax, max(1, 2 * previous))
        low = previous + 1
        # |P(zeta)| <= |P'(zeta)| d + 3 H d^2 with d <= c H^-3 and |P'(zeta)| <= H (1 + 2|zeta|)
        reach = threshold * Fraction(1, low ** 3)
        bound = X * (1 + 2 * oracle.powers[1].max_abs) * reach + 3 * X * reach ** 2
        for coefficients in shell_candidates(oracle, X, bound):
            H = max(abs(c) for c in coefficients)
            if H < low:
                continue
            P = IntPoly(coefficients)
            if P.degree != 2 or not constraint.admits(P):
                continue
            value = oracle.quick(coefficients)
            d = threshold / H ** 3
            slope_bound = (derivative[0] * coefficients[1] + derivative[1] * coefficients[2]).max_abs
            if value.lo > slope_bound * d + 3 * H * d * d:
                continue
            certified = oracle.certified(P)
            if certified.is_point and certified.lo == 0:
                raise PreconditionViolation("{} is a root of {}".format(zeta.name, P))
            try:
                alpha, distance = nearest_root(P, zeta, Fraction(1, 64))
            except NoWitnessError:
                continue
            c_value = distance * H ** 3
            if c_value.hi <= threshold:
                out.append((alpha, c_value))
        previous = X
        if show_progress_bar:
            logger.info("Quadratic witnesses up to height {}: {}".format(X, len(out)))
    out.sort(key=lambda item: (item[0].height, item[0].isolating_interval.lo))
    logger.info("{} quadratic witnesses for {} up to height {} below c = {}".format(
        len(out), zeta.name, hmax, float(threshold)))
    return out


def minimal_c_value(witnesses: Sequence[Tuple[AlgebraicWitness, Interval]]) -> Optional[Interval]:
    if not witnesses:
        return None
    return min((c for _, c in witnesses), key=lambda c: (c.hi, c.lo))
