"""Uniform inhomogeneous exponent of one real number: min over 1 <= x_1 <= X of ||alpha + x_1 zeta||."""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple
import logging
from sympy import ilcm

from ..arith.continued_fraction import CFNumber
from ..arith.interval import Interval, as_rational
from ..polynomials.intpoly import IntPoly
from ..records import ApproxRecord, ExponentEstimate
from .estimation import check_grid, uniform_from_series

logger = logging.getLogger(__name__)

START_BITS = 32
MAX_ROUNDS = 8


def first_hit(a: int, b: int, m: int, lo: int, hi: int) -> Optional[int]:
    """Smallest x >= 0 with lo <= (a x + b) mod m <= hi, or None."""
    if not 0 <= lo <= hi < m:
        raise ValueError("Need 0 <= lo <= hi < m, got lo={} hi={} m={}".format(lo, hi, m))
    a, b = a % m, b % m
    left = (lo - b) % m
    right = left + (hi - lo)
    if right < m:
        return _first_hit0(a, m, left, right)
    hits = [x for x in (_first_hit0(a, m, left, m - 1), _first_hit0(a, m, 0, right - m)) if x is not None]
    return min(hits) if hits else None


def _first_hit0(a: int, m: int, lo: int, hi: int) -> Optional[int]:
    """Smallest x >= 0 with lo <= a x mod m <= hi for 0 <= lo <= hi < m.

    Euclid-style descent on (a, m): when no multiple of a falls in [lo, hi] the problem
    moves to m y mod a, whose answer y fixes x.
    """
    frames = []
    while True:
        if lo == 0:
            result = 0
            break
        a %= m
        if a == 0:
            result = None
            break
        k = -(-lo // a)
        if a * k <= hi:
            result = k
            break
        frames.append((a, m, lo, hi))
        a, m, lo, hi = m % a, a, (a - hi % a) % a, (a - lo % a) % a
    for a, m, lo, hi in reversed(frames):
        if result is None:
            return None
        y = result
        result = -(-(lo + m * y) // a)
        if a * result - m * y > hi:
            result = None
    return result


def _reach(a: int, b: int, m: int, t: int) -> Optional[int]:
    """Smallest x >= 0 with a x + b within t of a multiple of m."""
    t = min(t, m // 2)
    hits = [first_hit(a, b, m, 0, t)]
    if t > 0:
        hits.append(first_hit(a, b, m, m - t, m - 1))
    hits = [x for x in hits if x is not None]
    return min(hits) if hits else None


def _distance(r: int, m: int) -> int:
    r %= m
    return min(r, m - r)


def min_residue(a: int, b: int, m: int, X: int, rel_tol=Fraction(1, 256)) -> Tuple[int, int, int]:
    """Bracket of d = min over 1 <= x <= X of the distance of a x + b to the nearest multiple of m.

    Returns (lower, upper, x) with lower <= d <= upper, upper attained at x, and
    upper - lower <= rel_tol * lower unless lower is 0.
    """
    if X < 1:
        raise ValueError("X must be at least 1, got {}".format(X))
    rel_tol = as_rational(rel_tol)
    b1 = (a + b) % m

    def hit(t: int) -> Optional[int]:
        x = _reach(a, b1, m, t)
        return x if x is not None and x < X else None

    x = hit(0)
    if x is not None:
        return 0, 0, x + 1
    # smallest k with a hit within 2^k
    lo_k, hi_k = 0, max(1, (m // 2).bit_length())
    while lo_k < hi_k:
        k = (lo_k + hi_k) // 2
        if hit(2 ** k) is not None:
            hi_k = k
        else:
            lo_k = k + 1
    lower = 2 ** (lo_k - 1) + 1 if lo_k > 0 else 1
    upper = min(2 ** lo_k, m // 2)
    while upper - lower > rel_tol * lower:
        t = (lower + upper) // 2
        if hit(t) is not None:
            upper = t
        else:
            lower = t + 1
    x = hit(upper)
    return lower, _distance(a * x + b1, m), x + 1


def _evaluate(zeta: CFNumber, coefficients: Sequence[Fraction], abs_tol: Fraction) -> Interval:
    scale = sum(abs(c) for c in coefficients) + 1
    acc = Interval.point(coefficients[0] if coefficients else 0)
    for k in range(1, len(coefficients)):
        if coefficients[k]:
            acc = acc + zeta.power_interval(k, abs_tol / scale) * coefficients[k]
    return acc


def _dyadic(value: Interval, M: int) -> Tuple[int, Fraction]:
    numerator = round(value.mid * M)
    center = Fraction(numerator, M)
    return numerator, max(abs(value.lo - center), abs(value.hi - center))


def _symbolic_zero(coefficients: Sequence[Fraction], X: int) -> Optional[Tuple[int, int]]:
    """(x_0, x_1) when alpha = -x_0 - x_1 zeta with 1 <= x_1 <= X in the given representation."""
    if any(c != 0 for c in coefficients[2:]):
        return None
    c0 = coefficients[0] if coefficients else Fraction(0)
    c1 = coefficients[1] if len(coefficients) > 1 else Fraction(0)
    if c0.denominator != 1 or c1.denominator != 1 or not 1 <= -c1 <= X:
        return None
    return -int(c0), -int(c1)


class InhomogeneousOracle:
    """Certified min over 1 <= x_1 <= X, x_0 in Z of |alpha + x_0 + x_1 zeta| for one (zeta, alpha)."""

    def __init__(self, zeta: CFNumber, alpha: Sequence, rel_tol=Fraction(1, 64)):
        self.zeta = zeta
        self.coefficients = [as_rational(c) for c in alpha]
        self.rel_tol = as_rational(rel_tol)
        self.exact = None
        value = zeta.rational_value()
        if value is not None:
            alpha_value = sum(c * value ** k for k, c in enumerate(self.coefficients))
            self.exact = (value, alpha_value)

    def _exact_residue(self, X: int) -> Tuple[Interval, int, int]:
        value, alpha_value = self.exact
        M = int(ilcm(value.denominator, alpha_value.denominator))
        A, B = value.numerator * (M // value.denominator), alpha_value.numerator * (M // alpha_value.denominator)
        lower, upper, x1 = min_residue(A, B, M, X, self.rel_tol)
        x0 = -round(Fraction(A * x1 + B, M))
        if upper == 0:
            return Interval.point(0), x0, x1
        return Interval(Fraction(lower, M), Fraction(upper, M)), x0, x1

    def best(self, X: int) -> Tuple[Interval, int, int]:
        """(enclosure of the minimum, x_0, x_1) for the given X."""
        hit = _symbolic_zero(self.coefficients, X)
        if hit is not None:
            return Interval.point(0), hit[0], hit[1]
        if self.exact is not None:
            return self._exact_residue(X)
        bits = START_BITS + 2 * X.bit_length()
        for _ in range(MAX_ROUNDS):
            M = 2 ** bits
            tol = Fraction(1, 4 * M)
            A, e_z = _dyadic(self.zeta.enclose(tol), M)
            B, e_a = _dyadic(_evaluate(self.zeta, self.coefficients, tol), M)
            lower, upper, x1 = min_residue(A, B, M, X, self.rel_tol / 4)
            error = e_a + X * e_z
            value = Interval(max(Fraction(lower, M) - error, 0), Fraction(upper, M) + error)
            x0 = -round(Fraction(A * x1 + B, M))
            if value.lo > 0 and value.width <= self.rel_tol * value.lo:
                return value, x0, x1
            bits *= 2
        logger.warning("Inhomogeneous minimum at X={} not resolved after {} bits".format(X, bits))
        return value, x0, x1


def inhom_w1_hat(zeta: CFNumber, alpha: Sequence, xgrid: Sequence[int], rel_tol=Fraction(1, 64)) -> ExponentEstimate:
    """Uniform estimate of the inhomogeneous exponent, the smallest slope over ``xgrid``.

    ``alpha`` is the coefficient list (constant first) of a rational polynomial evaluated at zeta.
    """
    grid = check_grid(xgrid)
    oracle = InhomogeneousOracle(zeta, alpha, rel_tol)
    points: List[Tuple[int, ApproxRecord, Interval]] = []
    for X in grid:
        value, x0, x1 = oracle.best(X)
        record = ApproxRecord(IntPoly([x0, x1]), x1, value)
        points.append((X, record, value))
        logger.debug("X={}: |alpha + {} + {} zeta| in {}".format(X, x0, x1, value))
    extra = {"alpha": [str(c) for c in oracle.coefficients], "zeta": zeta.name}
    return uniform_from_series("ŵ_1(ζ,α)", points, heuristic=False, extra=extra)
