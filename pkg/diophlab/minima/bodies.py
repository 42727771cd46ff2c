from abc import ABC, abstractmethod
from fractions import Fraction
from itertools import product as cartesian
from math import gcd
from typing import Iterator, List, Sequence, Tuple
import logging
from sympy import integer_nthroot

from ..arith.continued_fraction import CFNumber
from ..arith.interval import Interval, as_rational, ceil_fraction, floor_fraction, interval_max

logger = logging.getLogger(__name__)

SIMULTANEOUS = "Simultaneous"
DUAL = "Dual"
KINDS = (SIMULTANEOUS, DUAL)

Vector = Tuple[int, ...]


def nth_root_interval(value: Fraction, n: int, bits: int) -> Interval:
    """Enclosure of value^(1/n) of width at most 2^-bits (value > 0)."""
    value = as_rational(value)
    if n == 1:
        return Interval.point(value)
    scale = 2 ** bits
    # floor(value * scale^n) = floor(num * scale^n / den)
    radicand = value.numerator * scale ** n // value.denominator
    root, exact = integer_nthroot(radicand, n)
    root = int(root)
    if exact and value.numerator * scale ** n % value.denominator == 0:
        return Interval.point(Fraction(root, scale))
    return Interval(Fraction(root, scale), Fraction(root + 1, scale))


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class Enclosures:
    """Rational enclosures of zeta^k (k = 1..n) and of Q^(1/n) at a working precision.

    ``scaled`` keeps floor/ceil of the zeta^k endpoints times 2^bits for integer filtering.
    """

    def __init__(self, zeta: CFNumber, n: int, Q: Fraction, bits: int):
        self.bits = bits
        self.scale = 2 ** bits
        tol = Fraction(1, self.scale)
        self.powers: List[Interval] = [Interval.point(1)] + [zeta.power_interval(k, tol) for k in range(1, n + 1)]
        self.scaled: List[Tuple[int, int]] = [
            (floor_fraction(p.lo * self.scale), ceil_fraction(p.hi * self.scale)) for p in self.powers]
        self.root_q = nth_root_interval(Q, n, bits)


class BaseBody(ABC):
    """A parametric convex body B(Q, 0) given through its gauge (norm) on Z^(n+1)."""

    kind: str = None

    def __init__(self, zeta: CFNumber, n: int, Q):
        Q = as_rational(Q)
        if not isinstance(n, int) or n < 1:
            raise ValueError("Body dimension n must be a positive integer, got {!r}".format(n))
        if Q <= 1:
            raise ValueError("Body parameter Q must exceed 1, got {}".format(Q))
        self.zeta = zeta
        self.n = n
        self.Q = Q

    @abstractmethod
    def norm(self, v: Vector, enc: Enclosures) -> Interval:
        pass

    @abstractmethod
    def candidates(self, radius: Fraction, enc: Enclosures) -> Iterator[Vector]:
        """Superset of the sign-normalised primitive vectors with norm at most ``radius``."""
        pass

    @abstractmethod
    def box_size(self, radius: Fraction, enc: Enclosures) -> int:
        """Number of free coordinate tuples ``candidates`` walks through."""
        pass

    @abstractmethod
    def embedding(self, enc: Enclosures) -> List[List[Fraction]]:
        """Rows approximating the norm geometry of the unit vectors, used to seed reduction."""
        pass

    @property
    def dimension(self) -> int:
        return self.n + 1

    def __repr__(self) -> str:
        return "{}(n={}, Q={}, zeta={})".format(self.kind, self.n, self.Q, self.zeta.name)


def normalise(v: Sequence[int]) -> Vector:
    """Sign so that the first nonzero entry is positive."""
    for c in v:
        if c:
            return tuple(v) if c > 0 else tuple(-x for x in v)
    return tuple(v)


def is_primitive_vector(v: Sequence[int]) -> bool:
    g = 0
    for c in v:
        g = gcd(g, c)
    return g == 1


class SimultaneousBody(BaseBody):
    """max(|x| / Q, Q^(1/n) max_j |zeta^j x - y_j|) on vectors (x, y_1, ..., y_n)."""

    kind = SIMULTANEOUS

    def norm(self, v: Vector, enc: Enclosures) -> Interval:
        x = v[0]
        parts = [Interval.point(Fraction(abs(x)) / self.Q)]
        for j in range(1, self.n + 1):
            parts.append(abs(enc.powers[j] * x - v[j]) * enc.root_q)
        return interval_max(parts)

    def _ranges(self, radius: Fraction, enc: Enclosures):
        x_max = floor_fraction(radius * self.Q)
        # scaled bound on |zeta^j x - y_j| <= radius / Q^(1/n)
        reach = ceil_fraction(radius * enc.scale / enc.root_q.lo)
        y_bound = floor_fraction(radius / enc.root_q.lo)
        return x_max, reach, y_bound

    def box_size(self, radius: Fraction, enc: Enclosures) -> int:
        x_max, _, y_bound = self._ranges(radius, enc)
        # every x in 1..x_max scans a window of at most 2 y_bound + 2 values per coordinate
        return x_max * (2 * y_bound + 2) ** self.n + (2 * y_bound + 1) ** self.n

    def candidates(self, radius: Fraction, enc: Enclosures) -> Iterator[Vector]:
        x_max, reach, y_bound = self._ranges(radius, enc)
        scale = enc.scale
        # x = 0: the y part alone, first nonzero positive
        if y_bound >= 1:
            for ys in cartesian(range(-y_bound, y_bound + 1), repeat=self.n):
                v = (0,) + ys
                if any(ys) and normalise(v) == v and is_primitive_vector(v):
                    yield v
        for x in range(1, x_max + 1):
            ranges = []
            for j in range(1, self.n + 1):
                lo_s, hi_s = enc.scaled[j]
                lo = _ceil_div(x * lo_s - reach, scale)
                hi = (x * hi_s + reach) // scale
                if lo > hi:
                    break
                ranges.append(range(lo, hi + 1))
            else:
                for ys in cartesian(*ranges):
                    v = (x,) + ys
                    if is_primitive_vector(v):
                        yield v

    def embedding(self, enc: Enclosures) -> List[List[Fraction]]:
        n, Q, r = self.n, self.Q, enc.root_q.mid
        rows = [[1 / Q] + [r * enc.powers[j].mid for j in range(1, n + 1)]]
        for j in range(1, n + 1):
            row = [Fraction(0)] * (n + 1)
            row[j] = -r
            rows.append(row)
        return rows


class DualBody(BaseBody):
    """max(H(P) / Q^(1/n), Q |P(zeta)|) on coefficient vectors (c_0, ..., c_n)."""

    kind = DUAL

    def value(self, c: Vector, enc: Enclosures) -> Interval:
        acc = Interval.point(c[0])
        for k in range(1, self.n + 1):
            if c[k]:
                acc = acc + enc.powers[k] * c[k]
        return acc

    def norm(self, c: Vector, enc: Enclosures) -> Interval:
        height = max(abs(a) for a in c)
        return interval_max([Interval.point(height) / enc.root_q, abs(self.value(c, enc)) * self.Q])

    def _coefficient_bound(self, radius: Fraction, enc: Enclosures) -> int:
        return floor_fraction(radius * enc.root_q.hi)

    def box_size(self, radius: Fraction, enc: Enclosures) -> int:
        return (2 * self._coefficient_bound(radius, enc) + 1) ** self.n

    def candidates(self, radius: Fraction, enc: Enclosures) -> Iterator[Vector]:
        bound = self._coefficient_bound(radius, enc)
        if bound < 1:
            return
        scale = enc.scale
        # |P(zeta)| <= radius / Q
        slack = radius / self.Q
        reach = _ceil_div(slack.numerator * scale, slack.denominator)
        for tail in cartesian(range(-bound, bound + 1), repeat=self.n):
            lo_s, hi_s = 0, 0
            for k, c in enumerate(tail, start=1):
                if c >= 0:
                    lo_s += c * enc.scaled[k][0]
                    hi_s += c * enc.scaled[k][1]
                else:
                    lo_s += c * enc.scaled[k][1]
                    hi_s += c * enc.scaled[k][0]
            c0_lo = max(-bound, _ceil_div(-hi_s - reach, scale))
            c0_hi = min(bound, (-lo_s + reach) // scale)
            for c0 in range(c0_lo, c0_hi + 1):
                v = (c0,) + tail
                if any(v) and normalise(v[::-1]) == v[::-1] and is_primitive_vector(v):
                    yield v

    def embedding(self, enc: Enclosures) -> List[List[Fraction]]:
        n, Q, r = self.n, self.Q, enc.root_q.mid
        rows = []
        for k in range(0, n + 1):
            row = [Fraction(0)] * (n + 1)
            if k >= 1:
                row[k - 1] = 1 / r
            row[n] = Q * enc.powers[k].mid
            rows.append(row)
        return rows


def make_body(kind: str, zeta: CFNumber, n: int, Q) -> BaseBody:
    if kind == SIMULTANEOUS:
        return SimultaneousBody(zeta, n, Q)
    if kind == DUAL:
        return DualBody(zeta, n, Q)
    raise ValueError("Unknown body kind {!r}, expected one of {}".format(kind, KINDS))
