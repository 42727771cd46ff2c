from fractions import Fraction
from typing import Iterable, Union
import math

Rational = Fraction
Number = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Accepts ints, Fractions and strings such as ``"5/1"`` or ``"-3"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("Boolean {} is not a rational number".format(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError("Cannot parse {!r} as a rational number".format(value))
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError("Non-finite float {} is not a rational number".format(value))
        return Fraction(value)
    raise ValueError("Unsupported rational value {!r} of type {}".format(value, type(value).__name__))


def floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


class Interval:
    """Closed interval [lo, hi] with rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Number, hi: Number = None):
        lo = as_rational(lo)
        hi = lo if hi is None else as_rational(hi)
        if lo > hi:
            raise ValueError("Interval endpoints out of order: [{}, {}]".format(lo, hi))
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, value: Number) -> "Interval":
        return cls(value, value)

    @classmethod
    def hull(cls, values: Iterable[Number]) -> "Interval":
        values = [as_rational(v) for v in values]
        return cls(min(values), max(values))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def max_abs(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    @property
    def min_abs(self) -> Fraction:
        if self.contains_zero:
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    @property
    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, value) -> bool:
        if isinstance(value, Interval):
            return self.lo <= value.lo and value.hi <= self.hi
        value = as_rational(value)
        return self.lo <= value <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def strictly_below(self, other: "Interval") -> bool:
        return self.hi < other.lo

    def __add__(self, other) -> "Interval":
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        other = as_rational(other)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        if isinstance(other, Interval):
            return Interval(self.lo - other.hi, self.hi - other.lo)
        other = as_rational(other)
        return Interval(self.lo - other, self.hi - other)

    def __rsub__(self, other) -> "Interval":
        return (-self) + other

    def __mul__(self, other) -> "Interval":
        if isinstance(other, Interval):
            products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
            return Interval(min(products), max(products))
        other = as_rational(other)
        if other >= 0:
            return Interval(self.lo * other, self.hi * other)
        return Interval(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.contains_zero:
            raise ZeroDivisionError("Interval {} contains zero".format(self))
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "Interval":
        if isinstance(other, Interval):
            return self * other.reciprocal()
        other = as_rational(other)
        if other == 0:
            raise ZeroDivisionError("Division of {} by zero".format(self))
        return self * (1 / other)

    def __rtruediv__(self, other) -> "Interval":
        return self.reciprocal() * as_rational(other)

    def __pow__(self, k: int) -> "Interval":
        if not isinstance(k, int) or k < 0:
            raise ValueError("Only non-negative integer powers are supported, got {}".format(k))
        if k == 0:
            return Interval.point(1)
        lo_k, hi_k = self.lo ** k, self.hi ** k
        if self.lo >= 0 or k % 2 == 1:
            return Interval(lo_k, hi_k) if lo_k <= hi_k else Interval(hi_k, lo_k)
        if self.hi <= 0:
            return Interval(hi_k, lo_k)
        return Interval(0, max(lo_k, hi_k))

    def __abs__(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0, self.max_abs)

    def max_with(self, other) -> "Interval":
        other = other if isinstance(other, Interval) else Interval.point(other)
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def min_with(self, other) -> "Interval":
        other = other if isinstance(other, Interval) else Interval.point(other)
        return Interval(min(self.lo, other.lo), min(self.hi, other.hi))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return "Interval({}, {})".format(self.lo, self.hi)

    def to_json(self):
        return [str(self.lo), str(self.hi)]

    @classmethod
    def from_json(cls, data) -> "Interval":
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise ValueError("An interval must be a pair [lo, hi], got {!r}".format(data))
        return cls(as_rational(data[0]), as_rational(data[1]))


def interval_max(intervals: Iterable[Interval]) -> Interval:
    intervals = list(intervals)
    return Interval(max(i.lo for i in intervals), max(i.hi for i in intervals))


def interval_product(intervals: Iterable[Interval]) -> Interval:
    result = Interval.point(1)
    for interval in intervals:
        result = result * interval
    return result


def horner(coefficients, x: Interval) -> Interval:
    """Interval Horner evaluation, coefficients constant term first."""
    if not coefficients:
        return Interval.point(0)
    acc = Interval.point(coefficients[-1])
    for c in reversed(coefficients[:-1]):
        acc = acc * x + c
    return acc
