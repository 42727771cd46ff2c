"""Outward-rounded logarithms and square roots for the reporting layer.

Certified comparisons never go through here; these enclosures only feed slope and
exponent summaries.
"""
from contextlib import contextmanager
from fractions import Fraction
from typing import Optional
import mpmath
from mpmath import iv

from .interval import Interval, as_rational

LOG_PRECISION = 96


@contextmanager
def _precision(bits: int):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _to_iv(value: Fraction):
    value = as_rational(value)
    return iv.mpf(value.numerator) / iv.mpf(value.denominator)


def _endpoints(x) -> Interval:
    lo_p, lo_q = mpmath.libmp.to_rational(x.a._mpi_[0])
    hi_p, hi_q = mpmath.libmp.to_rational(x.b._mpi_[1])
    return Interval(Fraction(lo_p, lo_q), Fraction(hi_p, hi_q))


def log_interval(value: Interval) -> Interval:
    """Enclosure of log over a positive rational interval."""
    if value.lo <= 0:
        raise ValueError("log needs a positive interval, got {}".format(value))
    with _precision(LOG_PRECISION):
        x = iv.mpf([_to_iv(value.lo).a, _to_iv(value.hi).b])
        return _endpoints(iv.log(x))


def log_base(value: Interval, base: Interval) -> Interval:
    """Enclosure of log(value)/log(base) with base > 1."""
    if base.lo <= 1:
        raise ValueError("log base must exceed 1, got {}".format(base))
    if value.lo <= 0:
        raise ValueError("log needs a positive interval, got {}".format(value))
    with _precision(LOG_PRECISION):
        x = iv.mpf([_to_iv(value.lo).a, _to_iv(value.hi).b])
        b = iv.mpf([_to_iv(base.lo).a, _to_iv(base.hi).b])
        return _endpoints(iv.log(x) / iv.log(b))


def neg_log_slope(value: Interval, height) -> Optional[Interval]:
    """Enclosure of -log(value)/log(height), None when value may vanish."""
    if value.lo <= 0:
        return None
    height = as_rational(height)
    if height <= 1:
        raise ValueError("Slopes need a height above 1, got {}".format(height))
    return -log_base(value, Interval.point(height))


def to_float(value: Fraction) -> float:
    """Float for display only; huge magnitudes go through mpmath to avoid overflow."""
    value = as_rational(value)
    try:
        return float(value)
    except OverflowError:
        with mpmath.workprec(64):
            return float(mpmath.mpf(value.numerator) / value.denominator)


def sqrt_interval(value) -> Interval:
    """Outward-rounded enclosure of the square root of a non-negative rational."""
    value = as_rational(value)
    if value < 0:
        raise ValueError("sqrt needs a non-negative value, got {}".format(value))
    with _precision(LOG_PRECISION):
        return _endpoints(iv.sqrt(_to_iv(value)))
