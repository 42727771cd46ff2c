"""Rational roots and real root isolation over exact rationals.

Isolation counts sign variations of a Sturm sequence: the number of distinct real
roots in (a, b] equals V(a) - V(b).
"""
from fractions import Fraction
from typing import List, Set, Tuple
import logging
import sympy

from ..arith.interval import Interval, as_rational
from .intpoly import IntPoly

logger = logging.getLogger(__name__)


def rational_roots(P: IntPoly) -> Set[Fraction]:
    """All rational roots of P, tested exactly from divisors of its end coefficients."""
    if P.is_zero:
        raise ValueError("The zero polynomial has every number as a root")
    P = P.primitive_part()
    roots = set()
    k = P.low_order()
    if k:
        roots.add(Fraction(0))
        P = IntPoly(P.coefficients[k:])
    if P.degree < 1:
        return roots
    numerators = sympy.divisors(abs(P.constant))
    denominators = sympy.divisors(abs(P.leading))
    for b in denominators:
        for a in numerators:
            if sympy.igcd(a, b) != 1:
                continue
            for candidate in (Fraction(a, b), Fraction(-a, b)):
                if P(candidate) == 0:
                    roots.add(candidate)
    return roots


def has_linear_factor(P: IntPoly) -> bool:
    """True iff the primitive part of P has a degree one factor over the integers."""
    if P.is_zero:
        raise ValueError("has_linear_factor is undefined for the zero polynomial")
    if P.degree < 1:
        return False
    return len(rational_roots(P)) > 0


def squarefree_part(P: IntPoly) -> IntPoly:
    return IntPoly.from_sympy(sympy.sqf_part(P.to_sympy())).primitive_part()


def cauchy_bound(P: IntPoly) -> int:
    """Integer B with every complex root of P strictly inside |z| < B."""
    lead = abs(P.leading)
    ratio = max((Fraction(abs(c), lead) for c in P.coefficients[:-1]), default=Fraction(0))
    return int(ratio) + 2


class SturmSequence:

    def __init__(self, P: IntPoly):
        chain = sympy.sturm(P.to_sympy())
        self.chain: List[Tuple[Fraction, ...]] = []
        for poly in chain:
            coefficients = tuple(Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs()))
            self.chain.append(coefficients)

    @staticmethod
    def _sign_at(coefficients, x: Fraction) -> int:
        acc = Fraction(0)
        for c in reversed(coefficients):
            acc = acc * x + c
        return (acc > 0) - (acc < 0)

    def variations(self, x: Fraction) -> int:
        signs = [s for s in (self._sign_at(c, x) for c in self.chain) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """Number of distinct real roots in (lo, hi]."""
        return self.variations(lo) - self.variations(hi)


def _split_point(P: IntPoly, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    step = 3
    while P(mid) == 0:
        mid = lo + (hi - lo) / step
        step += 1
    return mid


def bisect_root(P: IntPoly, interval: Interval) -> Interval:
    """One bisection step on an interval holding a simple root with a sign change."""
    lo, hi = interval.lo, interval.hi
    if lo == hi:
        return interval
    mid = (lo + hi) / 2
    s_mid = P.sign_at(mid)
    if s_mid == 0:
        return Interval.point(mid)
    if P.sign_at(lo) * s_mid < 0:
        return Interval(lo, mid)
    return Interval(mid, hi)


def refine_root(P: IntPoly, interval: Interval, abs_tol) -> Interval:
    """Bisect an isolating interval of a simple root down to width abs_tol."""
    abs_tol = as_rational(abs_tol)
    if abs_tol <= 0:
        raise ValueError("abs_tol must be positive, got {}".format(abs_tol))
    while interval.width > abs_tol:
        interval = bisect_root(P, interval)
    return interval


def isolate_real_roots(P: IntPoly) -> List[Interval]:
    """Pairwise disjoint intervals, each holding exactly one real root of P, sorted."""
    if P.is_zero:
        raise ValueError("Cannot isolate the roots of the zero polynomial")
    if P.degree < 1:
        return []
    S = squarefree_part(P)
    if S.degree == 1:
        return [Interval.point(Fraction(-S.constant, S.leading))]
    sturm = SturmSequence(S)
    B = Fraction(cauchy_bound(S))
    found = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        count = sturm.count(lo, hi)
        if count == 0:
            continue
        if count == 1:
            found.append(Interval(lo, hi))
            continue
        mid = _split_point(S, lo, hi)
        stack.append((mid, hi))
        stack.append((lo, mid))
    found.sort(key=lambda i: i.lo)
    # neighbours may share an endpoint that is not a root; pull them apart
    for k in range(len(found) - 1):
        while found[k].intersects(found[k + 1]):
            found[k] = bisect_root(S, found[k])
            if found[k].intersects(found[k + 1]):
                found[k + 1] = bisect_root(S, found[k + 1])
    return found
