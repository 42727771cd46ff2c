"""Continued fractions of real algebraic numbers, computed exactly from their polynomials."""
from fractions import Fraction
from typing import List, Sequence
import logging

from ..arith.continued_fraction import CFNumber, DEFAULT_MAX_INDEX
from ..arith.interval import Interval, ceil_fraction, floor_fraction
from ..errors import DiophlabError
from ..polynomials.intpoly import IntPoly
from ..polynomials.roots import bisect_root
from ..polynomials.witness import AlgebraicWitness, real_roots

logger = logging.getLogger(__name__)


class RootTracker:
    """Partial quotient generator for the unique root of ``poly`` inside ``interval``.

    After emitting a = floor(x) the root moves to y = 1/(x - a), a root of
    y^d R(a + 1/y); the isolating interval is mapped along.
    """

    def __init__(self, poly: IntPoly, interval: Interval):
        self.poly = poly
        self.interval = interval
        self.next_index = 0

    def _settle_floor(self) -> int:
        while True:
            lo, hi = self.interval.lo, self.interval.hi
            a = floor_fraction(lo)
            if a == ceil_fraction(hi) - 1 and lo > a:
                return a
            self.interval = bisect_root(self.poly, self.interval)
            if self.interval.is_point:
                raise DiophlabError("Rational root {} met while expanding {}".format(self.interval.lo, self.poly))

    def __call__(self, cf: CFNumber, index: int) -> int:
        if index != self.next_index:
            raise DiophlabError("Root tracker asked for a_{} while at a_{}".format(index, self.next_index))
        a = self._settle_floor()
        lo, hi = self.interval.lo, self.interval.hi
        self.poly = self.poly.shift(a).reversed(self.poly.degree).primitive_part()
        self.interval = Interval(1 / (hi - a), 1 / (lo - a))
        self.next_index += 1
        return a


def select_root(P: IntPoly, interval: Interval) -> AlgebraicWitness:
    """The unique real root of P inside ``interval``."""
    inside: List[AlgebraicWitness] = []
    for witness in real_roots(P):
        while True:
            I = witness.isolating_interval
            if interval.contains(I):
                inside.append(witness)
                break
            if not interval.intersects(I):
                break
            witness.enclose(I.width / 2)
    if len(inside) != 1:
        raise ValueError("{} has {} real roots in {}, expected exactly one".format(P, len(inside), interval))
    return inside[0]


def algebraic_cf(P: IntPoly, interval: Interval, name: str = None, max_terms: int = None,
                 bit_limit: int = None, max_index: int = DEFAULT_MAX_INDEX) -> CFNumber:
    """Lazy continued fraction of the real root of P isolated by ``interval``."""
    witness = select_root(P, interval)
    name = name or "root of {} in [{}, {}]".format(witness.minimal_polynomial, interval.lo, interval.hi)
    if witness.is_rational:
        value = witness.isolating_interval.lo
        return CFNumber.from_rational(value, name=name)
    tracker = RootTracker(witness.minimal_polynomial, witness.isolating_interval)
    return CFNumber(generator=tracker, name=name, max_terms=max_terms, bit_limit=bit_limit,
                    max_index=max_index, minimal_polynomial=witness.minimal_polynomial)


def _convergent_pair(quotients: Sequence[int]):
    """(p_k, q_k, p_{k-1}, q_{k-1}) of a finite word."""
    p, q, p_prev, q_prev = 1, 0, 0, 1
    for a in quotients:
        p, q, p_prev, q_prev = a * p + p_prev, a * q + q_prev, p, q
    return p, q, p_prev, q_prev


def periodic_minimal_polynomial(preperiod: Sequence[int], period: Sequence[int]) -> IntPoly:
    """Quadratic minimal polynomial of [preperiod; period, period, ...]."""
    P_k, Q_k, P_prev, Q_prev = _convergent_pair(period)
    # the tail y satisfies Q_k y^2 + (Q_{k-1} - P_k) y - P_{k-1} = 0
    p, q, p_prev, q_prev = _convergent_pair(preperiod)
    # zeta = (p y + p') / (q y + q'), so y = (q' zeta - p') / (p - q zeta)
    A = IntPoly([-p_prev, q_prev])
    B = IntPoly([p, -q])
    poly = Q_k * (A * A) + (Q_prev - P_k) * (A * B) - P_prev * (B * B)
    return poly.primitive_part()


def periodic_cf(preperiod: Sequence[int], period: Sequence[int], name: str = None,
                max_terms: int = None, bit_limit: int = None) -> CFNumber:
    """Eventually periodic continued fraction; ``preperiod`` starts with a_0."""
    preperiod, period = list(preperiod), list(period)
    if not preperiod:
        raise ValueError("The preperiod must contain at least a_0")
    if not period or any(a < 1 for a in period):
        raise ValueError("The period must be a nonempty list of positive integers, got {}".format(period))

    def generate(cf: CFNumber, index: int) -> int:
        if index < len(preperiod):
            return preperiod[index]
        return period[(index - len(preperiod)) % len(period)]

    name = name or "[{}; ({})]".format(",".join(map(str, preperiod)), ",".join(map(str, period)))
    return CFNumber(generator=generate, name=name, max_terms=max_terms, bit_limit=bit_limit,
                    minimal_polynomial=periodic_minimal_polynomial(preperiod, period))


def golden(**kwargs) -> CFNumber:
    return periodic_cf([1], [1], name="golden", **kwargs)


def sqrt2(**kwargs) -> CFNumber:
    return periodic_cf([1], [2], name="sqrt2", **kwargs)


def cbrt2(**kwargs) -> CFNumber:
    return algebraic_cf(IntPoly([-2, 0, 0, 1]), Interval(1, 2), name="cbrt2", **kwargs)


NAMED = {"golden": golden, "sqrt2": sqrt2, "cbrt2": cbrt2}
