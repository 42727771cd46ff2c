from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple
import logging

from ..errors import ExpansionExhausted, ResourceLimitError
from .interval import Interval, as_rational, horner

logger = logging.getLogger(__name__)

# generator(cf, index) -> partial quotient a_index, or None once the expansion ends
QuotientGenerator = Callable[["CFNumber", int], Optional[int]]

DEFAULT_MAX_INDEX = 20000
DEFAULT_ABS_FLOOR = Fraction(1, 2 ** 64)


class CFNumber:
    """A real number given by its (possibly lazily generated) continued fraction expansion.

    Partial quotients and convergents are cached append-only. A finite expansion denotes
    the rational number of its last convergent.
    """

    def __init__(self,
                 quotients: Sequence[int] = None,
                 generator: QuotientGenerator = None,
                 name: str = None,
                 max_terms: int = None,
                 bit_limit: int = None,
                 max_index: int = DEFAULT_MAX_INDEX,
                 minimal_polynomial=None):
        self.name = name or "cf"
        self.max_terms = max_terms
        self.bit_limit = bit_limit
        self.max_index = max_index
        self.minimal_polynomial = minimal_polynomial
        self.truncated = False
        self._generator = generator
        self._finished = False
        self._quotients: List[int] = []
        # p_{-2}, p_{-1} and q_{-2}, q_{-1} are kept implicitly
        self._p: List[int] = []
        self._q: List[int] = []
        for a in quotients or []:
            if not self._append(a):
                break
        if generator is None:
            self._finished = True
        if not self._quotients and self._finished:
            raise ValueError("A continued fraction needs at least the term a_0")

    @classmethod
    def from_rational(cls, value, name: str = None) -> "CFNumber":
        value = as_rational(value)
        quotients = []
        num, den = value.numerator, value.denominator
        while den:
            a = num // den
            quotients.append(a)
            num, den = den, num - a * den
        cf = cls(quotients, name=name or str(value))
        cf.minimal_polynomial = _linear_minimal_polynomial(value)
        return cf

    @property
    def num_cached(self) -> int:
        return len(self._quotients)

    @property
    def quotients(self) -> List[int]:
        return list(self._quotients)

    @property
    def is_finished(self) -> bool:
        return self._finished

    def is_rational(self, lookahead: int = 0) -> bool:
        """True once the expansion is known to be finite; ``lookahead`` extends the cache first."""
        if lookahead:
            self._extend(self.num_cached + lookahead)
        return self._finished

    def rational_value(self) -> Optional[Fraction]:
        if not self._finished:
            return None
        return Fraction(self._p[-1], self._q[-1])

    def _prev_pq(self) -> Tuple[int, int, int, int]:
        i = len(self._quotients)
        if i == 0:
            return 1, 0, 0, 1
        if i == 1:
            return self._p[0], self._q[0], 1, 0
        return self._p[i - 1], self._q[i - 1], self._p[i - 2], self._q[i - 2]

    def _append(self, a: int) -> bool:
        index = len(self._quotients)
        if not isinstance(a, int):
            raise ValueError("Partial quotient a_{} must be an integer, got {!r}".format(index, a))
        if index >= 1 and a < 1:
            raise ValueError("Partial quotient a_{} must be positive, got {}".format(index, a))
        if self.max_terms is not None and index > self.max_terms:
            self._stop(truncated=True, reason="max_terms={} reached".format(self.max_terms))
            return False
        p1, q1, p2, q2 = self._prev_pq()
        p, q = a * p1 + p2, a * q1 + q2
        if self.bit_limit is not None and q.bit_length() > self.bit_limit:
            self._stop(truncated=True, reason="q_{} would exceed {} bits".format(index, self.bit_limit))
            return False
        self._quotients.append(a)
        self._p.append(p)
        self._q.append(q)
        return True

    def _stop(self, truncated: bool, reason: str):
        self._finished = True
        if truncated and self._generator is not None:
            self.truncated = True
            logger.warning("Expansion of {} truncated after {} terms: {}".format(self.name, len(self._quotients), reason))

    def _extend(self, upto: int):
        """Make sure indices 0..upto are cached, as far as the expansion goes."""
        while len(self._quotients) <= upto and not self._finished:
            index = len(self._quotients)
            if index > self.max_index:
                raise ResourceLimitError("Expansion of {} needs more than {} terms".format(self.name, self.max_index),
                                         best=self.bracket(index - 2))
            if self.max_terms is not None and index > self.max_terms:
                self._stop(truncated=True, reason="max_terms={} reached".format(self.max_terms))
                break
            a = self._generator(self, index)
            if a is None:
                self._stop(truncated=False, reason="generator finished")
                break
            self._append(a)

    def partial_quotient(self, i: int) -> int:
        if i < 0:
            raise ValueError("Index must be non-negative, got {}".format(i))
        self._extend(i)
        if i >= len(self._quotients):
            raise ExpansionExhausted(i, Fraction(self._p[-1], self._q[-1]))
        return self._quotients[i]

    def pq(self, i: int) -> Tuple[int, int]:
        if i < 0:
            raise ValueError("Index must be non-negative, got {}".format(i))
        self._extend(i)
        if i >= len(self._quotients):
            raise ExpansionExhausted(i, Fraction(self._p[-1], self._q[-1]))
        return self._p[i], self._q[i]

    def q(self, i: int) -> int:
        return self.pq(i)[1]

    def convergent(self, i: int) -> Fraction:
        p, q = self.pq(i)
        return Fraction(p, q)

    def bracket(self, i: int) -> Interval:
        """Interval spanned by convergents i and i+1, a point once the expansion is exhausted."""
        i = max(i, 0)
        self._extend(i + 1)
        n = len(self._quotients)
        if i + 1 < n:
            a, b = Fraction(self._p[i], self._q[i]), Fraction(self._p[i + 1], self._q[i + 1])
            return Interval(min(a, b), max(a, b))
        last = Fraction(self._p[-1], self._q[-1])
        return Interval.point(last)

    def enclose(self, abs_tol) -> Interval:
        abs_tol = as_rational(abs_tol)
        if abs_tol <= 0:
            raise ValueError("abs_tol must be positive, got {}".format(abs_tol))
        i = 0
        while True:
            if i > self.max_index:
                raise ResourceLimitError("Cannot enclose {} to width {}".format(self.name, abs_tol),
                                         best=self.bracket(i - 1))
            self._extend(i + 1)
            if i + 1 >= len(self._quotients):
                return self.bracket(i)
            # width of the bracket is exactly 1/(q_i q_{i+1})
            if abs_tol.denominator <= abs_tol.numerator * self._q[i] * self._q[i + 1]:
                return self.bracket(i)
            i += 1

    def power_interval(self, k: int, abs_tol) -> Interval:
        """Certified interval for zeta**k of width at most abs_tol."""
        abs_tol = as_rational(abs_tol)
        tol = abs_tol
        while True:
            interval = self.enclose(tol)
            result = interval ** k
            if result.width <= abs_tol:
                return result
            tol = tol / max(2 * k * (interval.max_abs + 1) ** max(k - 1, 0), 2)

    def floor(self) -> int:
        return self.partial_quotient(0)

    def __repr__(self) -> str:
        head = ",".join(str(a) for a in self._quotients[:6])
        tail = "" if self._finished and len(self._quotients) <= 6 else ",..."
        return "CFNumber({}: [{}{}])".format(self.name, head, tail)


def _linear_minimal_polynomial(value: Fraction):
    from ..polynomials.intpoly import IntPoly
    return IntPoly([-value.numerator, value.denominator])


def convergent(x: CFNumber, i: int) -> Fraction:
    return x.convergent(i)


def enclose(x: CFNumber, abs_tol) -> Interval:
    return x.enclose(abs_tol)


def eval_poly(P, x: CFNumber, rel_tol, abs_floor=DEFAULT_ABS_FLOOR) -> Interval:
    """Certified enclosure of P(x).

    The result either has width at most ``rel_tol * max(|lo|, |hi|)`` or contains zero and
    has width at most ``abs_floor``.
    """
    rel_tol = as_rational(rel_tol)
    abs_floor = as_rational(abs_floor)
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive, got {}".format(rel_tol))
    coefficients = list(P.coefficients)
    if not coefficients:
        return Interval.point(0)
    if x.minimal_polynomial is not None and P.is_divisible_by(x.minimal_polynomial):
        return Interval.point(0)
    i = 0
    while True:
        if i > x.max_index:
            raise ResourceLimitError("Evaluation of {} at {} did not converge".format(P, x.name),
                                     best=horner(coefficients, x.bracket(i - 1)))
        bracket = x.bracket(i)
        value = horner(coefficients, bracket)
        if bracket.is_point:
            return value
        if value.width <= rel_tol * value.max_abs:
            return value
        if value.contains_zero and value.width <= abs_floor:
            return value
        i += 1
