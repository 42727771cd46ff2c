"""Primes p for which Q + pP or P + pQ picks up a linear factor.

A rational root r of R_p = Q + pP fixes p = -Q(r)/P(r), so the candidates come from
the divisor structure of the end coefficients rather than from scanning primes.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple
import logging
import sympy

from ..errors import DiophlabError, UnsupportedDegreeError
from ..polynomials.intpoly import IntPoly
from ..polynomials.irreducible import is_irreducible
from ..polynomials.roots import has_linear_factor, rational_roots

logger = logging.getLogger(__name__)


class FilterInstance:
    """A pair P, Q with deg Q = n, Q(0) = 0, deg P < n and no common linear factor."""

    def __init__(self, P: IntPoly, Q: IntPoly):
        self.P = P
        self.Q = Q
        self.check()

    @property
    def n(self) -> int:
        return self.Q.degree

    @property
    def X(self) -> int:
        return max(self.P.height, self.Q.height)

    def check(self):
        P, Q = self.P, self.Q
        if P.is_zero:
            raise ValueError("P must be nonzero")
        if Q.degree < 2:
            raise ValueError("Q must have degree n >= 2, got {}".format(Q.degree))
        if P.degree > Q.degree - 1:
            raise ValueError("deg P = {} must stay below n = {}".format(P.degree, Q.degree))
        if Q.constant != 0:
            raise ValueError("Q(0) must vanish, got {}".format(Q.constant))
        if P.constant == 0:
            raise ValueError("P(0) must be nonzero")
        common = rational_roots(P) & rational_roots(Q)
        if common:
            raise ValueError("P and Q share the linear factor(s) with roots {}".format(sorted(common)))
        a = [Q.coefficient(k) for k in range(1, self.n + 1)]
        b = [P.coefficient(k) for k in range(0, self.n)]
        # proportional vectors make Q / (T P) constant
        if all(a[i] * b[j] == a[j] * b[i] for i in range(self.n) for j in range(self.n)):
            raise ValueError("Q(T) / (T P(T)) is constant for P={} Q={}".format(P, Q))

    def reversed(self) -> "FilterInstance":
        """Instance whose R-family is the reciprocal of this instance's S-family."""
        n = self.n
        return FilterInstance(self.Q.reversed(n), self.P.reversed(n))

    def R(self, p: int) -> IntPoly:
        return combine(self, 1, p)

    def S(self, p: int) -> IntPoly:
        return self.P + self.Q * p

    def to_json(self) -> Dict[str, List[int]]:
        return {"P": self.P.to_json(), "Q": self.Q.to_json()}

    def __repr__(self) -> str:
        return "FilterInstance(P={}, Q={})".format(self.P, self.Q)


def combine(inst: FilterInstance, a: int, b: int) -> IntPoly:
    """a Q + b P; a multiplies the degree n polynomial."""
    if a == 0 and b == 0:
        raise ValueError("combine needs (a, b) != (0, 0)")
    return inst.Q * a + inst.P * b


def theorem_bound(n: int, X: int) -> int:
    """Above n X^(n+1) neither family has a linear factor."""
    if n < 2 or X < 1:
        raise ValueError("theorem_bound needs n >= 2 and X >= 1, got n={} X={}".format(n, X))
    return n * X ** (n + 1)


def _signed_divisors(m: int) -> List[int]:
    ds = sympy.divisors(abs(m))
    return ds + [-d for d in ds]


def _r_family_candidates(inst: FilterInstance) -> Set[int]:
    """Primes p for which Q + pP may have a rational root s/t."""
    P, Q = inst.P, inst.Q
    a_n, b_0 = Q.leading, P.constant
    candidates = set()
    denominators = sympy.divisors(abs(a_n))
    numerators = _signed_divisors(b_0)
    for t in denominators:
        for s in numerators:
            r = Fraction(s, t)
            # p does not divide s: p = -Q(r) / P(r)
            P_r = P(r)
            if P_r != 0:
                h = -Q(r) / P_r
                if h.denominator == 1 and h.numerator > 1 and sympy.isprime(h.numerator):
                    candidates.add(int(h.numerator))
            # p divides s, r = p s / t: p | s^(k-1) N_k for the first nonzero N_k = a_k s + b_(k-1) t
            for k in range(1, inst.n + 1):
                N_k = Q.coefficient(k) * s + P.coefficient(k - 1) * t
                if N_k:
                    candidates.update(int(p) for p in sympy.primefactors(abs(N_k * s)))
                    break
    return candidates


def is_bad_prime(inst: FilterInstance, p: int) -> bool:
    return has_linear_factor(inst.R(p)) or has_linear_factor(inst.S(p))


def bad_primes(inst: FilterInstance, bound: Optional[int] = None, verify: bool = True) -> List[int]:
    """Sorted primes p <= bound (all of them when bound is None) with R_p or S_p having a linear factor."""
    if bound is not None and bound < 2:
        raise ValueError("bound must be at least 2, got {}".format(bound))
    candidates = _r_family_candidates(inst) | _r_family_candidates(inst.reversed())
    if bound is not None:
        candidates = {p for p in candidates if p <= bound}
    found = sorted(p for p in candidates if is_bad_prime(inst, p))
    if verify:
        for p in found:
            roots = rational_roots(inst.R(p)) | rational_roots(inst.S(p))
            if not roots:
                raise DiophlabError("Reported bad prime {} has no rational root for {}".format(p, inst))
    return found


def bad_primes_oracle(inst: FilterInstance, bound: int) -> List[int]:
    """Plain loop over every prime up to ``bound``."""
    return [int(p) for p in sympy.primerange(2, bound + 1) if is_bad_prime(inst, p)]


def find_good_prime(inst: FilterInstance) -> int:
    """Smallest prime for which neither R_p nor S_p has a linear factor."""
    bad = set(bad_primes(inst, None, verify=False))
    p = 2
    while p in bad or is_bad_prime(inst, p):
        p = int(sympy.nextprime(p))
    limit = theorem_bound(inst.n, inst.X)
    if p > limit:
        logger.warning("Good prime {} lies above n X^(n+1) = {} for {}".format(p, limit, inst))
    return p


def irreducible_combination(inst: FilterInstance) -> Tuple[int, IntPoly]:
    """(p, Q + pP) for the smallest good prime; irreducible when n is 2 or 3."""
    if inst.n not in (2, 3):
        raise UnsupportedDegreeError("A missing linear factor only proves irreducibility for n in (2, 3), got n={}".format(inst.n))
    p = find_good_prime(inst)
    R = combine(inst, 1, p)
    if not is_irreducible(R):
        raise DiophlabError("{} has no linear factor yet factors".format(R))
    logger.info("Irreducible combination for {}: p={} gives {}".format(inst, p, R))
    return p, R
