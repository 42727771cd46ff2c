from fractions import Fraction
from typing import Any, Dict, List, Tuple
import logging
import sympy

from ..arith.continued_fraction import CFNumber, eval_poly
from ..arith.interval import Interval, as_rational
from ..errors import DiophlabError, NoWitnessError, PreconditionViolation
from ..records import ApproxRecord
from .intpoly import IntPoly
from .roots import isolate_real_roots, refine_root

logger = logging.getLogger(__name__)

MAX_REFINEMENTS = 256


class AlgebraicWitness:
    """A real algebraic number given by its minimal polynomial and an isolating interval."""

    def __init__(self, minimal_polynomial: IntPoly, isolating_interval: Interval):
        P = minimal_polynomial.primitive_part()
        if P.degree < 1:
            raise ValueError("A minimal polynomial needs degree at least 1, got {}".format(P))
        self.minimal_polynomial = P
        self.isolating_interval = isolating_interval

    @property
    def degree(self) -> int:
        return self.minimal_polynomial.degree

    @property
    def height(self) -> int:
        return self.minimal_polynomial.height

    @property
    def monic(self) -> bool:
        return self.minimal_polynomial.is_monic

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def enclose(self, abs_tol) -> Interval:
        """Narrows the isolating interval in place and returns it."""
        self.isolating_interval = refine_root(self.minimal_polynomial, self.isolating_interval, abs_tol)
        return self.isolating_interval

    def to_json(self) -> Dict[str, Any]:
        return {"poly": self.minimal_polynomial.to_json(),
                "interval": self.isolating_interval.to_json(),
                "H": self.height}

    def __repr__(self) -> str:
        return "AlgebraicWitness({}, {})".format(self.minimal_polynomial, self.isolating_interval)


def irreducible_factors(P: IntPoly) -> List[IntPoly]:
    _, factors = sympy.factor_list(P.to_sympy())
    return [IntPoly.from_sympy(f).primitive_part() for f, _ in factors if f.degree() >= 1]


def real_roots(P: IntPoly) -> List[AlgebraicWitness]:
    """Every real root of P with its irreducible factor, sorted by isolating interval."""
    witnesses = []
    for factor in irreducible_factors(P):
        for interval in isolate_real_roots(factor):
            witnesses.append(AlgebraicWitness(factor, interval))
    witnesses.sort(key=lambda w: w.isolating_interval.lo)
    return witnesses


def _equals_zeta(witness: AlgebraicWitness, zeta: CFNumber) -> bool:
    """Exact test of alpha == zeta for a zeta whose minimal polynomial or rational value is known."""
    value = zeta.rational_value()
    if value is not None:
        return witness.minimal_polynomial(value) == 0 and witness.isolating_interval.contains(value)
    if zeta.minimal_polynomial is None or zeta.minimal_polynomial.primitive_part() != witness.minimal_polynomial:
        return False
    tol = witness.isolating_interval.width or Fraction(1)
    for _ in range(MAX_REFINEMENTS):
        z = zeta.enclose(tol)
        I = witness.enclose(tol)
        if I.contains(z):
            return True
        if not I.intersects(z):
            return False
        tol /= 4
    raise DiophlabError("Could not decide whether {} equals {}".format(witness, zeta.name))


def root_distance(witness: AlgebraicWitness, zeta: CFNumber, rel_tol) -> Interval:
    """Enclosure of |zeta - alpha| with relative width at most rel_tol."""
    rel_tol = as_rational(rel_tol)
    if _equals_zeta(witness, zeta):
        return Interval.point(0)
    tol = max(witness.isolating_interval.width, Fraction(1, 2 ** 8))
    for _ in range(MAX_REFINEMENTS * 4):
        distance = abs(zeta.enclose(tol) - witness.enclose(tol))
        if distance.is_point or (not distance.contains_zero and distance.width <= rel_tol * distance.lo):
            return distance
        tol /= 16
    raise DiophlabError("Distance from {} to {} did not resolve".format(witness, zeta.name))


def nearest_root(P: IntPoly, zeta: CFNumber, tol) -> Tuple[AlgebraicWitness, Interval]:
    """Real root of P closest to zeta, ties going to the smaller root."""
    tol = as_rational(tol)
    if P.is_zero:
        raise ValueError("nearest_root needs a nonzero polynomial")
    at_zeta = eval_poly(P, zeta, Fraction(1, 2))
    if at_zeta.is_point and at_zeta.lo == 0:
        raise PreconditionViolation("{} is a root of {}".format(zeta.name, P))
    candidates = real_roots(P)
    if not candidates:
        raise NoWitnessError("{} has no real roots".format(P))
    abs_tol = Fraction(1)
    for _ in range(MAX_REFINEMENTS):
        z = zeta.enclose(abs_tol)
        distances = [abs(z - w.enclose(abs_tol)) for w in candidates]
        best_hi = min(d.hi for d in distances)
        keep = [k for k, d in enumerate(distances) if d.lo <= best_hi]
        candidates = [candidates[k] for k in keep]
        distances = [distances[k] for k in keep]
        if len(candidates) == 1 or all(d.is_point for d in distances):
            break
        abs_tol /= 4
    else:
        logger.debug("Roots of {} stay equidistant from {} at width {}".format(P, zeta.name, abs_tol))
    # candidates are sorted, the first one is the smaller root
    witness = candidates[0]
    return witness, root_distance(witness, zeta, tol)


def witness_convert(witness: AlgebraicWitness, zeta: CFNumber, constraint=None, rel_tol=Fraction(1, 64)) -> ApproxRecord:
    """Polynomial record of an algebraic witness, with the mean value bound on |P(zeta)| attached.

    |P(zeta)| <= D * H(P) * (1 + max(|zeta|, |alpha|))^(D-1) * |zeta - alpha|
    """
    P = witness.minimal_polynomial
    distance = root_distance(witness, zeta, rel_tol)
    value = abs(eval_poly(P, zeta, rel_tol))
    reach = zeta.enclose(Fraction(1, 2 ** 16)).max_abs
    reach = max(reach, witness.isolating_interval.max_abs)
    factor = P.degree * P.height * (1 + reach) ** (P.degree - 1)
    bound = distance * factor
    if value.lo > bound.hi:
        raise DiophlabError("Mean value bound fails for {} at {}: {} > {}".format(P, zeta.name, value, bound))
    return ApproxRecord(P, P.height, value, constraint=constraint, kind="poly", bound=bound)
