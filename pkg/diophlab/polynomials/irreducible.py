from itertools import product as cartesian
from typing import Optional, Tuple
import logging
import sympy

from ..errors import UnsupportedDegreeError
from .intpoly import IntPoly
from .roots import has_linear_factor

logger = logging.getLogger(__name__)

MAX_DEGREE = 4


def factor_height_bound(P: IntPoly) -> int:
    """Height bound for any integer factor of P, 2^deg(P) * H(P)."""
    return 2 ** P.degree * P.height


def quadratic_factor(P: IntPoly) -> Optional[Tuple[IntPoly, IntPoly]]:
    """Search a factorisation of a quartic into two integer quadratics.

    Leading coefficients run over positive divisors of a_4, constants over signed divisors
    of a_0, the middle coefficient over the factor height bound.
    """
    if P.degree != 4:
        raise ValueError("quadratic_factor expects a quartic, got degree {}".format(P.degree))
    bound = factor_height_bound(P)
    for c2 in sympy.divisors(abs(P.leading)):
        for d0 in sympy.divisors(abs(P.constant)) if P.constant else []:
            for c0 in (d0, -d0):
                for c1 in range(-bound, bound + 1):
                    A = IntPoly([c0, c1, c2])
                    B = P.exact_quotient(A)
                    if B is not None:
                        return A, B
    return None


def is_irreducible(P: IntPoly) -> bool:
    """Irreducibility over the rationals for degrees 1 to 4.

    Works on the primitive part, so integer content does not count as a factor.
    """
    if P.is_zero or not 1 <= P.degree <= MAX_DEGREE:
        raise UnsupportedDegreeError("is_irreducible supports degrees 1..{}, got {}".format(MAX_DEGREE, P.degree))
    P = P.primitive_part()
    if P.degree == 1:
        return True
    if has_linear_factor(P):
        return False
    if P.degree <= 3:
        return True
    return quadratic_factor(P) is None


def brute_force_factor(P: IntPoly, bound: int) -> Optional[Tuple[IntPoly, IntPoly]]:
    """Exhaustive factor search over all divisors of height at most ``bound``.

    Only the necessary end conditions prune the walk: the divisor's leading coefficient
    divides a_n and its constant divides a_0. Reference oracle for small inputs only.
    """
    P = P.primitive_part()
    leads = [b for b in range(1, bound + 1) if P.leading % b == 0]
    constants = [c for c in range(-bound, bound + 1) if P.constant == 0 or (c and P.constant % c == 0)]
    for d in range(1, P.degree // 2 + 1):
        for c0 in constants:
            for middle in cartesian(range(-bound, bound + 1), repeat=d - 1):
                for lead in leads:
                    A = IntPoly([c0] + list(middle) + [lead])
                    B = P.exact_quotient(A)
                    if B is not None and B.degree >= 1:
                        return A, B
    return None


def sympy_is_irreducible(P: IntPoly) -> bool:
    """Independent check through sympy's factoriser."""
    return bool(P.primitive_part().to_sympy().is_irreducible)
