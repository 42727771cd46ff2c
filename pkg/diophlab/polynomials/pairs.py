"""Statistics over pairs of integer polynomials: product heights and coprime value bounds."""
from fractions import Fraction
from itertools import product as cartesian
from math import isqrt
from typing import Any, Dict, List, Tuple
import logging
import random
import numpy as np
import sympy
from tqdm.autonotebook import tqdm

from ..arith.continued_fraction import CFNumber, eval_poly
from ..arith.interval import Interval
from .intpoly import IntPoly

logger = logging.getLogger(__name__)


def _primitive_block(degree: int, max_height: int) -> np.ndarray:
    """All primitive coefficient rows of exact degree ``degree``, height <= max_height, leading entry positive."""
    rows = [tail + (lead,) for lead in range(1, max_height + 1)
            for tail in cartesian(range(-max_height, max_height + 1), repeat=degree)]
    block = np.array(rows, dtype=np.int64).reshape(len(rows), degree + 1)
    return block[np.gcd.reduce(np.abs(block), axis=1) == 1]


def height_bracket(degree_sum: int) -> Tuple[Fraction, Fraction]:
    """[2^-(deg P + deg Q), deg P + deg Q + 1] for H(PQ) / (H(P) H(Q))."""
    return Fraction(1, 2 ** degree_sum), Fraction(degree_sum + 1)


def _extreme(P: np.ndarray, others: np.ndarray, products: np.ndarray, base: np.ndarray, index: int):
    ratio = Fraction(int(products[index]), int(base[index]))
    return ratio, (IntPoly(int(c) for c in P), IntPoly(int(c) for c in others[index]))


def gelfond_exhaustive(max_degree_sum: int = 6, max_height: int = 3, show_progress_bar: bool = False) -> Dict[str, Any]:
    """Height ratios of every pair of primitive polynomials with degrees >= 1 and the given limits.

    Pairs are taken up to sign and order. Returns the extremal ratios with their pairs and
    the number of bracket violations.
    """
    if max_degree_sum < 2 or max_height < 1:
        raise ValueError("Need max_degree_sum >= 2 and max_height >= 1, got {} and {}".format(max_degree_sum, max_height))
    blocks = {d: _primitive_block(d, max_height) for d in range(1, max_degree_sum)}
    heights = {d: np.abs(b).max(axis=1) for d, b in blocks.items()}
    pairs = [(d1, d2) for d1 in range(1, max_degree_sum) for d2 in range(d1, max_degree_sum) if d1 + d2 <= max_degree_sum]
    count, violations = 0, 0
    low, high = None, None
    for d1, d2 in tqdm(pairs, disable=not show_progress_bar, desc="Gelfond pairs"):
        lower, upper = height_bracket(d1 + d2)
        left, right = blocks[d1], blocks[d2]
        for i, P in enumerate(left):
            others = right[i:] if d1 == d2 else right
            other_heights = heights[d2][i:] if d1 == d2 else heights[d2]
            result = np.zeros((len(others), d1 + d2 + 1), dtype=np.int64)
            for k, c in enumerate(P):
                if c:
                    result[:, k:k + d2 + 1] += c * others
            products = np.abs(result).max(axis=1)
            base = int(heights[d1][i]) * other_heights
            # exact integer tests of lower <= H(PQ) / base <= upper
            bad = (products * lower.denominator < base * lower.numerator) | (products > base * int(upper))
            violations += int(bad.sum())
            count += len(others)
            ratios = products / base
            smallest, largest = _extreme(P, others, products, base, int(np.argmin(ratios))), \
                _extreme(P, others, products, base, int(np.argmax(ratios)))
            if low is None or smallest[0] < low[0]:
                low = smallest
            if high is None or largest[0] > high[0]:
                high = largest
    logger.info("Gelfond ratios over {} pairs (degree sum <= {}, height <= {}): min {} max {}, {} violations".format(
        count, max_degree_sum, max_height, low[0], high[0], violations))
    return {
        "pairs": count,
        "min_ratio": low[0],
        "min_pair": [p.to_json() for p in low[1]],
        "max_ratio": high[0],
        "max_pair": [p.to_json() for p in high[1]],
        "violations": violations,
    }


def coprime(P: IntPoly, Q: IntPoly) -> bool:
    return sympy.gcd(P.to_sympy(), Q.to_sympy()).degree() == 0


def random_coprime_pair(rng: random.Random, max_degree: int = 3, max_height: int = 5) -> Tuple[IntPoly, IntPoly]:
    while True:
        polys = []
        for _ in range(2):
            degree = rng.randint(1, max_degree)
            coefficients = [rng.randint(-max_height, max_height) for _ in range(degree)] + [rng.randint(1, max_height)]
            polys.append(IntPoly(coefficients))
        if coprime(*polys):
            return polys[0], polys[1]


def _sqrt_ceil(a: int, e: int) -> int:
    """Integer upper bound of a^(e/2)."""
    value = a ** e
    root = isqrt(value)
    return root if root * root == value else root + 1


def resultant_constants(m: int, n: int, zeta_size: Fraction) -> Tuple[Fraction, Fraction]:
    """(K_P, K_Q) with 1 <= K_P |P(z)| H(P)^(n-1) H(Q)^m + K_Q |Q(z)| H(P)^n H(Q)^(m-1).

    The cofactor polynomials of the resultant are bounded through Hadamard's inequality on the
    Sylvester matrix; ``zeta_size`` is an upper bound of max(1, |zeta|).
    """
    k_p = n * zeta_size ** (n - 1) * _sqrt_ceil(m + 1, n - 1) * _sqrt_ceil(n + 1, m)
    k_q = m * zeta_size ** (m - 1) * _sqrt_ceil(m + 1, n) * _sqrt_ceil(n + 1, m - 1)
    return k_p, k_q


def coprime_value_bounds(P: IntPoly, Q: IntPoly, zeta: CFNumber, rel_tol=Fraction(1, 1024)) -> Dict[str, Any]:
    """Both scaled values of a coprime pair and whether the resultant bound certifies one of them."""
    m, n = P.degree, Q.degree
    hp, hq = P.height, Q.height
    scaled_p = abs(eval_poly(P, zeta, rel_tol)) * (hp ** (n - 1) * Fraction(hq) ** m)
    scaled_q = abs(eval_poly(Q, zeta, rel_tol)) * (Fraction(hp) ** n * hq ** (m - 1))
    size = abs(zeta.enclose(Fraction(1, 2 ** 32))).max_with(1).hi
    k_p, k_q = resultant_constants(m, n, size)
    certified = k_p * scaled_p.lo >= Fraction(1, 2) or k_q * scaled_q.lo >= Fraction(1, 2)
    return {"P": P, "Q": Q, "scaled_P": scaled_p, "scaled_Q": scaled_q,
            "larger": scaled_p.max_with(scaled_q), "floor": Fraction(1, 2) / max(k_p, k_q), "certified": certified}


def coprime_corpus(zeta: CFNumber, size: int = 100, seed: int = 42, max_degree: int = 3, max_height: int = 5,
                   show_progress_bar: bool = False) -> Dict[str, Any]:
    """At least one of |P(z)| H(P)^(n-1) H(Q)^m, |Q(z)| H(P)^n H(Q)^(m-1) stays large over random coprime pairs.

    The smallest observed larger value is reported as the calibrated constant.
    """
    rng = random.Random(seed)
    rows: List[Dict[str, Any]] = []
    for _ in tqdm(range(size), disable=not show_progress_bar, desc="Coprime pairs"):
        P, Q = random_coprime_pair(rng, max_degree, max_height)
        rows.append(coprime_value_bounds(P, Q, zeta))
    weakest = min(rows, key=lambda r: r["larger"].lo)
    failed = [r for r in rows if not r["certified"]]
    logger.info("Coprime corpus of {} at {}: calibrated constant {:.4g}, {} uncertified".format(
        size, zeta.name, float(weakest["larger"].lo), len(failed)))
    return {
        "size": size,
        "calibrated_constant": weakest["larger"],
        "weakest_pair": [weakest["P"].to_json(), weakest["Q"].to_json()],
        "uncertified": [[r["P"].to_json(), r["Q"].to_json()] for r in failed],
        "passed": not failed,
    }
