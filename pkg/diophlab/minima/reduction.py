"""LLL reduction and short-vector enumeration over rational embeddings."""
from fractions import Fraction
from typing import List, Sequence, Tuple
import math
import logging
import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.exceptions import DMRankError, DMShapeError

from ..errors import BudgetExceededError, DiophlabError
from .bodies import BaseBody, Enclosures, Vector, normalise

logger = logging.getLogger(__name__)

SEED_BITS = 48


def reduce(matrix: List[List[int]]) -> Tuple[List[List[int]], List[List[int]]]:
    """Reduced basis and the unimodular transform T with T * matrix == reduced."""
    tmp = [[int(v) for v in row] for row in matrix]
    reduced, transform = DM(tmp, ZZ).lll_transform()
    return ([[int(v) for v in row] for row in reduced.to_Matrix().tolist()],
            [[int(v) for v in row] for row in transform.to_Matrix().tolist()])


def scaled_embedding(body: BaseBody, enc: Enclosures, bits: int = SEED_BITS) -> List[List[int]]:
    scale = 2 ** (bits + body.Q.numerator.bit_length())
    return [[round(entry * scale) for entry in row] for row in body.embedding(enc)]


def unit_vectors(dimension: int) -> List[Vector]:
    return [tuple(1 if i == k else 0 for i in range(dimension)) for k in range(dimension)]


def seed_vectors(body: BaseBody, enc: Enclosures, bits: int = SEED_BITS) -> List[Vector]:
    """n+1 independent integer vectors that are short for the body's norm.

    Falls back to the unit vectors when the rounded embedding is degenerate.
    """
    try:
        _, transform = reduce(scaled_embedding(body, enc, bits))
    except (DMRankError, DMShapeError) as e:
        logger.debug("Reduction skipped for {}: {}".format(body, e))
        return unit_vectors(body.dimension)
    return [normalise(row) for row in transform]


def seed_radius(body: BaseBody, enc: Enclosures, vectors: List[Vector]) -> Fraction:
    """Certified upper bound on the last successive minimum."""
    radius = max(body.norm(v, enc).hi for v in vectors)
    # unit vectors are independent too; keep whichever family is shorter
    fallback = max(body.norm(v, enc).hi for v in unit_vectors(body.dimension))
    return min(radius, fallback)


def _scale_bits(rows: Sequence[Sequence[Fraction]], bits: int) -> int:
    smallest = min((abs(e) for row in rows for e in row if e), default=Fraction(1))
    return bits + max(0, smallest.denominator.bit_length() - smallest.numerator.bit_length() + 1)


def _gram_schmidt(basis: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    m = basis.shape[0]
    mu = np.zeros((m, m))
    star = np.array(basis, dtype=float)
    norms = np.zeros(m)
    for i in range(m):
        for j in range(i):
            mu[i, j] = basis[i] @ star[j] / norms[j]
            star[i] = star[i] - mu[i, j] * star[j]
        norms[i] = star[i] @ star[i]
    return mu, norms


def lattice_points(rows: Sequence[Sequence[Fraction]], radius: float, limit: int = None,
                   bits: int = SEED_BITS) -> List[Vector]:
    """Integer vectors u (sign-normalised, nonzero) with |u * rows| <= radius in the Euclidean norm.

    The embedding is rounded, reduced and enumerated in floating point (Fincke-Pohst), so the
    output is a superset up to a small radius slack; callers re-check every vector exactly.
    """
    s = _scale_bits(rows, bits)
    scale = 2 ** s
    reduced, transform = reduce([[round(e * scale) for e in row] for row in rows])
    basis = np.array([[x / scale for x in row] for row in reduced], dtype=float)
    mu, norms = _gram_schmidt(basis)
    if np.any(norms <= 0):
        raise DiophlabError("Degenerate embedding passed to lattice enumeration")
    m = len(norms)
    bound = radius * radius * (1 + 1e-9) + 1e-12
    found = set()
    z = [0] * m

    def visit(i: int, partial: float):
        center = -sum(z[j] * mu[j, i] for j in range(i + 1, m))
        span = math.sqrt(max(bound - partial, 0.0) / norms[i])
        for zi in range(math.ceil(center - span), math.floor(center + span) + 1):
            length = partial + (zi - center) ** 2 * norms[i]
            if length > bound:
                continue
            z[i] = zi
            if i == 0:
                u = tuple(sum(z[r] * transform[r][k] for r in range(m)) for k in range(len(transform[0])))
                if any(u):
                    found.add(normalise(u))
                    if limit is not None and len(found) > limit:
                        raise BudgetExceededError("More than {} lattice points within radius {}".format(limit, radius),
                                                  partial=sorted(found))
            else:
                visit(i - 1, length)
        z[i] = 0

    visit(m - 1, 0.0)
    return sorted(found)
