from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
import logging
from sympy import Matrix

from ..arith.interval import Interval, as_rational
from ..errors import BudgetExceededError, DiophlabError
from ..polynomials.intpoly import IntPoly
from .bodies import DUAL, BaseBody, Enclosures, Vector
from .reduction import seed_radius, seed_vectors, unit_vectors

logger = logging.getLogger(__name__)

DEFAULT_BITS = 40
DEFAULT_BUDGET = 2 * 10 ** 6
MAX_REFINEMENT_ROUNDS = 8


class MinimaResult:
    """Certified successive minima of one body with n+1 independent witnesses.

    An incomplete result (budget exhausted) carries lower bounds only; its witnesses are
    the reduction seed and its upper ends come from that seed.
    """

    def __init__(self, kind: str, n: int, Q: Fraction, lambdas: List[Interval], witnesses: List[Vector],
                 complete: bool = True, bits: int = None, examined: int = 0):
        self.kind = kind
        self.n = n
        self.Q = Q
        self.lambdas = lambdas
        self.witnesses = witnesses
        self.complete = complete
        self.bits = bits
        self.examined = examined

    @property
    def lower_bounds(self) -> List[Fraction]:
        return [lam.lo for lam in self.lambdas]

    def witness_polynomials(self) -> List[IntPoly]:
        if self.kind != DUAL:
            raise ValueError("Only dual witnesses are polynomials, this result is {}".format(self.kind))
        return [IntPoly(list(w)) for w in self.witnesses]

    def to_json(self) -> Dict[str, Any]:
        data = {
            "kind": self.kind,
            "n": self.n,
            "Q": self.Q,
            "lambdas": [lam.to_json() for lam in self.lambdas],
            "witnesses": [list(w) for w in self.witnesses],
            "complete": self.complete,
        }
        if self.kind == DUAL:
            data["polynomials"] = [p.to_json() for p in self.witness_polynomials()]
        return data

    def __repr__(self) -> str:
        return "MinimaResult({}, n={}, Q={}, complete={})".format(self.kind, self.n, self.Q, self.complete)


def is_independent(vectors: List[Vector]) -> bool:
    if not vectors:
        return True
    return Matrix(vectors).rank() == len(vectors)


def _greedy(candidates: List[Tuple[Vector, Interval]], key, dimension: int) -> List[Tuple[Vector, Interval]]:
    chosen = []
    for v, norm in sorted(candidates, key=key):
        if is_independent([c for c, _ in chosen] + [v]):
            chosen.append((v, norm))
            if len(chosen) == dimension:
                break
    return chosen


def _tie_key(item: Tuple[Vector, Interval]):
    v, norm = item
    return norm.hi, norm.lo, sum(abs(c) for c in v), v


def _partial(body: BaseBody, enc: Enclosures, vectors: List[Vector], radius: Fraction) -> MinimaResult:
    # any nonzero vector has |x| >= 1 or some |y_j| >= 1 (simultaneous), H >= 1 (dual)
    floor = 1 / enc.root_q.hi if body.kind == DUAL else 1 / body.Q
    lambdas = [Interval(floor, radius) for _ in range(body.dimension)]
    return MinimaResult(body.kind, body.n, body.Q, lambdas, vectors, complete=False, bits=enc.bits)


def successive_minima(body: BaseBody, rel_tol=Fraction(1, 64), budget: int = DEFAULT_BUDGET,
                      bits: int = DEFAULT_BITS, use_reduction: bool = True) -> MinimaResult:
    """lambda_1 <= ... <= lambda_(n+1) of the body as intervals of relative width <= rel_tol.

    Every primitive vector whose norm can lie below a certified radius is enumerated; the
    radius comes from the LLL-reduced embedding (or from the unit vectors).
    """
    rel_tol = as_rational(rel_tol)
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive, got {}".format(rel_tol))
    enc = Enclosures(body.zeta, body.n, body.Q, bits)
    vectors = seed_vectors(body, enc) if use_reduction else unit_vectors(body.dimension)
    radius = seed_radius(body, enc, vectors)
    box = body.box_size(radius, enc)
    logger.debug("{}: radius {} over a box of {} tuples".format(body, radius, box))
    if box > budget:
        logger.warning("Enumeration box {} for {} exceeds the budget {}".format(box, body, budget))
        raise BudgetExceededError("Enumeration box of {} exceeds the budget {} for {}".format(box, budget, body),
                                  partial=_partial(body, enc, vectors, radius))

    found = [v for v in body.candidates(radius, enc)]
    dimension = body.dimension
    for _ in range(MAX_REFINEMENT_ROUNDS):
        scored = [(v, body.norm(v, enc)) for v in found]
        scored = [(v, norm) for v, norm in scored if norm.lo <= radius]
        lower = _greedy(scored, lambda item: (item[1].lo,) + _tie_key(item), dimension)
        upper = _greedy(scored, _tie_key, dimension)
        if len(upper) < dimension:
            raise DiophlabError("Only {} independent vectors below radius {} for {}".format(len(upper), radius, body))
        lambdas = [Interval(lo[1].lo, min(hi[1].hi, radius)) for lo, hi in zip(lower, upper)]
        if all(lam.width <= rel_tol * lam.lo for lam in lambdas):
            break
        enc = Enclosures(body.zeta, body.n, body.Q, enc.bits * 2)
    else:
        logger.warning("Minima of {} stay wider than {} after {} bits".format(body, rel_tol, enc.bits))

    witnesses = [v for v, _ in upper]
    if not is_independent(witnesses):
        raise DiophlabError("Witnesses {} of {} are dependent".format(witnesses, body))
    return MinimaResult(body.kind, body.n, body.Q, lambdas, witnesses, complete=True, bits=enc.bits,
                        examined=len(found))


def minkowski_bracket(n: int) -> Interval:
    factorial = 1
    for k in range(2, n + 2):
        factorial *= k
    return Interval(Fraction(1, factorial), 1)
