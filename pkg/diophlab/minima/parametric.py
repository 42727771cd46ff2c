"""Logarithmic successive-minima trajectories psi_(n,j)(Q), psi*_(n,j)(Q) and their duality gap."""
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple
import logging
from tqdm.autonotebook import tqdm

from ..arith.continued_fraction import CFNumber
from ..arith.interval import Interval, as_rational, interval_product
from ..arith.logs import log_base, log_interval
from ..errors import DiophlabError
from ..records import TRAJECTORY, ExponentEstimate
from .bodies import DUAL, SIMULTANEOUS, make_body
from .successive import DEFAULT_BITS, DEFAULT_BUDGET, MinimaResult, minkowski_bracket, successive_minima

logger = logging.getLogger(__name__)

TRAJECTORY_HEADER = ["Q", "j", "psi_lo", "psi_hi", "psi_star_lo", "psi_star_hi", "gap_lo", "gap_hi"]
DEFAULT_QGRID = [Fraction(10 ** 2), Fraction(10 ** 3), Fraction(10 ** 4)]
MIN_TRAJECTORY_POINTS = 4


class ParametricMinima:
    """Successive minima of both parametric bodies of one (zeta, n), cached per Q."""

    def __init__(self, zeta: CFNumber, n: int, rel_tol=Fraction(1, 64), budget: int = DEFAULT_BUDGET,
                 bits: int = DEFAULT_BITS):
        if not isinstance(n, int) or n < 1:
            raise ValueError("Dimension n must be a positive integer, got {!r}".format(n))
        self.zeta = zeta
        self.n = n
        self.rel_tol = as_rational(rel_tol)
        self.budget = budget
        self.bits = bits
        self._cache: Dict[Tuple[str, Fraction], MinimaResult] = {}

    def minima(self, kind: str, Q) -> MinimaResult:
        Q = as_rational(Q)
        key = (kind, Q)
        if key not in self._cache:
            body = make_body(kind, self.zeta, self.n, Q)
            self._cache[key] = successive_minima(body, self.rel_tol, self.budget, self.bits)
        return self._cache[key]

    def _check_index(self, j: int):
        if not isinstance(j, int) or not 1 <= j <= self.n + 1:
            raise ValueError("Index j must lie in 1..{}, got {!r}".format(self.n + 1, j))

    def psi(self, j: int, Q) -> Interval:
        self._check_index(j)
        Q = as_rational(Q)
        return log_base(self.minima(SIMULTANEOUS, Q).lambdas[j - 1], Interval.point(Q))

    def psi_star(self, j: int, Q) -> Interval:
        self._check_index(j)
        Q = as_rational(Q)
        return log_base(self.minima(DUAL, Q).lambdas[j - 1], Interval.point(Q))

    def mahler_gap(self, j: int, Q) -> Interval:
        """psi_(n,j)(Q) + psi*_(n,n+2-j)(Q)."""
        self._check_index(j)
        return self.psi(j, Q) + self.psi_star(self.n + 2 - j, Q)

    def trajectory(self, qgrid: Sequence, show_progress_bar: bool = False) -> List[List[Any]]:
        """Rows matching ``TRAJECTORY_HEADER`` once the intervals are split into endpoints."""
        rows = []
        for Q in tqdm(_check_grid(qgrid, 1), disable=not show_progress_bar, desc="Trajectory"):
            for j in range(1, self.n + 2):
                rows.append([Q, j, self.psi(j, Q), self.psi_star(j, Q), self.mahler_gap(j, Q)])
        return rows

    def minkowski_product(self, Q) -> Dict[str, Any]:
        """lambda_1 ... lambda_(n+1) of the simultaneous box against [1/(n+1)!, 1]."""
        product = interval_product(self.minima(SIMULTANEOUS, Q).lambdas)
        bracket = minkowski_bracket(self.n)
        if bracket.lo <= product.lo and product.hi <= bracket.hi:
            status = "pass"
        elif product.intersects(bracket):
            status = "inconclusive"
        else:
            status = "fail"
        return {"Q": as_rational(Q), "n": self.n, "product": product, "bracket": bracket, "status": status}

    def duality_residual(self, Q) -> Dict[str, Any]:
        """Largest |psi_j + psi*_(n+2-j)| times log Q, against the closed-form constant."""
        Q = as_rational(Q)
        log_q = log_interval(Interval.point(Q))
        worst = max(self.mahler_gap(j, Q).max_abs for j in range(1, self.n + 2))
        scaled = Interval.point(worst) * log_q
        constant = mahler_constant(self.n, self.zeta)
        return {"Q": Q, "gap": worst, "scaled": scaled, "constant": constant, "passed": scaled.hi <= constant.lo}


def independent_dimension(zeta: CFNumber, cap: int) -> int:
    """Largest n <= cap with 1, zeta, ..., zeta^n linearly independent over Q.

    Only a known minimal polynomial of degree d >= 2 lowers the cap (to d - 1); truncated
    expansions count as transcendental.
    """
    minimal = zeta.minimal_polynomial
    if minimal is not None and minimal.degree >= 2:
        return min(cap, minimal.degree - 1)
    return cap


def _check_grid(grid: Sequence, minimum: int) -> List[Fraction]:
    if grid is None or len(grid) == 0:
        raise ValueError("The parameter grid is empty")
    grid = [as_rational(Q) for Q in grid]
    if len(grid) < minimum:
        raise ValueError("The parameter grid needs at least {} points, got {}".format(minimum, len(grid)))
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("The parameter grid must be increasing, got {}".format([str(Q) for Q in grid]))
    if grid[0] <= 1:
        raise ValueError("Grid parameters must exceed 1, got {}".format(grid[0]))
    return grid


def psi_range(n: int, Q) -> Interval:
    """[-1 - log_Q 2, 1/n + log_Q 2], the finite-Q Minkowski range for psi and psi*."""
    Q = as_rational(Q)
    slack = log_base(Interval.point(2), Interval.point(Q))
    return Interval(-1 - slack.hi, Fraction(1, n) + slack.hi)


def mahler_constant(n: int, zeta: CFNumber) -> Interval:
    """log(2 (n+1)! max(1, |zeta|)^n)."""
    factorial = 1
    for k in range(2, n + 2):
        factorial *= k
    size = abs(zeta.enclose(Fraction(1, 2 ** 32))).max_with(1)
    return log_interval(size ** n * (2 * factorial))


def psi(n: int, j: int, Q, zeta: CFNumber, **kwargs) -> Interval:
    return ParametricMinima(zeta, n, **kwargs).psi(j, Q)


def psi_star(n: int, j: int, Q, zeta: CFNumber, **kwargs) -> Interval:
    return ParametricMinima(zeta, n, **kwargs).psi_star(j, Q)


def mahler_gap(n: int, j: int, Q, zeta: CFNumber, **kwargs) -> Interval:
    return ParametricMinima(zeta, n, **kwargs).mahler_gap(j, Q)


def exponent_from_trajectory(n: int, j: int, qgrid: Sequence, zeta: CFNumber, which: str = "simultaneous",
                             minima: ParametricMinima = None, show_progress_bar: bool = False) -> ExponentEstimate:
    """liminf/limsup brackets of psi (or psi*) over the last half of the grid.

    Oscillation is certified when the limsup bracket lies strictly above the liminf bracket.
    """
    if which not in ("simultaneous", "dual"):
        raise ValueError("which must be 'simultaneous' or 'dual', got {!r}".format(which))
    grid = _check_grid(qgrid, MIN_TRAJECTORY_POINTS)
    minima = minima or ParametricMinima(zeta, n)
    if minima.n != n or minima.zeta is not zeta:
        raise DiophlabError("Cached minima for n={} do not match the request n={}".format(minima.n, n))
    evaluate = minima.psi if which == "simultaneous" else minima.psi_star
    series = [(Q, evaluate(j, Q)) for Q in tqdm(grid, disable=not show_progress_bar, desc="psi trajectory")]
    tail = [value for _, value in series[len(series) // 2:]]
    liminf = Interval(min(v.lo for v in tail), min(v.hi for v in tail))
    limsup = Interval(max(v.lo for v in tail), max(v.hi for v in tail))
    oscillation = liminf.hi < limsup.lo
    symbol = "psi{}_{{{},{}}}".format("" if which == "simultaneous" else "*", n, j)
    logger.info("{} over {} points: liminf in {}, limsup in {}{}".format(
        symbol, len(grid), liminf, limsup, ", oscillation certified" if oscillation else ""))
    summary = {"liminf": liminf, "limsup": limsup, "oscillation": oscillation, "tail": [str(Q) for Q in grid[len(grid) // 2:]]}
    return ExponentEstimate(symbol, None, series, method=TRAJECTORY, heuristic=True, summary=summary)
