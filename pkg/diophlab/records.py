from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
import logging

from .arith.interval import Interval
from .arith.logs import to_float

logger = logging.getLogger(__name__)

AT_MOST = "at_most_n"
EXACT = "exactly_n_irreducible"
DEGREE_MODES = (AT_MOST, EXACT)


class Constraint:
    """Which polynomials (or algebraic numbers) count as witnesses for an exponent family."""

    def __init__(self, n: int, degree_mode: str = AT_MOST, monic: bool = False):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError("Constraint degree n must be a positive integer, got {!r}".format(n))
        if degree_mode not in DEGREE_MODES:
            raise ValueError("Unknown degree mode {!r}, expected one of {}".format(degree_mode, DEGREE_MODES))
        self.n = n
        self.degree_mode = degree_mode
        self.monic = bool(monic)

    @classmethod
    def at_most(cls, n: int, monic: bool = False) -> "Constraint":
        return cls(n, AT_MOST, monic)

    @classmethod
    def exactly(cls, n: int, monic: bool = False) -> "Constraint":
        return cls(n, EXACT, monic)

    @property
    def exact(self) -> bool:
        return self.degree_mode == EXACT

    def admits(self, P) -> bool:
        """Degree, monic and irreducibility test for a candidate polynomial."""
        if P.is_zero or P.degree < 1 or P.degree > self.n:
            return False
        if self.monic and abs(P.leading) != 1:
            return False
        if self.exact:
            if P.degree != self.n or not P.is_primitive:
                return False
            from .polynomials.irreducible import is_irreducible
            return is_irreducible(P)
        return True

    def relaxed(self) -> "Constraint":
        """Drops the exact-degree requirement."""
        return Constraint(self.n, AT_MOST, self.monic)

    def symbol(self, uniform: bool = False, starred: bool = False) -> str:
        head = "ŵ" if uniform else "w"
        sub = "{=" + str(self.n) + "}" if self.exact else str(self.n)
        sup = ("*" if starred else "") + ("int" if self.monic else "")
        return "{}_{}{}".format(head, sub, "^{" + sup + "}" if sup else "")

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "degree_mode": self.degree_mode, "monic": self.monic}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Constraint":
        return cls(int(data["n"]), data.get("degree_mode", AT_MOST), bool(data.get("monic", False)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Constraint) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash((self.n, self.degree_mode, self.monic))

    def __repr__(self) -> str:
        return "Constraint({})".format(self.symbol())


class ApproxRecord:
    """One approximation event.

    ``kind`` is ``"poly"`` when ``value`` encloses |P(zeta)| and ``"root"`` when it encloses
    |zeta - alpha| for an algebraic witness.
    """

    def __init__(self, witness, height: int, value: Interval, constraint: Optional[Constraint] = None,
                 kind: str = "poly", bound: Optional[Interval] = None):
        if kind not in ("poly", "root"):
            raise ValueError("Record kind must be 'poly' or 'root', got {!r}".format(kind))
        self.witness = witness
        self.height = height
        self.value = value
        self.constraint = constraint
        self.kind = kind
        self.bound = bound

    @property
    def polynomial(self):
        return self.witness if self.kind == "poly" else self.witness.minimal_polynomial

    @property
    def is_exact_hit(self) -> bool:
        return self.value.is_point and self.value.lo == 0

    def to_json(self) -> Dict[str, Any]:
        data = {
            "kind": self.kind,
            "H": self.height,
            "value": self.value.to_json(),
            "poly": self.polynomial.to_json(),
        }
        if self.constraint is not None:
            data["constraint"] = self.constraint.to_json()
        if self.kind == "root":
            data["isolating_interval"] = self.witness.isolating_interval.to_json()
        if self.bound is not None:
            data["bound"] = self.bound.to_json()
        return data

    def __repr__(self) -> str:
        return "ApproxRecord({}, H={}, value=[{:.4g}, {:.4g}])".format(
            self.polynomial, self.height, to_float(self.value.lo), to_float(self.value.hi))


class RecordList(list):
    """List of records that remembers whether a budget cut the search short."""

    def __init__(self, records=(), truncated: bool = False, hmax: int = None):
        super().__init__(records)
        self.truncated = truncated
        self.hmax = hmax


BEST_RECORDS = "best_records"
UNIFORM_GRID = "uniform_grid"
TRAJECTORY = "trajectory"
METHODS = (BEST_RECORDS, UNIFORM_GRID, TRAJECTORY)


class ExponentEstimate:
    """Certified lower bound plus the slope sequence behind it for one exponent symbol.

    ``slope_series`` holds (height, slope interval) pairs. ``certified_lower`` is None when no
    record certifies anything, and ``infinite`` is set after an exact hit.
    """

    def __init__(self, symbol: str, certified_lower: Optional[Fraction] = None, slope_series: List[Tuple[int, Interval]] = None,
                 method: str = BEST_RECORDS, witness: Optional[ApproxRecord] = None, heuristic: bool = False,
                 infinite: bool = False, summary: Optional[Dict[str, Any]] = None):
        if method not in METHODS:
            raise ValueError("Unknown estimate method {!r}, expected one of {}".format(method, METHODS))
        self.symbol = symbol
        self.certified_lower = certified_lower
        self.slope_series = slope_series or []
        self.method = method
        self.witness = witness
        self.heuristic = heuristic
        self.infinite = infinite
        self.summary = summary or {}

    @property
    def value(self) -> Optional[Fraction]:
        """The reported number: certified lower bound, or the grid figure for uniform estimates."""
        if self.infinite:
            return None
        if self.certified_lower is not None:
            return self.certified_lower
        return self.summary.get("grid_value")

    def to_json(self) -> Dict[str, Any]:
        data = {
            "symbol": self.symbol,
            "method": self.method,
            "certified_lower": self.certified_lower,
            "heuristic": self.heuristic,
            "infinite": self.infinite,
            "slopes": [[h, s.to_json()] for h, s in self.slope_series],
        }
        if self.witness is not None:
            data["witness"] = {"poly": self.witness.polynomial.to_json(), "H": self.witness.height}
        if self.summary:
            data["summary"] = self.summary
        return data

    def __repr__(self) -> str:
        shown = "inf" if self.infinite else self.value
        return "ExponentEstimate({} >= {}, method={})".format(self.symbol, shown, self.method)
