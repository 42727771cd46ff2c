from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
import logging
from sympy import integer_nthroot

from ..arith.continued_fraction import CFNumber
from ..arith.interval import Interval, as_rational
from ..arith.logs import log_base, neg_log_slope
from ..errors import DiophlabError

logger = logging.getLogger(__name__)

BW = "Bw"
BINFINITY = "BInfinity"
CUSTOM = "Custom"

SCHEDULES = ("geometric", "power", "doubling")
DEFAULT_SCHEDULE = "geometric"
# degrees covered by the exact-degree tools
MAX_CLAIM_DEGREE = 4


def floor_pow(q: int, w_minus_1) -> int:
    """floor(q ** (a/b)) as the integer b-th root of q**a."""
    e = as_rational(w_minus_1)
    if not isinstance(q, int) or q < 1:
        raise ValueError("floor_pow needs a positive integer base, got {!r}".format(q))
    if e < 0:
        raise ValueError("floor_pow needs a non-negative exponent, got {}".format(e))
    if e.numerator == 0:
        return 1
    root, _ = integer_nthroot(q ** e.numerator, e.denominator)
    return int(root)


class ClassTag:

    def __init__(self, kind: str, w: Optional[Fraction] = None, M: Optional[int] = None,
                 schedule: Optional[str] = None, label: Optional[str] = None):
        if kind not in (BW, BINFINITY, CUSTOM):
            raise ValueError("Unknown class tag {!r}".format(kind))
        self.kind = kind
        self.w = w
        self.M = M
        self.schedule = schedule
        self.label = label

    def to_json(self) -> Dict[str, Any]:
        data = {"class": self.kind}
        if self.kind == BW:
            data.update({"w": str(self.w), "M": self.M})
        elif self.kind == BINFINITY:
            data["schedule"] = self.schedule
        elif self.label:
            data["label"] = self.label
        return data

    def __repr__(self) -> str:
        return "ClassTag({})".format(self.to_json())


class DnwClaim:
    """Membership zeta in D_{n,w}; w is None for w = infinity."""

    def __init__(self, n: int, w: Optional[Fraction]):
        if w is not None and 2 * n - 1 > w:
            raise ValueError("D_(n,w) membership is only claimed for w >= 2n-1, got n={} w={}".format(n, w))
        self.n = n
        self.w = w

    def to_json(self):
        return [self.n, "inf" if self.w is None else str(self.w)]

    def __eq__(self, other):
        return isinstance(other, DnwClaim) and (self.n, self.w) == (other.n, other.w)

    def __repr__(self):
        return "DnwClaim(n={}, w={})".format(self.n, "inf" if self.w is None else self.w)


class ConstructedNumber:

    def __init__(self, value: CFNumber, class_tag: ClassTag, claimed_dnw: List[DnwClaim] = None,
                 spec: Dict[str, Any] = None):
        self.value = value
        self.class_tag = class_tag
        self.claimed_dnw = claimed_dnw or []
        self.spec = spec or class_tag.to_json()

    @property
    def name(self) -> str:
        return self.value.name

    @property
    def truncated(self) -> bool:
        return self.value.truncated

    def q_sequence(self, count: int) -> List[int]:
        out = []
        for i in range(count):
            try:
                out.append(self.value.q(i))
            except DiophlabError:
                break
        return out

    def to_json(self, terms: int = 8) -> Dict[str, Any]:
        q = self.q_sequence(terms + 1)
        return {
            "spec": self.spec,
            "class_tag": self.class_tag.to_json(),
            "claimed_Dnw": [c.to_json() for c in self.claimed_dnw],
            "partial_quotients": self.value.quotients[:terms + 1],
            "q": q,
            "truncated": self.truncated,
        }

    def __repr__(self) -> str:
        return "ConstructedNumber({}, {})".format(self.value, self.class_tag)


def _bw_generator(w_minus_1: Fraction, M: int):

    def generate(cf: CFNumber, index: int) -> int:
        if index == 0:
            return 0
        if index == 1:
            return 2
        return M * floor_pow(cf.q(index - 1), w_minus_1)

    return generate


def build_bw(w, M: int = 1, max_terms: int = 8, bit_limit: int = None) -> ConstructedNumber:
    """zeta = [0; 2, a_2, ...] with a_{j+1} = M * floor(q_j^(w-1))."""
    w = as_rational(w)
    if w < 1:
        raise ValueError("B_w needs w >= 1, got {}".format(w))
    if not isinstance(M, int) or M < 1:
        raise ValueError("B_w needs a positive integer M, got {!r}".format(M))
    cf = CFNumber(generator=_bw_generator(w - 1, M), name="B_{}(M={})".format(w, M),
                  max_terms=max_terms, bit_limit=bit_limit)
    claims = [DnwClaim(n, w) for n in range(1, MAX_CLAIM_DEGREE + 1) if 2 * n - 1 <= w]
    spec = {"class": BW, "w": str(w), "M": M, "max_terms": max_terms}
    logger.info("Built B_{} with M={} ({} terms)".format(w, M, max_terms))
    return ConstructedNumber(cf, ClassTag(BW, w=w, M=M), claims, spec)


def _liouville_generator(schedule: str):

    def generate(cf: CFNumber, index: int) -> int:
        if index == 0:
            return 0
        if index == 1:
            return 2
        j = index - 1
        if schedule == "geometric":
            exponent = 2 ** (j - 1)
        elif schedule == "power":
            exponent = j
        else:
            exponent = 2 ** j
        return cf.q(j) ** exponent

    return generate


def build_strong_liouville(max_terms: int = 6, schedule: str = DEFAULT_SCHEDULE,
                           bit_limit: int = None) -> ConstructedNumber:
    """zeta = [0; 2, a_2, ...] with a_{j+1} = q_j^(2^(j-1)).

    The "power" schedule takes q_j^j and "doubling" takes q_j^(2^j). Only schedules whose
    ratios log a_{j+1} / log a_j increase pass ``check_liouville_growth``.
    """
    if schedule not in SCHEDULES:
        raise ValueError("Unknown schedule {!r}, expected one of {}".format(schedule, SCHEDULES))
    cf = CFNumber(generator=_liouville_generator(schedule), name="B_inf({})".format(schedule),
                  max_terms=max_terms, bit_limit=bit_limit)
    claims = [DnwClaim(n, None) for n in range(1, MAX_CLAIM_DEGREE + 1)]
    spec = {"class": BINFINITY, "schedule": schedule, "max_terms": max_terms}
    return ConstructedNumber(cf, ClassTag(BINFINITY, schedule=schedule), claims, spec)


def check_bw_recurrence(number: ConstructedNumber, upto: int) -> List[int]:
    """Exact checks of the B_w recurrence and growth bracket; returns the indices checked.

    For j >= 2: a_j = M floor(q_{j-1}^(w-1)) and a_j q_{j-1} < q_j <= M q_{j-1}^w + q_{j-1}.
    """
    tag = number.class_tag
    if tag.kind != BW:
        raise ValueError("Not a B_w number: {}".format(tag))
    cf = number.value
    if cf.partial_quotient(1) != 2:
        raise DiophlabError("B_w number must start [0; 2, ...], got a_1 = {}".format(cf.partial_quotient(1)))
    a, b = tag.w.numerator, tag.w.denominator
    checked = []
    for j in range(2, upto + 1):
        try:
            a_j, q_j, q_prev = cf.partial_quotient(j), cf.q(j), cf.q(j - 1)
        except DiophlabError:
            break
        if a_j != tag.M * floor_pow(q_prev, tag.w - 1):
            raise DiophlabError("a_{} = {} breaks the recurrence".format(j, a_j))
        if not a_j * q_prev < q_j:
            raise DiophlabError("q_{} = {} below a_j q_(j-1)".format(j, q_j))
        # q_j - q_{j-1} <= M q_{j-1}^(a/b) in integers
        if (q_j - q_prev) ** b > tag.M ** b * q_prev ** a:
            raise DiophlabError("q_{} = {} exceeds M q_(j-1)^w + q_(j-1)".format(j, q_j))
        checked.append(j)
    return checked


def convergent_residual(cf: CFNumber, j: int) -> Interval:
    """Bracket 1/(q_j + q_{j+1}) <= |q_j zeta - p_j| <= 1/q_{j+1}."""
    q_j, q_next = cf.q(j), cf.q(j + 1)
    return Interval(Fraction(1, q_j + q_next), Fraction(1, q_next))


def convergent_slope(cf: CFNumber, j: int) -> Interval:
    """Enclosure of -log|q_j zeta - p_j| / log q_j."""
    q_j = cf.q(j)
    if q_j < 2:
        raise ValueError("Slope needs q_j >= 2, got q_{} = {}".format(j, q_j))
    return neg_log_slope(convergent_residual(cf, j), q_j)


def liouville_ratios(number: ConstructedNumber, upto: int) -> List[Tuple[int, Interval]]:
    """(j, enclosure of log a_{j+1} / log a_j) for 1 <= j < upto."""
    cf = number.value
    ratios = []
    for j in range(1, upto):
        try:
            a_j, a_next = cf.partial_quotient(j), cf.partial_quotient(j + 1)
        except DiophlabError:
            break
        if a_j < 2:
            continue
        ratios.append((j, log_base(Interval.point(a_next), Interval.point(a_j))))
    return ratios


def check_liouville_growth(number: ConstructedNumber, upto: int) -> List[Tuple[int, Interval]]:
    """Ratios are certified >= j and strictly increasing."""
    ratios = liouville_ratios(number, upto)
    for j, ratio in ratios:
        if ratio.hi < j:
            raise DiophlabError("log a_{} / log a_{} = {} falls below {}".format(j + 1, j, ratio, j))
    for (j, r), (_, s) in zip(ratios, ratios[1:]):
        if not r.strictly_below(s):
            raise DiophlabError("Ratio sequence of the {} schedule not increasing at j={}: {} then {}".format(
                number.class_tag.schedule, j, r, s))
    return ratios
