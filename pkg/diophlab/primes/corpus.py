from fractions import Fraction
from typing import Dict, List
import logging
import random
import sympy
from tqdm.autonotebook import tqdm

from ..arith.interval import Interval, as_rational
from ..arith.logs import log_interval
from ..polynomials.intpoly import IntPoly
from .filter import FilterInstance, bad_primes, bad_primes_oracle, is_bad_prime, theorem_bound

logger = logging.getLogger(__name__)

COUNT_CONSTANT = 12
WINDOW = 25


def random_instance(rng: random.Random, max_n: int = 4, max_height: int = 10) -> FilterInstance:
    """Rejection sampling of a valid instance with n <= max_n and X <= max_height."""
    while True:
        n = rng.randint(2, max_n)
        q_coefficients = [0] + [rng.randint(-max_height, max_height) for _ in range(n)]
        if q_coefficients[-1] == 0:
            continue
        deg_p = rng.randint(0, n - 1)
        p_coefficients = [rng.randint(-max_height, max_height) for _ in range(deg_p + 1)]
        if p_coefficients[0] == 0 or p_coefficients[-1] == 0:
            continue
        try:
            return FilterInstance(IntPoly(p_coefficients), IntPoly(q_coefficients))
        except ValueError:
            continue


def build_corpus(size: int = 100, seed: int = 42, max_n: int = 4, max_height: int = 10) -> List[FilterInstance]:
    rng = random.Random(seed)
    return [random_instance(rng, max_n, max_height) for _ in range(size)]


def count_scale(inst: FilterInstance) -> Interval:
    """tau(|b_0|) tau(|a_n|) (1 + log X) as an outward-rounded enclosure."""
    divisors = int(sympy.divisor_count(abs(inst.P.constant)) * sympy.divisor_count(abs(inst.Q.leading)))
    return (log_interval(Interval.point(inst.X)) + 1) * divisors


def count_ratio(inst: FilterInstance, count: int) -> Fraction:
    """Upper end of count / count_scale."""
    return Fraction(count) / count_scale(inst).lo


def calibrate_count_constant(corpus: List[FilterInstance]) -> Fraction:
    """Largest observed ratio of bad primes below the theorem bound to the divisor scale."""
    observed = Fraction(0)
    for inst in corpus:
        count = len(bad_primes(inst, theorem_bound(inst.n, inst.X)))
        observed = max(observed, count_ratio(inst, count))
    return observed


def window_above(bound: int, size: int = WINDOW) -> List[int]:
    primes = []
    p = bound
    while len(primes) < size:
        p = int(sympy.nextprime(p))
        primes.append(p)
    return primes


def check_corpus(corpus: List[FilterInstance], oracle_bound: int = 1000, count_constant=COUNT_CONSTANT,
                 show_progress_bar: bool = False) -> Dict[str, object]:
    """Structured search against the oracle, bound property, clean window and count property.

    The oracle runs up to the theorem bound or ``oracle_bound``, whichever is smaller;
    ``None`` lifts the cap.
    """
    count_constant = as_rational(count_constant)
    mismatches, above_bound, dirty_window, over_count = [], [], [], []
    observed = Fraction(0)
    for inst in tqdm(corpus, disable=not show_progress_bar, desc="Prime filter corpus"):
        limit = theorem_bound(inst.n, inst.X)
        scan = limit if oracle_bound is None else min(limit, oracle_bound)
        structured = bad_primes(inst, scan)
        if structured != bad_primes_oracle(inst, scan):
            mismatches.append(inst)
        everything = bad_primes(inst, None)
        if any(p > limit for p in everything):
            above_bound.append(inst)
        window = window_above(limit)
        if any(is_bad_prime(inst, p) for p in window):
            dirty_window.append(inst)
        count = len([p for p in everything if p <= limit])
        ratio = count_ratio(inst, count)
        observed = max(observed, ratio)
        if ratio > count_constant:
            over_count.append(inst)
    logger.info("Corpus of {}: {} oracle mismatches, {} above bound, observed count constant {:.3f}".format(
        len(corpus), len(mismatches), len(above_bound), float(observed)))
    return {
        "size": len(corpus),
        "mismatches": [i.to_json() for i in mismatches],
        "above_bound": [i.to_json() for i in above_bound],
        "dirty_window": [i.to_json() for i in dirty_window],
        "over_count": [i.to_json() for i in over_count],
        "observed_count_constant": observed,
        "count_constant": count_constant,
        "passed": not (mismatches or above_bound or dirty_window or over_count),
    }
