from typing import Any, Dict, List, Tuple
import json
import logging

from ..construct.algebraic import NAMED
from ..construct.numbers import BINFINITY, BW, ConstructedNumber, check_bw_recurrence, check_liouville_growth
from ..construct.spec import number_from_spec
from ..errors import ConfigError, DiophlabError, ResourceLimitError
from ..exponents.approximation import best_records
from ..exponents.estimation import ds_constant, ds_witnesses, minimal_c_value
from ..exponents.relations import estimate_suite, relation_report
from ..minima.parametric import TRAJECTORY_HEADER, ParametricMinima
from ..polynomials.intpoly import IntPoly
from ..primes.filter import FilterInstance, bad_primes, find_good_prime, irreducible_combination
from ..records import AT_MOST, EXACT, Constraint
from ..util import write_to_csv, write_to_json
from .config import RunConfig
from .presets import get_preset

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

Table = Tuple[List[str], List[List[Any]]]


def load_number(config: RunConfig) -> ConstructedNumber:
    """Number spec of the config with ``bit_limit`` applied unless the spec sets its own."""
    spec = config.number
    if isinstance(spec, str):
        text = spec.strip()
        if text in NAMED:
            spec = {"class": text}
        else:
            try:
                spec = json.loads(text)
            except ValueError:
                raise ConfigError("Cannot parse number spec {!r}".format(config.number))
    if isinstance(spec, dict) and config.bit_limit is not None:
        spec = dict(spec)
        spec.setdefault("bit_limit", config.bit_limit)
    return number_from_spec(spec)


def parse_poly(name: str, text: Any) -> IntPoly:
    """Integer polynomial from a JSON coefficient list, constant term first."""
    try:
        data = json.loads(text) if isinstance(text, str) else text
        if not isinstance(data, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in data):
            raise ValueError("expected a list of integers")
        return IntPoly(data)
    except (TypeError, ValueError) as e:
        raise ConfigError("Polynomial {} must be a JSON list of integers, got {!r} ({})".format(name, text, e))


def _construct(config: RunConfig) -> Tuple[int, Dict[str, Any], Table]:
    number = load_number(config)
    terms = int(config.options.get("terms", 8))
    artifacts = number.to_json(terms)
    if number.class_tag.kind == BW:
        artifacts["recurrence_checked"] = check_bw_recurrence(number, terms)
    elif number.class_tag.kind == BINFINITY:
        artifacts["ratios"] = check_liouville_growth(number, terms)
    rows = [[i, a, q] for i, (a, q) in enumerate(zip(artifacts["partial_quotients"], artifacts["q"]))]
    return EXIT_OK, artifacts, (["j", "a_j", "q_j"], rows)


def _records(config: RunConfig) -> Tuple[int, Dict[str, Any], Table]:
    number = load_number(config)
    mode = EXACT if config.options.get("exact") else AT_MOST
    constraint = Constraint(config.n, mode, bool(config.options.get("monic", False)))
    records = best_records(number.value, constraint, config.hmax, config.options.get("method", "auto"),
                           config.enumeration_limit, config.time_limit)
    artifacts = {"zeta": number.name, "constraint": constraint, "hmax": config.hmax,
                 "truncated": records.truncated, "records": list(records)}
    rows = [[r.height, r.value, json.dumps(r.polynomial.to_json())] for r in records]
    status = EXIT_BUDGET if records.truncated else EXIT_OK
    return status, artifacts, (["H", "value_lo", "value_hi", "poly"], rows)


def _exponents(config: RunConfig) -> Tuple[int, Dict[str, Any], Table]:
    number = load_number(config)
    suite = estimate_suite(number.value, config.n, config.hmax, config.xgrid, time_limit=config.time_limit)
    report = relation_report(suite, config.n, slack=config.trend_slack, zeta=number.value)
    rows = []
    for symbol, estimate in sorted(suite.items()):
        rows.append([symbol, estimate.certified_lower, "inf" if estimate.infinite else estimate.value,
                     estimate.heuristic])
    artifacts = {"zeta": number.name, "estimates": suite, "report": report}
    status = EXIT_OK if report.passed else EXIT_ASSERTION
    return status, artifacts, (["symbol", "certified_lower", "value", "heuristic"], rows)


def _minima(config: RunConfig) -> Tuple[int, Dict[str, Any], Table]:
    number = load_number(config)
    minima = ParametricMinima(number.value, config.n)
    trajectory = minima.trajectory(config.qgrid)
    artifacts = {
        "zeta": number.name,
        "n": config.n,
        "trajectory": trajectory,
        "duality": [minima.duality_residual(Q) for Q in config.qgrid],
        "minkowski": [minima.minkowski_product(Q) for Q in config.qgrid],
    }
    return EXIT_OK, artifacts, (TRAJECTORY_HEADER, trajectory)


def _primes(config: RunConfig) -> Tuple[int, Dict[str, Any], Table]:
    options = config.options
    if "P" not in options or "Q" not in options:
        raise ConfigError("primes needs both --P and --Q")
    inst = FilterInstance(parse_poly("P", options["P"]), parse_poly("Q", options["Q"]))
    bound = options.get("bound")
    artifacts = {"bad_primes": bad_primes(inst, None if bound is None else int(bound)),
                 "good_prime": find_good_prime(inst)}
    if options.get("combine"):
        p, combination = irreducible_combination(inst)
        artifacts["combination"] = {"p": p, "poly": combination.to_json()}
    rows = [[p, "bad"] for p in artifacts["bad_primes"]] + [[artifacts["good_prime"], "good"]]
    return EXIT_OK, artifacts, (["p", "kind"], rows)


def _ds_witness(config: RunConfig) -> Tuple[int, Dict[str, Any], Table]:
    number = load_number(config)
    witnesses = ds_witnesses(number.value, config.hmax)
    artifacts = {
        "zeta": number.name,
        "hmax": config.hmax,
        "constant": ds_constant(number.value),
        "smallest_c": minimal_c_value(witnesses),
        "witnesses": [{"poly": alpha.minimal_polynomial.to_json(), "H": alpha.height, "c": c}
                      for alpha, c in witnesses],
    }
    rows = [[alpha.height, json.dumps(alpha.minimal_polynomial.to_json()), c] for alpha, c in witnesses]
    return EXIT_OK, artifacts, (["H", "poly", "c_lo", "c_hi"], rows)


def _verify(config: RunConfig) -> Tuple[int, Dict[str, Any], Table]:
    result = get_preset(config.preset).run(config)
    rows = [[a.name, a.anchor, "PASS" if a.passed else "FAIL"] for a in result.assertions]
    status = EXIT_OK if result.passed else EXIT_ASSERTION
    return status, result.to_json(), (["assertion", "anchor", "status"], rows)


COMMANDS = {
    "construct": _construct,
    "records": _records,
    "exponents": _exponents,
    "minima": _minima,
    "primes": _primes,
    "ds-witness": _ds_witness,
    "verify": _verify,
}


def save(config: RunConfig, artifacts: Dict[str, Any], table: Table = None):
    if not config.out:
        return
    if config.fmt == "csv" and table is not None:
        header, rows = table
        write_to_csv(config.out, header, rows)
        write_to_json(config.out.rsplit(".", 1)[0] + ".json", artifacts)
    else:
        write_to_json(config.out, artifacts)


def run(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """Runs one command; returns the exit status and the artifacts written.

    Budget exhaustion still writes whatever partial result the failing step carried.
    """
    try:
        config.check()
        logger.info("Running {} with seed {}".format(config.command, config.seed))
        status, artifacts, table = COMMANDS[config.command](config)
    except ResourceLimitError as e:
        logger.warning("Budget exhausted: {}".format(e))
        artifacts = {"command": config.command, "status": "budget_exhausted", "error": str(e), "partial": e.best}
        save(config, artifacts)
        return EXIT_BUDGET, artifacts
    except ValueError as e:
        logger.error("Invalid input: {}".format(e))
        return EXIT_CONFIG, {"command": config.command, "status": "config_error", "error": str(e)}
    except DiophlabError as e:
        logger.error("Internal check failed: {}".format(e))
        artifacts = {"command": config.command, "status": "check_failed", "error": str(e)}
        save(config, artifacts)
        return EXIT_ASSERTION, artifacts
    artifacts = {"command": config.command, "config": config.to_dict(), "result": artifacts}
    save(config, artifacts, table)
    logger.info("{} finished with status {}".format(config.command, status))
    return status, artifacts
