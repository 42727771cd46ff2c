"""Command line entry point: ``diophlab <command> [flags]``."""
from typing import Any, Dict, List, Optional
import argparse
import json
import logging
import sys

from ..errors import ConfigError
from ..logging import setup_logging
from ..util import dumps
from .config import COMMANDS, DEFAULT_SEED, FORMATS, ConfigLoader, RunConfig
from .presets import presets
from .runner import EXIT_CONFIG, run

logger = logging.getLogger(__name__)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers, got {!r}".format(text))


def _option(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError("expected key=value, got {!r}".format(text))
    key, value = text.split("=", 1)
    try:
        value = json.loads(value)
    except ValueError:
        pass
    return key, value


class _Parser(argparse.ArgumentParser):
    """Parse errors become ConfigError so they share the config exit code."""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diophlab", description="Exact-arithmetic experiments on Diophantine approximation exponents.")
    p.add_argument("command", choices=COMMANDS, help="What to run.")
    p.add_argument("--config", type=str, default=None, help="JSON run config; command line flags override it.")
    p.add_argument("--number", type=str, default=None,
                   help="Number spec: golden, sqrt2, cbrt2 or a JSON object such as '{\"class\":\"Bw\",\"w\":\"3\"}'.")
    p.add_argument("--n", type=int, default=None, help="Degree / dimension (default: 1).")
    p.add_argument("--hmax", type=int, default=None, help="Height budget (default: 1000).")
    p.add_argument("--xgrid", type=_int_list, default=None, help="Uniform exponent grid, e.g. 10,100,1000,10000.")
    p.add_argument("--qgrid", type=_int_list, default=None, help="Parameter grid for minima, e.g. 100,1000,10000.")
    p.add_argument("--budget-bits", type=int, default=None, dest="bit_limit",
                   help="Largest convergent denominator size in bits.")
    p.add_argument("--budget-seconds", type=float, default=None, dest="time_limit", help="Wall clock budget for searches.")
    p.add_argument("--seed", type=int, default=None, help="Seed of every random corpus (default: {}).".format(DEFAULT_SEED))
    p.add_argument("--out", type=str, default=None, help="Artifact path; printed to stdout when omitted.")
    p.add_argument("--format", choices=FORMATS, default=None, dest="fmt", help="Artifact format (default: json).")
    p.add_argument("--preset", type=str, default=None, help="Preset for verify, one of: {}.".format(", ".join(presets())))
    p.add_argument("--P", type=str, default=None, help="primes: polynomial P as a JSON coefficient list.")
    p.add_argument("--Q", type=str, default=None, help="primes: polynomial Q as a JSON coefficient list.")
    p.add_argument("--bound", type=int, default=None, help="primes: only report bad primes up to this bound.")
    p.add_argument("--w", type=str, default=None, help="verify: exponent parameter w of B_w presets.")
    p.add_argument("--M", type=int, default=None, help="verify: multiplier M of B_w presets.")
    p.add_argument("--option", type=_option, action="append", default=[], dest="extra",
                   help="Extra key=value passed to the command (repeatable).")
    p.add_argument("--verbose", action="store_true", help="Debug logging.")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    data: Dict[str, Any] = {}
    if args.config:
        data = ConfigLoader(args.config).read()
    data["command"] = args.command
    for key in ("number", "n", "hmax", "xgrid", "qgrid", "bit_limit", "time_limit", "seed", "out", "fmt", "preset"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    options = dict(data.get("options") or {})
    for key in ("P", "Q", "bound", "w", "M"):
        value = getattr(args, key)
        if value is not None:
            options[key] = value
    options.update(dict(args.extra))
    data["options"] = options
    return RunConfig.from_dict(data)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as e:
        sys.stderr.write("diophlab: {}\n".format(e))
        return EXIT_CONFIG
    setup_logging(logging.DEBUG if args.verbose else logging.INFO)
    try:
        config = config_from_args(args)
    except ConfigError as e:
        logger.error("{}".format(e))
        return EXIT_CONFIG
    status, artifacts = run(config)
    if not config.out:
        print(dumps(artifacts.get("result", artifacts)))
    return status


if __name__ == "__main__":
    sys.exit(main())
