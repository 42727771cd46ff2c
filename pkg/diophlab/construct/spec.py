from typing import Any, Dict, Union
import json
import logging

from ..arith.continued_fraction import CFNumber
from ..arith.interval import Interval, as_rational
from ..errors import ConfigError
from ..polynomials.intpoly import IntPoly
from .algebraic import NAMED, algebraic_cf, periodic_cf
from .numbers import CUSTOM, DEFAULT_SCHEDULE, ClassTag, ConstructedNumber, build_bw, build_strong_liouville

logger = logging.getLogger(__name__)

NumberSpec = Union[str, Dict[str, Any]]


def _require(spec: Dict[str, Any], *keys):
    missing = [k for k in keys if k not in spec]
    if missing:
        raise ConfigError("Number spec {} is missing {}".format(spec, ", ".join(missing)))


def number_from_spec(spec: NumberSpec) -> ConstructedNumber:
    """Builds a number from a spec dict, a JSON string, or one of the names golden/sqrt2/cbrt2."""
    if isinstance(spec, str):
        text = spec.strip()
        if text in NAMED:
            cf = NAMED[text]()
            return ConstructedNumber(cf, ClassTag(CUSTOM, label=text), spec={"class": text})
        try:
            spec = json.loads(text)
        except ValueError:
            raise ConfigError("Cannot parse number spec {!r}".format(spec))
    if not isinstance(spec, dict) or "class" not in spec:
        raise ConfigError("A number spec needs a 'class' field, got {!r}".format(spec))
    kind = spec["class"]
    max_terms = spec.get("max_terms")
    bit_limit = spec.get("bit_limit")
    try:
        if kind in NAMED:
            cf = NAMED[kind](max_terms=max_terms, bit_limit=bit_limit)
            return ConstructedNumber(cf, ClassTag(CUSTOM, label=kind), spec=spec)
        if kind == "Bw":
            _require(spec, "w")
            return build_bw(as_rational(spec["w"]), int(spec.get("M", 1)), max_terms or 8, bit_limit)
        if kind == "BInfinity":
            return build_strong_liouville(max_terms or 6, spec.get("schedule", DEFAULT_SCHEDULE), bit_limit)
        if kind == "Algebraic":
            _require(spec, "poly", "interval")
            cf = algebraic_cf(IntPoly.from_json(spec["poly"]), Interval.from_json(spec["interval"]),
                              max_terms=max_terms, bit_limit=bit_limit)
        elif kind == "Periodic":
            _require(spec, "preperiod", "period")
            cf = periodic_cf(spec["preperiod"], spec["period"], max_terms=max_terms, bit_limit=bit_limit)
        elif kind == "Rational":
            _require(spec, "value")
            cf = CFNumber.from_rational(as_rational(spec["value"]))
        elif kind == "CF":
            _require(spec, "quotients")
            cf = CFNumber(spec["quotients"], name=spec.get("name"))
        else:
            raise ConfigError("Unknown number class {!r}".format(kind))
    except ConfigError:
        raise
    except (ValueError, TypeError) as error:
        raise ConfigError("Invalid number spec {}: {}".format(spec, error))
    return ConstructedNumber(cf, ClassTag(CUSTOM, label=kind), spec=spec)
