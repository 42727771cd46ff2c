from decimal import Decimal, ROUND_CEILING, ROUND_FLOOR, localcontext
from fractions import Fraction
from typing import Any, List, Sequence
import csv
import json
import logging
import os

from .arith.interval import Interval

logger = logging.getLogger(__name__)

CSV_DIGITS = 12


def to_jsonable(value: Any) -> Any:
    """Converts results into JSON-safe values; rationals become ``"p/q"`` strings."""
    if hasattr(value, "to_json"):
        return to_jsonable(value.to_json())
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    raise TypeError("Cannot serialise {!r} of type {}".format(value, type(value).__name__))


def dumps(data: Any) -> str:
    return json.dumps(to_jsonable(data), sort_keys=True, indent=2)


def write_to_json(output_file: str, data: Any):
    directory = os.path.dirname(output_file)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(output_file, 'w') as fOut:
        fOut.write(dumps(data))
        fOut.write('\n')
    logger.info("Wrote {}".format(output_file))


def render_decimal(value: Fraction, rounding: str = ROUND_FLOOR, digits: int = CSV_DIGITS) -> str:
    """Decimal rendering of a rational, rounded in the given direction at ``digits`` significant digits."""
    value = Fraction(value)
    if value == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        result = Decimal(value.numerator) / Decimal(value.denominator)
    return str(result)


def interval_cells(interval: Interval) -> List[str]:
    if interval is None:
        return ["", ""]
    return [render_decimal(interval.lo, ROUND_FLOOR), render_decimal(interval.hi, ROUND_CEILING)]


def write_to_csv(output_file: str, header: Sequence[str], rows: List[Sequence[Any]]):
    """Rows may mix plain cells and Intervals; an Interval fills two columns, outward rounded."""
    directory = os.path.dirname(output_file)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(output_file, 'w', newline='') as fOut:
        writer = csv.writer(fOut, delimiter=",", quoting=csv.QUOTE_MINIMAL)
        writer.writerow(list(header))
        for row in rows:
            cells = []
            for cell in row:
                if isinstance(cell, Interval):
                    cells.extend(interval_cells(cell))
                elif isinstance(cell, Fraction):
                    cells.append(render_decimal(cell, ROUND_FLOOR))
                else:
                    cells.append("" if cell is None else cell)
            writer.writerow(cells)
    logger.info("Wrote {} rows to {}".format(len(rows), output_file))
