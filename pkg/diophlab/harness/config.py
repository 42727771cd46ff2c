from fractions import Fraction
from typing import Any, Dict, List, Optional
import json
import logging
import os

from ..arith.interval import as_rational
from ..errors import ConfigError

logger = logging.getLogger(__name__)

COMMANDS = ("construct", "records", "exponents", "minima", "primes", "ds-witness", "verify")
FORMATS = ("json", "csv")
DEFAULT_SEED = 42
DEFAULT_XGRID = [10, 100, 1000, 10000]
DEFAULT_QGRID = [100, 1000, 10000]


class RunConfig:
    """Everything one run depends on; identical configs give identical artifacts."""

    def __init__(self, command: str, number: Any = None, n: int = 1, hmax: int = 1000, xgrid: List[int] = None,
                 qgrid: List[Any] = None, bit_limit: Optional[int] = None, time_limit: Optional[float] = None,
                 enumeration_limit: int = 200000, trend_slack: float = 0.3, classical_slack: float = 0.1,
                 seed: int = DEFAULT_SEED, out: Optional[str] = None, fmt: str = "json", preset: Optional[str] = None,
                 options: Dict[str, Any] = None):
        self.command = command
        self.number = number
        self.n = n
        self.hmax = hmax
        self.xgrid = list(xgrid) if xgrid is not None else list(DEFAULT_XGRID)
        self.qgrid = [as_rational(Q) for Q in qgrid] if qgrid is not None else [Fraction(Q) for Q in DEFAULT_QGRID]
        self.bit_limit = bit_limit
        self.time_limit = time_limit
        self.enumeration_limit = enumeration_limit
        self.trend_slack = trend_slack
        self.classical_slack = classical_slack
        self.seed = seed
        self.out = out
        self.fmt = fmt
        self.preset = preset
        self.options = dict(options or {})

    @staticmethod
    def _check_grid(name: str, grid: List[Any]):
        if not grid:
            raise ConfigError("{} must not be empty".format(name))
        if any(g <= 1 for g in grid):
            raise ConfigError("{} entries must exceed 1, got {}".format(name, [str(g) for g in grid]))
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("{} must be increasing, got {}".format(name, [str(g) for g in grid]))

    def check(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError("Unknown command {!r}, expected one of {}".format(self.command, COMMANDS))
        if self.fmt not in FORMATS:
            raise ConfigError("Unknown format {!r}, expected one of {}".format(self.fmt, FORMATS))
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError("n must be a positive integer, got {!r}".format(self.n))
        for name in ("hmax", "enumeration_limit"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError("{} must be a positive integer, got {!r}".format(name, value))
        if self.bit_limit is not None and (not isinstance(self.bit_limit, int) or self.bit_limit < 1):
            raise ConfigError("bit_limit must be a positive integer, got {!r}".format(self.bit_limit))
        if self.time_limit is not None and self.time_limit <= 0:
            raise ConfigError("time_limit must be positive, got {!r}".format(self.time_limit))
        if self.trend_slack < 0 or self.classical_slack < 0:
            raise ConfigError("Slacks must be non-negative")
        self._check_grid("xgrid", self.xgrid)
        self._check_grid("qgrid", self.qgrid)
        if self.command == "verify" and not self.preset:
            raise ConfigError("verify needs a preset name")
        if self.command in ("construct", "records", "exponents", "minima", "ds-witness") and self.number is None:
            raise ConfigError("{} needs a number spec".format(self.command))
        return self

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        if not isinstance(data, dict) or "command" not in data:
            raise ConfigError("A run config needs a 'command' field, got {!r}".format(data))
        known = {"command", "number", "n", "hmax", "xgrid", "qgrid", "bit_limit", "time_limit", "enumeration_limit",
                 "trend_slack", "classical_slack", "seed", "out", "fmt", "preset", "options"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError("Unknown config fields {}".format(sorted(unknown)))
        try:
            return cls(**data).check()
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError("Invalid run config: {}".format(e))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command, "number": self.number, "n": self.n, "hmax": self.hmax, "xgrid": self.xgrid,
            "qgrid": self.qgrid, "bit_limit": self.bit_limit, "time_limit": self.time_limit,
            "enumeration_limit": self.enumeration_limit, "trend_slack": self.trend_slack,
            "classical_slack": self.classical_slack, "seed": self.seed, "out": self.out, "fmt": self.fmt,
            "preset": self.preset, "options": self.options,
        }


class ConfigLoader:

    def __init__(self, config_file: str):
        self.config_file = config_file

    @staticmethod
    def check(fIn: str, ext: str):
        if not os.path.exists(fIn):
            raise ConfigError("File {} not present! Please provide accurate file.".format(fIn))

        if not fIn.endswith(ext):
            raise ConfigError("File {} must be present with extension {}".format(fIn, ext))

    def read(self) -> Dict[str, Any]:
        self.check(fIn=self.config_file, ext="json")
        logger.info("Loading run config {}".format(self.config_file))
        with open(self.config_file, encoding="utf8") as fIn:
            try:
                data = json.load(fIn)
            except ValueError as e:
                raise ConfigError("Config {} is not valid JSON: {}".format(self.config_file, e))
        if not isinstance(data, dict):
            raise ConfigError("Config {} must hold a JSON object".format(self.config_file))
        return data

    def load(self) -> RunConfig:
        return RunConfig.from_dict(self.read())
