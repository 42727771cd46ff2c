from fractions import Fraction
import csv
import json
import logging
import pytest

from diophlab.arith import Interval
from diophlab.construct import build_strong_liouville, cbrt2, golden
from diophlab.errors import ConfigError, DiophlabError
from diophlab.harness import ConfigLoader, RunConfig, get_preset, presets, run
from diophlab.harness.cli import main
from diophlab.harness.presets import liouville_grid
from diophlab.harness.runner import COMMANDS, EXIT_ASSERTION, EXIT_BUDGET, EXIT_CONFIG, EXIT_OK, parse_poly
from diophlab.logging import LoggingHandler
from diophlab.util import dumps, render_decimal, to_jsonable, write_to_csv, write_to_json


def _write_config(tmp_path, data, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_run_config_defaults():
    config = RunConfig.from_dict({"command": "verify", "preset": "bw-slope"})
    assert config.n == 1
    assert config.hmax == 1000
    assert config.xgrid == [10, 100, 1000, 10000]
    assert config.seed == 42
    assert RunConfig.from_dict(config.to_dict()).to_dict() == config.to_dict()


@pytest.mark.parametrize("data", [
    {"preset": "bw-slope"},
    {"command": "records"},
    {"command": "verify"},
    {"command": "verify", "preset": "bw-slope", "colour": "red"},
    {"command": "verify", "preset": "bw-slope", "n": 0},
    {"command": "verify", "preset": "bw-slope", "fmt": "xml"},
    {"command": "verify", "preset": "bw-slope", "xgrid": [10, 100, 100, 1000]},
    {"command": "verify", "preset": "bw-slope", "hmax": -5},
    {"command": "launch"},
])
def test_run_config_rejects(data):
    with pytest.raises(ConfigError):
        RunConfig.from_dict(data)


def test_config_loader(tmp_path):
    path = _write_config(tmp_path, {"command": "verify", "preset": "gelfond-exhaustive", "hmax": 50})
    config = ConfigLoader(path).load()
    assert config.preset == "gelfond-exhaustive"
    assert config.hmax == 50

    with pytest.raises(ConfigError):
        ConfigLoader(str(tmp_path / "missing.json")).read()
    other = tmp_path / "run.yaml"
    other.write_text("command: verify")
    with pytest.raises(ConfigError):
        ConfigLoader(str(other)).read()
    with pytest.raises(ConfigError):
        ConfigLoader(_write_config(tmp_path, [1, 2], "list.json")).read()


def test_parse_poly():
    assert parse_poly("P", "[-1, 1]").to_json() == [-1, 1]
    for text in ("[1, x]", "[1.5, 2]", "{\"a\": 1}", "[true, 1]"):
        with pytest.raises(ConfigError):
            parse_poly("P", text)


def test_to_jsonable():
    assert to_jsonable(Fraction(1, 3)) == "1/3"
    assert to_jsonable({1: {3, 2}}) == {"1": [2, 3]}
    assert json.loads(dumps(Interval(Fraction(1, 3), Fraction(1, 2)))) == ["1/3", "1/2"]
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_render_decimal_rounds_outward():
    assert render_decimal(Fraction(1, 3)) == "0.333333333333"
    assert render_decimal(Fraction(2, 3), rounding="ROUND_CEILING") == "0.666666666667"
    assert render_decimal(Fraction(0)) == "0"


def test_write_to_csv_and_json(tmp_path):
    out = tmp_path / "nested" / "table.csv"
    write_to_csv(str(out), ["H", "value_lo", "value_hi", "note"],
                 [[3, Interval(Fraction(1, 3), Fraction(2, 3)), None], [7, Interval.point(Fraction(1, 4)), "x"]])
    with open(out, newline="") as fIn:
        rows = list(csv.reader(fIn))
    assert rows[0] == ["H", "value_lo", "value_hi", "note"]
    assert rows[1] == ["3", "0.333333333333", "0.666666666667", ""]
    assert rows[2] == ["7", "0.25", "0.25", "x"]

    target = tmp_path / "result.json"
    write_to_json(str(target), {"x": Fraction(3, 2)})
    assert json.loads(target.read_text()) == {"x": "3/2"}


def test_presets_registry():
    names = presets()
    for name in ("bw-slope", "theorem-bs", "liouspez-upper", "mahler-duality", "minkowski-product", "irrpol-corpus",
                 "ds-witness", "gelfond-exhaustive", "bslemma-corpus", "relation-report", "inhom-liouville",
                 "algint-bounds"):
        assert name in names
    with pytest.raises(ConfigError):
        get_preset("bw-sloop")


def test_liouville_grid():
    grid = liouville_grid(build_strong_liouville(6).value)
    assert len(grid) == 4
    # 127 // (8 * 5) and 33038369412 // (8 * 127)
    assert grid[:2] == [3, 32518080]
    assert all(b > a for a, b in zip(grid, grid[1:]))


def test_inhom_liouville_flags_the_power_schedule():
    status, artifacts = run(RunConfig("verify", preset="inhom-liouville", options={"schedule": "power", "terms": 6}))
    assert status == EXIT_ASSERTION
    first = artifacts["result"]["assertions"][0]
    assert first["name"].startswith("log a_(j+1) / log a_j increases")
    assert not first["passed"]


def test_run_verify_bw_slope():
    status, artifacts = run(RunConfig("verify", preset="bw-slope"))
    assert status == EXIT_OK
    result = artifacts["result"]
    assert result["preset"] == "bw-slope"
    assert result["passed"]
    assert result["artifacts"]["q"][:5] == [1, 2, 9, 731, 390617900]


@pytest.mark.parametrize("preset, options", [
    ("gelfond-exhaustive", {"degree_sum": 4, "height": 2}),
    ("irrpol-corpus", {"size": 5}),
    ("bslemma-corpus", {"size": 10}),
    ("minkowski-product", {"count": 5, "max_n": 2, "max_q": 1000}),
])
def test_run_small_presets(preset, options):
    status, artifacts = run(RunConfig("verify", preset=preset, options=options))
    assert status == EXIT_OK
    assert artifacts["result"]["passed"]


def test_minkowski_bodies_keep_powers_independent():
    config = RunConfig("verify", preset="minkowski-product", options={"count": 12, "max_n": 3, "max_q": 300})
    status, artifacts = run(config)
    assert status == EXIT_OK
    bodies = artifacts["result"]["artifacts"]["bodies"]
    assert len(bodies) == 12
    for body in bodies:
        if body["zeta"] == golden().name:
            assert body["n"] == 1
        elif body["zeta"] == cbrt2().name:
            assert body["n"] <= 2


def test_run_algint_bounds_reports_one_assertion():
    config = RunConfig("verify", preset="algint-bounds", xgrid=[10, 20, 40, 80], options={"n": 2, "terms": 5})
    status, artifacts = run(config)
    assert status in (EXIT_OK, EXIT_ASSERTION)
    assert len(artifacts["result"]["assertions"]) == 1


def test_run_reports_config_errors():
    status, artifacts = run(RunConfig("verify", preset="nothing"))
    assert status == EXIT_CONFIG
    assert artifacts["status"] == "config_error"


def test_run_reports_internal_check_failures(monkeypatch):
    def broken(config):
        raise DiophlabError("witnesses are dependent")

    monkeypatch.setitem(COMMANDS, "construct", broken)
    status, artifacts = run(RunConfig("construct", number="golden"))
    assert status == EXIT_ASSERTION
    assert artifacts["status"] == "check_failed"
    assert "dependent" in artifacts["error"]


def test_run_keeps_config_code_for_bad_input(monkeypatch):
    def rejects(config):
        raise ConfigError("unknown option")

    monkeypatch.setitem(COMMANDS, "construct", rejects)
    status, _ = run(RunConfig("construct", number="golden"))
    assert status == EXIT_CONFIG


def test_records_budget_exhaustion(tmp_path):
    path = _write_config(tmp_path, {"command": "records", "number": "sqrt2", "hmax": 100, "enumeration_limit": 1,
                                    "options": {"method": "lattice"}})
    out = tmp_path / "records.json"
    assert main(["records", "--config", path, "--out", str(out)]) == EXIT_BUDGET
    data = json.loads(out.read_text())
    assert data["result"]["truncated"] is True


def test_cli_primes(capsys):
    assert main(["primes", "--P", "[-1, 1]", "--Q", "[0, 0, 1]", "--bound", "100"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"bad_primes": [2], "good_prime": 3}


def test_cli_construct_csv(tmp_path):
    out = tmp_path / "b3.csv"
    status = main(["construct", "--number", "{\"class\": \"Bw\", \"w\": \"3\"}", "--option", "terms=4",
                   "--out", str(out), "--format", "csv"])
    assert status == EXIT_OK
    with open(out, newline="") as fIn:
        rows = list(csv.reader(fIn))
    assert rows[0] == ["j", "a_j", "q_j"]
    assert [row[2] for row in rows[1:]] == ["1", "2", "9", "731", "390617900"]
    twin = json.loads((tmp_path / "b3.json").read_text())
    assert twin["result"]["recurrence_checked"] == [2, 3, 4]


def test_cli_exponents_golden(tmp_path):
    out = tmp_path / "exponents.json"
    status = main(["exponents", "--number", "golden", "--hmax", "100", "--xgrid", "10,20,50,100", "--out", str(out)])
    assert status in (EXIT_OK, EXIT_ASSERTION)
    data = json.loads(out.read_text())
    assert "w_1" in data["result"]["estimates"]
    assert "checks" in data["result"]["report"]


@pytest.mark.parametrize("argv", [
    ["primes", "--P", "[1, x]", "--Q", "[0, 1]"],
    ["primes", "--P", "[1, 1]"],
    ["verify", "--preset", "no-such-preset"],
    ["construct"],
    ["frobnicate"],
    ["records", "--number", "sqrt2", "--option", "method"],
    ["records", "--number", "{\"class\": \"Bw\"}"],
    ["minima", "--number", "golden", "--qgrid", "100,10"],
])
def test_cli_config_errors(argv):
    assert main(argv) == EXIT_CONFIG


@pytest.mark.slow
@pytest.mark.parametrize("preset, overrides", [
    ("bw-slope", {}),
    ("theorem-bs", {}),
    ("liouspez-upper", {"hmax": 10000}),
    ("mahler-duality", {}),
    ("minkowski-product", {}),
    ("irrpol-corpus", {}),
    ("ds-witness", {"hmax": 10000}),
    ("gelfond-exhaustive", {}),
    ("bslemma-corpus", {}),
    ("relation-report", {}),
    ("inhom-liouville", {}),
])
def test_acceptance_presets(preset, overrides):
    config = RunConfig.from_dict(dict({"command": "verify", "preset": preset}, **overrides))
    status, artifacts = run(config)
    assert status == EXIT_OK, artifacts["result"]["assertions"]


def test_logging_handler_keeps_stdout_clean(capsys):
    handler = LoggingHandler()
    handler.emit(logging.LogRecord("diophlab", logging.INFO, __file__, 1, "level %d done", (3,), None))
    captured = capsys.readouterr()
    assert "level 3 done" in captured.err
    assert captured.out == ""
