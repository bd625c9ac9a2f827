import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from isodescent.arith import kummer_class
from isodescent.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main
from isodescent.serialize import decode

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report_schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_json_valid_and_decodes(capsys):
    code, out, _ = run(capsys, "analyze", "--t", "8", "--height", "16")
    assert code == EXIT_OK
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    dec = decode(doc)
    assert dec["t"] == 8
    assert dec["rank_bounds"] == (1, 1)
    assert set(dec["selmer"]["phi4"]["elements"]) == {kummer_class(v, 4) for v in (1, -1, 4, -4)}
    assert dec["unresolved"] == []
    assert doc["report"]["unresolved"]["label"] == "unresolved at height 16"


def test_round_trip_points(capsys):
    code, out, _ = run(capsys, "analyze", "--t", "8", "--height", "16")
    doc = json.loads(out)
    assert doc["report"]["points"]
    for p in decode(doc)["points"]:
        assert isinstance(p["z"], Fraction) and isinstance(p["image"][0], Fraction)
    for p in doc["report"]["points"]:
        assert str(Fraction(p["z"])) == p["z"] and str(Fraction(p["w"])) == p["w"]


def test_json_identical_cold_and_warm_cache(capsys, tmp_path):
    cache = tmp_path / "verdicts.jsonl"
    argv = ("analyze", "--t", "3/2", "--height", "3", "--cache", str(cache))
    _, cold, _ = run(capsys, *argv)
    assert cache.exists() and cache.stat().st_size > 0
    lines = cache.read_text().splitlines()
    _, warm, _ = run(capsys, *argv)
    assert cold == warm
    assert cache.read_text().splitlines() == lines  # a warm run adds nothing


def test_env_var_overrides_cache_flag(capsys, tmp_path, monkeypatch):
    env_cache = tmp_path / "env.jsonl"
    monkeypatch.setenv("ISODESCENT_CACHE", str(env_cache))
    code, _, _ = run(capsys, "analyze", "--t", "3/2", "--height", "3", "--cache", str(tmp_path / "flag.jsonl"))
    assert code == EXIT_OK
    assert env_cache.exists() and not (tmp_path / "flag.jsonl").exists()


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "analyze", "--t", "3/2", "--height", "3")
    assert "timing" not in json.loads(out)
    _, out, _ = run(capsys, "analyze", "--t", "3/2", "--height", "3", "--timing")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert "seconds" in doc["timing"] and "hits" in doc["cache"]


def test_r_and_s_parameters(capsys):
    _, out_s, _ = run(capsys, "analyze", "--s", "2", "--height", "3")
    _, out_t, _ = run(capsys, "analyze", "--t", "3/2", "--height", "3")
    assert json.loads(out_s)["report"] == json.loads(out_t)["report"]
    assert json.loads(out_s)["input"] == {"s": "2", "height": 3, "fixtures": None}


def test_csv_and_text(capsys):
    _, out, _ = run(capsys, "analyze", "--t", "8", "--height", "16", "--format", "csv")
    rows = [line.split(",") for line in out.splitlines()]
    assert rows[0] == ["section", "key", "value"]
    assert ["rank_bounds", "upper", "1"] in rows
    _, out, _ = run(capsys, "analyze", "--t", "8", "--height", "16", "--format", "text")
    assert "rank bounds: 1 <= R <= 1" in out
    assert "0 classes unresolved at height 16" in out


@pytest.mark.parametrize("argv", [
    ("analyze", "--t", "0"),
    ("analyze", "--r", "1"),
    ("analyze", "--s", "1"),
    ("analyze", "--t", "abc"),
    ("analyze", "--t", "8", "--height", "0"),
    ("analyze", "--t", "8", "--fixtures", "/nonexistent.csv"),
    ("analyze",),
    ("selmer", "--t", "0"),
    ("nonsense",),
])
def test_bad_input_exit_code(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_INPUT


def test_selmer_command(capsys):
    code, out, _ = run(capsys, "selmer", "--t", "8", "--isogeny", "eta")
    assert code == EXIT_OK
    assert "size 4" in out and "elements: 1, -1, 2, -2" in out
    code, out, _ = run(capsys, "selmer", "--t", "8")
    assert "elements: 1, -1, 4, -4" in out


def test_verify_paper_examples(capsys):
    code, out, _ = run(capsys, "verify-paper", "--which", "t8")
    assert code == EXIT_OK, out
    assert out.splitlines()[-1].endswith("checks passed")
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_verify_paper_table1_reports_failures(capsys):
    code, out, _ = run(capsys, "verify-paper", "--which", "table1")
    # the upper bounds for 15/56 and 24/65 differ from the reference values
    assert code == EXIT_VERIFY
    failed = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert len(failed) == 2 and all("rank bounds" in line for line in failed)


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "isodescent.cli", "analyze", "--t", "3/2", "--height", "3"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["report"]["t"] == "3/2"
    bad = subprocess.run([sys.executable, "-m", "isodescent.cli", "analyze", "--t", "0"], capture_output=True, text=True)
    assert bad.returncode == EXIT_INPUT and "t = 0" in bad.stderr
