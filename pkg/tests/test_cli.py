import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from sduality.cli import EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, _schema, main

FIX = Path(__file__).parent / "fixtures"


def run_cli(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_check_valid(capsys):
    code, out, _ = run_cli(capsys, "check", "--input", FIX / "valid.json")
    assert code == EXIT_OK
    assert "dim B = 3" in out


def test_check_nonsquare(capsys):
    code, _, err = run_cli(capsys, "check", "--input", FIX / "nonsquare.json")
    assert code == EXIT_HYPOTHESIS
    assert "not square" in err


def test_corrupt_json(capsys):
    code, _, err = run_cli(capsys, "verify", "--input", FIX / "corrupt.json")
    assert code == EXIT_INPUT
    assert "malformed JSON" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "check", "--input", tmp_path / "nope.json")
    assert code == EXIT_INPUT


@pytest.mark.parametrize(
    "spec",
    [
        {"vars": ["x"]},
        {"vars": ["x"], "polys": ["2x"]},
        {"vars": ["x"], "polys": ["y"]},
        {"field": "fp:4", "vars": ["x"], "polys": ["x"]},
        {"field": "reals", "vars": ["x"], "polys": ["x"]},
        {"vars": ["x"], "polys": ["x"], "colour": "blue"},
    ],
)
def test_bad_specs(capsys, tmp_path, spec):
    code, _, _ = run_cli(capsys, "check", "--input", write(tmp_path, "s.json", spec))
    assert code == EXIT_INPUT


def test_infinite_and_char_two(capsys, tmp_path):
    p = write(tmp_path, "s.json", {"vars": ["x", "y"], "polys": ["x*y", "x^2"]})
    assert run_cli(capsys, "check", "--input", p)[0] == EXIT_HYPOTHESIS
    p = write(tmp_path, "t.json", {"field": "fp:2", "vars": ["x"], "polys": ["x^2 + x + 1"]})
    assert run_cli(capsys, "invariants", "--input", p)[0] == EXIT_HYPOTHESIS
    # verify skips the form invariants in characteristic 2 but still runs the identities
    assert run_cli(capsys, "verify", "--input", p)[0] == EXIT_OK


def test_gram_and_invariants(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "gram", "--input", FIX / "double_point.json", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["gram"] == [["0", "1"], ["1", "0"]]
    p = write(tmp_path, "lin.json", {"field": "rational", "vars": ["x"], "polys": ["x - 5"]})
    code, out, _ = run_cli(capsys, "invariants", "--input", p, "--json")
    inv = json.loads(out)["invariants"]
    assert (inv["rank"], inv["signature"]) == (1, 1)
    code, out, _ = run_cli(capsys, "invariants", "--input", FIX / "valid.json", "--json")
    assert json.loads(out)["invariants"]["signature"] == 1


def test_verify_examples(capsys):
    code, out, _ = run_cli(capsys, "verify", "--input", FIX / "valid.json", "--seed", 42, "--json")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["passed"] and rep["seed"] == 42
    assert rep["verification"]["oracle"]["status"] == "passed"
    jsonschema.validate(rep, _schema("run_report.schema.json"))

    code, out, _ = run_cli(capsys, "verify", "--input", FIX / "double_point.json", "--seed", 1, "--json")
    assert code == EXIT_OK
    oracle = json.loads(out)["verification"]["oracle"]
    assert (oracle["status"], oracle["reason"]) == ("skipped", "not etale")


def test_oracle_command(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--input", FIX / "double_point.json", "--perturb", "--json")
    assert code == EXIT_OK
    rep = json.loads(out)["oracle"]
    assert rep["status"] == "passed" and rep["perturbed_eta"] == ["0", "1"]


def test_text_input_and_overrides(capsys):
    code, out, _ = run_cli(capsys, "delta", "--input", FIX / "plane.txt", "--json", "--order", "lex")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["input"]["order"] == "lex"
    code, out, _ = run_cli(capsys, "check", "--input", FIX / "plane.txt", "--field", "fp:7")
    assert code == EXIT_OK and "fp:7" in out


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SDUALITY_SEED", "17")
    _, out, _ = run_cli(capsys, "verify", "--input", FIX / "valid.json", "--json")
    assert json.loads(out)["seed"] == 17
    monkeypatch.setenv("SDUALITY_SEED", "abc")
    assert run_cli(capsys, "verify", "--input", FIX / "valid.json")[0] == EXIT_INPUT


def test_failing_verification_exit_code(capsys, monkeypatch):
    import sduality.cli as cli

    real = cli.structural_checks

    def broken(D):
        r = real(D)
        r.add("injected", False, "forced failure")
        return r

    monkeypatch.setattr(cli, "structural_checks", broken)
    assert run_cli(capsys, "verify", "--input", FIX / "valid.json")[0] == EXIT_VERIFY


def test_timing_is_opt_in(capsys):
    _, out, _ = run_cli(capsys, "verify", "--input", FIX / "valid.json", "--json")
    assert "timing" not in json.loads(out)
    _, out, _ = run_cli(capsys, "verify", "--input", FIX / "valid.json", "--json", "--timing")
    assert "build" in json.loads(out)["timing"]


def _subprocess(args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "sduality.cli", *map(str, args)],
        capture_output=True, env={**os.environ, **(env or {})},
    )


def test_byte_identical_across_processes():
    args = ["verify", "--input", FIX / "plane.txt", "--json", "--seed", 42]
    a = _subprocess(args, {"PYTHONHASHSEED": "1"})
    b = _subprocess(args, {"PYTHONHASHSEED": "2"})
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_input_schema_accepts_fixtures():
    schema = _schema("system_spec.schema.json")
    jsonschema.validate(json.loads((FIX / "valid.json").read_text()), schema)
    jsonschema.validate(json.loads((FIX / "nonsquare.json").read_text()), schema)
