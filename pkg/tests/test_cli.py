import json
import os
from pathlib import Path

import jsonschema
import pytest

from kronquiver.cli import main
from kronquiver.lattice import parse_hrep

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def validate(payload, schema_name):
    schema = json.loads((SCHEMA_DIR / schema_name).read_text())
    jsonschema.validate(payload, schema)


def test_coeff_text_and_exit(capsys):
    code, out = run_cli(capsys, "coeff", "--mu", "2,1", "--nu", "2,1",
                        "--lam", "2,1", "--method", "all")
    assert code == 0
    assert "g = 1" in out and "agree: yes" in out
    assert "counts: lambda=2 lambda_omega=1" in out


def test_coeff_json_schema(capsys):
    code, out = run_cli(capsys, "coeff", "--mu", "1,1", "--nu", "1,1",
                        "--lam", "1,1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "coeff.json")
    assert payload["g"] == 0


def test_coeff_mixed_lengths(capsys):
    code, out = run_cli(capsys, "coeff", "--mu", "2,1", "--nu", "3",
                        "--lam", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["g"] == 0 and payload["agree"]


def test_truncated(capsys):
    code, out = run_cli(capsys, "truncated", "--mu", "2,1", "--nu", "2,1")
    assert code == 0 and out == "s[3] + s[2,1]\n"
    code, out = run_cli(capsys, "truncated", "--mu", "3", "--nu", "3")
    assert code == 0 and out == "s[3]\n"
    code, out = run_cli(capsys, "truncated", "--mu", "1,1", "--nu", "1,1")
    assert code == 0 and out == "s[2]\n"
    code, out = run_cli(capsys, "truncated", "--mu", "2,1", "--nu", "2,1",
                        "--format", "json")
    validate(json.loads(out), "truncated.json")


def test_enumerate_text_points(capsys):
    code, out = run_cli(capsys, "enumerate", "--l", "2", "--sigma", "-1,-1;1,1")
    assert code == 0
    points = [line for line in out.splitlines() if not line.startswith("#")]
    assert len(points) == 6
    assert points == sorted(points, key=lambda s: [int(x) for x in s.split()])
    assert any("(= x1)" in line for line in out.splitlines())


def test_enumerate_json_schema(capsys):
    code, out = run_cli(capsys, "enumerate", "--sigma", "-1,-1;1,1",
                        "--lam", "2,1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "enumerate.json")
    assert payload["count"] == 2


def test_cone_hrep_and_json(capsys):
    code, out = run_cli(capsys, "cone", "--l", "2", "--format", "hrep")
    assert code == 0
    section = parse_hrep(out)
    assert section.dim == 6 and len(section.ineqs) == 9
    code, out = run_cli(capsys, "cone", "--l", "2", "--format", "json")
    payload = json.loads(out)
    validate(payload, "cone.json")
    assert len(payload["rows"]) == 9


def test_verify_suites(capsys):
    code, out = run_cli(capsys, "verify", "exchange", "--l", "2",
                        "--trials", "5", "--seed", "7")
    assert code == 0
    validate(json.loads(out), "verify.json")
    code, out = run_cli(capsys, "verify", "actions", "--l", "2",
                        "--trials", "3", "--seed", "1")
    assert code == 0
    validate(json.loads(out), "verify.json")
    code, out = run_cli(capsys, "verify", "fan")
    assert code == 0
    validate(json.loads(out), "verify.json")
    code, out = run_cli(capsys, "verify", "tu", "--l", "2")
    assert code == 0
    validate(json.loads(out), "verify.json")
    code, out = run_cli(capsys, "verify", "cross", "--n-max", "3", "--l-max", "2")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "verify.json")
    assert payload["all_agree"]


def test_hilbert(capsys):
    code, out = run_cli(capsys, "hilbert", "diamond2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "hilbert.json")
    assert payload["matches_closed_form"]


def test_phi(capsys):
    code, out = run_cli(capsys, "phi", "--l", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "phi.json")
    code, out = run_cli(capsys, "phi", "--l", "2", "--g", "0,0,1,0,0,1",
                        "--format", "json")
    payload = json.loads(out)
    validate(payload, "phi.json")
    assert payload["in_hexagon_cone"]


def test_exit_codes(capsys):
    code, _ = run_cli(capsys, "coeff", "--mu", "2x", "--nu", "2", "--lam", "2")
    assert code == 2
    code, _ = run_cli(capsys, "coeff", "--mu", "2,1", "--nu", "2", "--lam", "3")
    assert code == 3
    code, _ = run_cli(capsys, "coeff", "--mu", "2,1", "--nu", "2,1",
                      "--lam", "2,1,1")
    assert code == 3
    code, _ = run_cli(capsys, "enumerate", "--sigma", "not-a-weight")
    assert code == 2


def test_determinism(capsys):
    args = ("coeff", "--mu", "3,2", "--nu", "2,2,1", "--lam", "3,2",
            "--method", "all", "--format", "json")
    _, first = run_cli(capsys, *args)
    _, second = run_cli(capsys, *args)
    assert first == second
    args = ("verify", "exchange", "--l", "3", "--trials", "4", "--seed", "11")
    _, first = run_cli(capsys, *args)
    _, second = run_cli(capsys, *args)
    assert first == second


def test_cache_dir_round_trip(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("KRON_CACHE_DIR", str(tmp_path))
    code, out1 = run_cli(capsys, "coeff", "--mu", "2,1", "--nu", "2,1",
                         "--lam", "3", "--format", "json")
    assert code == 0
    cache = tmp_path / "memo.json"
    assert cache.exists()
    data = json.loads(cache.read_text())
    assert data["version"].startswith("kronquiver-memo")
    code, out2 = run_cli(capsys, "coeff", "--mu", "2,1", "--nu", "2,1",
                         "--lam", "3", "--format", "json")
    assert code == 0 and out1 == out2
    # a stale or foreign file is ignored, not fatal
    cache.write_text(json.dumps({"version": "other"}))
    code, _ = run_cli(capsys, "coeff", "--mu", "2", "--nu", "2",
                      "--lam", "2", "--format", "json")
    assert code == 0
