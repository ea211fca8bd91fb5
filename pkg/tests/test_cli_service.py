"""Tests for the HTTP service, the CLI thin client, and report
serialization round-trips."""

import json
from fractions import Fraction

import mpmath
import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from jetsolve.cli import main as cli_main
from jetsolve.report import (EXIT_AMBIGUOUS, EXIT_BRANCHES, EXIT_FAMILY,
                             EXIT_INPUT, EXIT_NO_SMALL, jet_to_obj,
                             obj_to_jet, parse_tree_option)
from jetsolve.service import app
from jetsolve import PuiseuxJet

SQRT_PAIR = {
    "variables": ["lambda", "x1", "x2"],
    "equations": [
        [{"coefficient": "1", "exponents": [0, 0, 2]},
         {"coefficient": "-1", "exponents": [1, 0, 0]}],
        [{"coefficient": "1", "exponents": [0, 0, 1]},
         {"coefficient": "-1", "exponents": [0, 1, 0]}],
    ],
}


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_solve_endpoint_object_payload(client):
    resp = client.post("/solve", json={"system": SQRT_PAIR})
    assert resp.status_code == 200
    data = resp.json()
    assert data["exit_code"] == EXIT_BRANCHES
    report = data["report"]
    assert report["status"] == "branches"
    assert len(report["branches"]) == 2
    assert report["schema_version"] == 1


def test_solve_endpoint_string_payload(client):
    resp = client.post("/solve", json={"system": json.dumps(SQRT_PAIR)})
    assert resp.json()["exit_code"] == EXIT_BRANCHES


def test_solve_endpoint_input_error(client):
    bad = dict(SQRT_PAIR)
    bad = {"variables": ["lambda", "x1", "x2"],
           "equations": [[{"coefficient": "1", "exponents": [0, 0]}]]}
    resp = client.post("/solve", json={"system": bad})
    data = resp.json()
    assert data["exit_code"] == EXIT_INPUT
    assert data["report"]["status"] == "input-error"
    assert data["report"]["input_position"]["line"] is not None


def test_jet_roundtrip_exact():
    j = PuiseuxJet(2, [(1, Fraction(1)), (3, Fraction(-5, 7))],
                   Fraction(6))
    assert obj_to_jet(jet_to_obj(j)) == j


def test_jet_roundtrip_numeric():
    with mpmath.workprec(256):
        j = PuiseuxJet(3, [(1, mpmath.mpc("0.25", "-1.5"))], Fraction(4))
        back = obj_to_jet(jet_to_obj(j))
        assert back == j
        assert back.trunc == j.trunc


def test_parse_tree_option():
    assert parse_tree_option("first") == ("first", None)
    assert parse_tree_option("all") == ("all", None)
    assert parse_tree_option("1,1;2") == ("explicit", [(1, 1), (2,)])
    assert parse_tree_option("") == ("first", None)


def _write_system(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def test_cli_solve_text(tmp_path):
    fn = _write_system(tmp_path / "sys.json", SQRT_PAIR)
    runner = CliRunner()
    res = runner.invoke(cli_main, ["solve", fn])
    assert res.exit_code == EXIT_BRANCHES
    assert "status: branches" in res.output
    assert "x1 =" in res.output and "x2 =" in res.output


def test_cli_machine_output_deterministic(tmp_path):
    fn = _write_system(tmp_path / "sys.json", SQRT_PAIR)
    runner = CliRunner()
    outs = []
    for _ in range(2):
        res = runner.invoke(cli_main,
                            ["solve", fn, "--format", "machine"])
        assert res.exit_code == EXIT_BRANCHES
        outs.append(res.output)
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["exit_code"] == EXIT_BRANCHES
    assert doc["status"] == "branches"


def test_cli_verify_numeric(tmp_path):
    fn = _write_system(tmp_path / "sys.json", SQRT_PAIR)
    runner = CliRunner()
    res = runner.invoke(cli_main, ["solve", fn, "--verify-numeric",
                                   "1/100,1/1000"])
    assert res.exit_code == EXIT_BRANCHES
    assert "numeric check" in res.output


def test_cli_families_flag(tmp_path):
    family = {
        "variables": ["lambda", "x1", "x2"],
        "equations": [
            [{"coefficient": "1", "exponents": [0, 0, 2]},
             {"coefficient": "-1", "exponents": [1, 0, 1]}],
            [{"coefficient": "1", "exponents": [0, 0, 2]},
             {"coefficient": "-1", "exponents": [0, 1, 1]}],
        ],
    }
    fn = _write_system(tmp_path / "fam.json", family)
    runner = CliRunner()
    res = runner.invoke(cli_main, ["solve", fn, "--families"])
    assert res.exit_code == EXIT_FAMILY
    assert "family" in res.output


def test_cli_missing_file():
    runner = CliRunner()
    res = runner.invoke(cli_main, ["solve", "/no/such/file.json"])
    assert res.exit_code == EXIT_INPUT


def test_cli_input_error_position(tmp_path):
    bad = {"variables": ["lambda", "x1", "x2"],
           "equations": [[{"coefficient": "1", "exponents": [0, 0]}]]}
    fn = _write_system(tmp_path / "bad.json", bad)
    runner = CliRunner()
    res = runner.invoke(cli_main, ["solve", fn])
    assert res.exit_code == EXIT_INPUT
    assert "line" in res.output


def test_cli_no_small(tmp_path):
    nosmall = {
        "variables": ["lambda", "x1", "x2"],
        "equations": [
            [{"coefficient": "1", "exponents": [0, 1, 0]},
             {"coefficient": "1", "exponents": [0, 0, 1]},
             {"coefficient": "-1", "exponents": [1, 0, 0]}],
            [{"coefficient": "1", "exponents": [0, 1, 0]},
             {"coefficient": "1", "exponents": [0, 0, 1]},
             {"coefficient": "1", "exponents": [1, 0, 0]}],
        ],
    }
    fn = _write_system(tmp_path / "ns.json", nosmall)
    runner = CliRunner()
    res = runner.invoke(cli_main, ["solve", fn])
    assert res.exit_code == EXIT_NO_SMALL
