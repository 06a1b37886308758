import json
import subprocess
import sys

import pytest

from centinv.cli import SCHEMA, main, run


def report(argv, capsys):
    status = main(argv)
    return status, json.loads(capsys.readouterr().out)


def test_basis(capsys):
    status, rep = report(["basis", "--lambda", "3,2"], capsys)
    assert status == 0
    assert rep["schema"] == SCHEMA
    assert rep["result"]["dim"] == 9
    assert {"name", "property", "expected", "actual", "pass"} <= set(rep["checks"][0])


def test_basis_sp(capsys):
    status, rep = report(["basis", "--lambda", "2,2", "--case", "sp", "--field", "fp:5"], capsys)
    assert status == 0
    assert rep["result"]["dim_k"] + rep["result"]["dim_p"] == rep["result"]["dim"]


def test_invariants(capsys):
    status, rep = report(["invariants", "--lambda", "1,1", "--r", "2"], capsys)
    assert status == 0
    assert rep["result"]["invariants"][0]["degree"] == 2


def test_index(capsys):
    status, rep = report(["index", "--lambda", "3,1", "--case", "so"], capsys)
    assert status == 0 and rep["result"]["index"] == 1


@pytest.mark.parametrize("case,lam", [("gl", "2,1"), ("sp", "2"), ("so", "3")])
def test_verify_all(case, lam, capsys):
    status, rep = report(["verify", "--lambda", lam, "--case", case, "--field", "fp:3"], capsys)
    assert status == 0, [c for c in rep["checks"] if not c["pass"]]
    assert rep["pass"]


def test_envelope(capsys):
    status, rep = report(["envelope", "--lambda", "2,1", "--field", "fp:3"], capsys)
    assert status == 0
    assert rep["result"]["bound"] == 3


@pytest.mark.parametrize("argv", [
    ["basis", "--lambda", "3,x"],
    ["basis", "--lambda", "3", "--case", "sp"],
    ["basis", "--lambda", "2", "--case", "so", "--field", "fp:3"],
    ["basis", "--lambda", "2", "--case", "sp", "--field", "fp:2"],
    ["invariants", "--lambda", "2", "--r", "3"],
    ["verify", "--lambda", "2", "--suite", "parity"],
    ["verify", "--lambda", "2", "--suite", "nope"],
    ["verify", "--lambda", "2", "--suite", "generation"],
    ["envelope", "--lambda", "3", "--case", "so", "--field", "fp:3", "--check", "bound"],
    ["envelope", "--lambda", "2,1", "--field", "fp:3", "--check", "pcentre", "--degree-cap", "2"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_failing_check_gives_status_1(monkeypatch, capsys):
    from centinv import cli
    monkeypatch.setattr(cli.coadjoint, "index_closed_form", lambda lam, case: -1)
    status, rep = report(["index", "--lambda", "2,1"], capsys)
    assert status == 1 and rep["pass"] is False


def test_out_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "--lambda", "2,2", "--case", "sp", "--field", "fp:3",
                     "--suite", "counting", "--suite", "parity", "--out", str(path)]) == 0
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    ra.pop("timing"), rb.pop("timing")
    assert ra == rb


def test_run_returns_out_path():
    rep, status, out = run(["basis", "--lambda", "1", "--out", "x.json"])
    assert status == 0 and out == "x.json"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "centinv", "basis", "--lambda", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["result"]["dim"] == 2
