"""Verification suites and the command line surface."""

import json
import subprocess
import sys

import pytest

from seqspaces import DomainError, run_suite
from seqspaces.cli import main


def test_run_suite_unknown():
    with pytest.raises(DomainError):
        run_suite("no-such-suite")
    with pytest.raises(DomainError):
        run_suite("holder", samples=-1)


def test_suite_report_shape():
    rep = run_suite("lorentz-oracle", samples=12, seed=3)
    assert rep.passed and rep.cases == 12 and rep.seed == 3
    d = rep.to_json_dict()
    assert set(d) == {
        "suite", "passed", "cases", "failures", "stats", "seed", "samples",
        "tolerances", "wall_time_s",
    }
    assert d["failures"] == []
    json.dumps(d)  # serializable as-is


def test_suite_determinism_modulo_wall_time():
    for name in ("garling-oracle", "tandori-vp", "fdd", "norm-axioms"):
        a = run_suite(name, samples=15, seed=1).to_json_dict()
        b = run_suite(name, samples=15, seed=1).to_json_dict()
        a.pop("wall_time_s"), b.pop("wall_time_s")
        assert a == b, name


def test_suite_failure_reporting():
    # An impossible tolerance forces failures; the report must collect them
    # (sorted, JSON-clean) and flip passed.
    rep = run_suite("garling-oracle", samples=3, tol=-1.0)
    assert not rep.passed
    assert rep.failures
    enc = [json.dumps(f, sort_keys=True, default=str) for f in rep.failures]
    assert enc == sorted(enc)
    json.dumps(rep.to_json_dict())


def test_cli_norm(capsys):
    assert main(["norm", "--space", "lorentz:w=harmonic,p=1", "--vector", "[3, 1, 2]"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lo"] == out["hi"] == pytest.approx(13.0 / 3.0, abs=1e-15)


def test_cli_exit_codes(capsys):
    assert main(["norm", "--space", "bogus:p=1", "--vector", "[1]"]) == 2
    assert main(["norm", "--space", "lp:p=2", "--vector", "not json"]) == 2
    assert main(["norm", "--space", "cesaro:p=1", "--vector", "[1]"]) == 3
    assert main(["verify", "no-such-suite"]) == 2  # argparse choices
    assert main(["norm", "--space", "lp:p=2"]) == 2  # missing --vector
    assert main(["weight", "check", "--weight", "harmonic",
                 "--condition", "summable", "--N", "100"]) == 2  # needs --r
    assert main(["weight", "check", "--weight", "harmonic",
                 "--condition", "nuc", "--N", "0"]) == 3
    capsys.readouterr()


def test_cli_weight_check(capsys):
    assert main(["weight", "check", "--weight", "power:a=0.5",
                 "--condition", "summable", "--N", "64", "--r", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] == "consistent"
    assert out["condition"] == "summable"


def test_cli_equiv(capsys):
    assert main(["equiv", "--from", "lp:p=1", "--to", "lorentz:w=harmonic,p=1",
                 "--dim", "3", "--strategy", "family"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(out["empirical_lower"] - 18.0 / 11.0) <= 1e-12
    assert out["witness"] == [1.0, 1.0, 1.0]


def test_cli_verify_failure_exit(capsys):
    assert main(["verify", "garling-oracle", "--samples", "3", "--tol", "-1"]) == 1
    captured = capsys.readouterr()
    rep = json.loads(captured.out)
    assert rep["passed"] is False
    assert "failed" in captured.err


def test_cli_verify_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "duality", "--out", str(out)]) == 0
    captured = capsys.readouterr()
    assert captured.out == ""  # report went to the file
    rep = json.loads(out.read_text())
    assert rep["suite"] == "duality" and rep["passed"]


def test_cli_verify_deterministic_bytes(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        assert main(["verify", "lorentz-oracle", "--samples", "10", "--out", str(path)]) == 0
        lines = [l for l in path.read_text().splitlines() if "wall_time_s" not in l]
        outs.append("\n".join(lines))
    assert outs[0] == outs[1]


def test_cli_blocks_pipeline(tmp_path, capsys):
    sys_path = tmp_path / "system.json"
    assert main(["blocks", "build", "--weight", "harmonic", "--p", "1", "--K", "1.5",
                 "--levels", "4", "--out", str(sys_path)]) == 0
    capsys.readouterr()
    obj = json.loads(sys_path.read_text())
    assert [l["M"] for l in obj["levels"]] == [1, 1, 4, 8]

    assert main(["blocks", "verify", "--system", str(sys_path), "--samples", "40"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["passed"] and rep["certificates_ok"]
    assert max(rep["certificates"]) <= 1.5 * (1 + 1e-12)

    assert main(["blocks", "project", "--system", str(sys_path),
                 "--vector", "[1, 1, 1]"]) == 0
    proj = json.loads(capsys.readouterr().out)
    assert proj == [1.0, 1.0, 1.0]  # three singleton blocks up front


def test_cli_blocks_scan_cap(capsys):
    code = main(["blocks", "build", "--weight", "power:a=0.5", "--p", "1",
                 "--K", "1.05", "--levels", "3", "--scan-cap", "20000"])
    assert code == 3
    err = json.loads(capsys.readouterr().err.strip())
    assert err["error"] == "scan cap exceeded"
    assert err["level"] == 2 and err["cap"] == 20000
    assert err["best_ratio"] > 1.05


def test_cli_bad_system_file(capsys):
    assert main(["blocks", "verify", "--system", "/no/such/file.json"]) == 2
    capsys.readouterr()


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "seqspaces", "norm", "--space", "lp:p=2",
         "--vector", "[3, 4]"],
        capture_output=True, text=True, timeout=120,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["mid"] == 5.0
