from __future__ import annotations

import json

import pytest

from macdoall.cli import main


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_run_emits_metrics_and_trace(tmp_path):
    cfg = _write(tmp_path, "run.json", {
        "protocol": "two_lists", "channel": "nocd", "p": 1, "t": 1,
    })
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == 0
    metrics = json.loads((out / "metrics.json").read_text())
    assert metrics["work"] == 3 and metrics["time"] == 3 and metrics["energy"] == 1
    assert metrics["reliable"] is True
    lines = (out / "trace.jsonl").read_text().splitlines()
    assert len(lines) == 3
    assert json.loads(lines[0])["round"] == 1


def test_run_with_adversary(tmp_path):
    cfg = _write(tmp_path, "run.json", {
        "protocol": "grubtech", "channel": "nocd", "p": 8, "t": 8, "f": 4,
        "adversary": {"label": "weakly_adaptive",
                      "strategy": {"name": "leader_hunter"}},
    })
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out), "--seed", "3"]) == 0


def test_sweep_writes_csv(tmp_path):
    cfg = _write(tmp_path, "sweep.json", {
        "protocol": "two_lists", "channel": "nocd",
        "grid": {"p": [2, 4], "t": [4], "f": [0]}, "seeds_per_cell": 1,
    })
    out = tmp_path / "out"
    assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
    header = (out / "sweep.csv").read_text().splitlines()[0]
    assert header == "protocol,channel,adversary,strategy,p,t,f,k,seed,work,time,energy"
    assert (out / "report.json").exists()


def test_fit_exit_code(tmp_path):
    cfg = _write(tmp_path, "fit.json", {
        "protocol": "two_lists", "channel": "nocd", "bound": "two_lists",
        "grid": {"p": [2, 4, 8], "t": [16], "f": [0]}, "seeds_per_cell": 1,
    })
    out = tmp_path / "out"
    assert main(["fit", "--config", cfg, "--out", str(out)]) == 0
    fit = json.loads((out / "fit.json").read_text())
    assert fit["holds"]


def test_verify_subcommand(tmp_path):
    out = tmp_path / "out"
    assert main(["verify", "--seed", "0", "--out", str(out)]) == 0
    report = json.loads((out / "verify.json").read_text())
    assert all(c["verdict"] == "pass" for c in report["checks"])


def test_poset_check(tmp_path):
    cfg = _write(tmp_path, "poset.json", {
        "elements": [1, 2, 3, 4], "covers": [[1, 3], [2, 3]],
    })
    out = tmp_path / "out"
    assert main(["poset-check", "--config", cfg, "--out", str(out)]) == 0
    info = json.loads((out / "poset.json").read_text())
    assert info["thickness"] == 3 and info["chains"] == 3


def test_config_error_exit_code(tmp_path):
    missing = str(tmp_path / "nope.json")
    assert main(["run", "--config", missing]) == 2
    bad = _write(tmp_path, "bad.json", {"protocol": "two_lists"})
    assert main(["run", "--config", bad]) == 2
    wrong = _write(tmp_path, "wrong.json", {
        "protocol": "two_lists", "channel": "beeping", "p": 2, "t": 2,
    })
    assert main(["run", "--config", wrong]) == 1
