import json
import os
import subprocess
import sys

import pytest

from hnbounds.cli import run_config, validate_config, ConfigError


def run_cli(args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "hnbounds.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def test_validate_config():
    validate_config({"suite": "geometric"})
    with pytest.raises(ConfigError):
        validate_config({"suite": "nope"})
    with pytest.raises(ConfigError):
        validate_config({"suite": "lattice", "parameters": {"rank": 99}})
    with pytest.raises(ConfigError):
        validate_config({})


def test_geometric_suite_counts(tmp_path):
    out = tmp_path / "geo.json"
    status, reports = run_config(
        {
            "suite": "geometric",
            "parameters": {"a_max": 6, "b_max": 6, "e_max": 2},
            "output": {"path": str(out), "format": "json"},
        }
    )
    assert status == 0
    # grid size: 36 (e=0) + 21 (e=1) + 9 (e=2)
    assert len(reports) == 66
    data = json.loads(out.read_text())
    assert len(data) == 66 and all(r["pass"] for r in data)


def test_filtered_suite():
    status, reports = run_config(
        {"suite": "filtered", "parameters": {"a_max": 4, "b_max": 4, "e_max": 1}}
    )
    assert status == 0 and len(reports) == 16 + 10


def test_lattice_suite_three_reports_per_trial():
    status, reports = run_config(
        {"suite": "lattice", "parameters": {"rank": 2, "trials": 200}, "seed": 42}
    )
    assert status == 0
    assert len(reports) == 600
    assert all(r.passed for r in reports)


def test_lattice_suite_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    cfg = {
        "suite": "lattice",
        "parameters": {"rank": 2, "trials": 10},
        "seed": 7,
    }
    run_config({**cfg, "output": {"path": str(out1)}})
    run_config({**cfg, "output": {"path": str(out2)}})
    assert out1.read_bytes() == out2.read_bytes()


def test_parallel_matches_serial(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "suite": "geometric",
                "parameters": {"a_max": 3, "b_max": 3, "e_max": 1},
                "seed": 5,
                "output": {"path": str(out1), "format": "json"},
            }
        )
    )
    r = run_cli(["run", str(cfg)])
    assert r.returncode == 0, r.stderr
    cfg2 = json.loads(cfg.read_text())
    cfg2["output"]["path"] = str(out2)
    cfg_file2 = tmp_path / "cfg2.json"
    cfg_file2.write_text(json.dumps(cfg2))
    r2 = run_cli(["run", str(cfg_file2)], env_extra={"HNBOUNDS_JOBS": "3"})
    assert r2.returncode == 0, r2.stderr
    assert out1.read_bytes() == out2.read_bytes()


def test_arithmetic_suite():
    status, reports = run_config({"suite": "arithmetic", "parameters": {"max_rank": 3}})
    assert status == 0
    assert len(reports) == 3 + 9 + 27


def test_epsilon_suite():
    status, reports = run_config(
        {"suite": "epsilon", "parameters": {"trials": 30}, "seed": 11}
    )
    assert status == 0 and len(reports) == 60


def test_polygon_suite_echo():
    status, reports = run_config(
        {"suite": "polygon", "parameters": {"hn": [[2, "3"], [1, "-1"]]}}
    )
    assert status == 0
    ctx = reports[0].context
    assert ctx["deg_plus"].as_fraction() == 6
    assert ctx["mu_max"].as_fraction() == 3
    assert ctx["integral_identity"] is True


def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"suite": "bogus"}))
    r = run_cli(["run", str(bad)])
    assert r.returncode == 2
    assert "config error" in r.stderr

    missing = run_cli(["run", str(tmp_path / "absent.json")])
    assert missing.returncode == 2

    good = tmp_path / "good.json"
    good.write_text(json.dumps({"suite": "geometric", "parameters": {"a_max": 2, "b_max": 2, "e_max": 0}}))
    r = run_cli(["run", str(good)])
    assert r.returncode == 0
    assert r.stdout.strip().splitlines()[-1] == "4/4"


def test_run_exits_one_on_failing_check(monkeypatch):
    from hnbounds.bounds import CheckReport
    from hnbounds.scalars import Scalar
    from hnbounds import cli

    def failing_suite(params, rng):
        return [CheckReport.compare("forced", Scalar.exact(2), Scalar.exact(1))]

    monkeypatch.setitem(cli.SUITE_RUNNERS, "polygon", failing_suite)
    status, reports = run_config({"suite": "polygon", "parameters": {"hn": [[1, "0"]]}})
    assert status == 1 and not reports[0].passed


def test_cli_summary_line_format():
    cfg = {"suite": "geometric", "parameters": {"a_max": 2, "b_max": 2, "e_max": 0}}
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        status, reports = run_config(cfg)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0].startswith("suite=geometric seed=")
    assert lines[-1] == f"{len(reports)}/{len(reports)}"


def test_polygon_subcommand():
    r = run_cli(["polygon", "--hn", '[[2,"3"],[1,"-1"]]'])
    assert r.returncode == 0
    assert '"deg_plus": "6"' in r.stdout
    assert '"mu_max": "3"' in r.stdout


def test_epsilon_subcommand():
    r = run_cli(
        ["epsilon", "--tower", '{"genera":[0,0],"mu":["2","0"],"vol":["0","3"]}']
    )
    assert r.returncode == 0
    assert json.loads(r.stdout.strip())["epsilon"] == "6"
    # char-p variant with ell(g) = g + 1
    r = run_cli(
        [
            "epsilon",
            "--tower",
            '{"genera":[0,0],"mu":["2","0"],"vol":["0","3"]}',
            "--ell",
            "[1, 1]",
        ]
    )
    assert json.loads(r.stdout.strip())["epsilon"] == "10"


def test_lattice_subcommand():
    r = run_cli(["lattice", "--gram", '[["1","0"],["0","1"]]'])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert len(data) == 3 and all(rep["pass"] for rep in data)


def test_p1z_subcommand():
    r = run_cli(["p1z", "--degree", "1"])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["count"] == 5 and data["report"]["pass"]


def test_csv_output(tmp_path):
    out = tmp_path / "r.csv"
    run_config(
        {
            "suite": "geometric",
            "parameters": {"a_max": 2, "b_max": 2, "e_max": 0},
            "output": {"path": str(out), "format": "csv"},
        }
    )
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "name,lhs,rhs,margin,pass"
    assert len(lines) == 5
