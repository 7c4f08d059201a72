import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from polya_bernstein.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def run_main(args, env=None):
    """Invoke the installed entry point in a subprocess (exit codes, stderr)."""
    cmd = [sys.executable, "-m", "polya_bernstein.cli", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


class TestEval:
    def test_rn_endpoint(self, runner):
        res = runner.invoke(cli, ["eval", "--op", "rn", "--fn", "abs-mid", "--n", "6", "--x", "0"])
        assert res.exit_code == 0
        assert res.output.strip() == "0.5"

    def test_bernstein_hand_sum(self, runner):
        res = runner.invoke(
            cli, ["eval", "--op", "bernstein", "--fn", "square", "--n", "2", "--x", "0.5"]
        )
        assert res.exit_code == 0
        assert res.output.strip() == "0.375"

    def test_rn_linear_reproduction(self, runner):
        res = runner.invoke(
            cli, ["eval", "--op", "rn", "--fn", "linear", "--n", "10", "--x", "0.73"]
        )
        assert res.exit_code == 0
        assert float(res.output) == pytest.approx(0.73, abs=1e-12)

    def test_grid_mode_csv(self, runner, tmp_path):
        out = tmp_path / "curve.csv"
        res = runner.invoke(
            cli,
            ["eval", "--op", "bernstein", "--fn", "square", "--n", "4",
             "--grid-points", "11", "--out", str(out)],
        )
        assert res.exit_code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "x,fx,opx,error"
        assert len(lines) == 12

    def test_csv_function_source(self, runner, tmp_path):
        table = tmp_path / "f.csv"
        table.write_text("x,fx\n0,0\n1,1\n")
        res = runner.invoke(
            cli, ["eval", "--op", "rn", "--fn-csv", str(table), "--n", "5", "--x", "0.4"]
        )
        assert res.exit_code == 0
        assert float(res.output) == pytest.approx(0.4, abs=1e-12)


class TestScan:
    def test_sikkema_report(self, runner, tmp_path):
        out = tmp_path / "scan.json"
        res = runner.invoke(
            cli,
            ["scan", "--sikkema", "--n", "2..8", "--c-mode", "zero",
             "--points", "2001", "--workers", "1", "--out", str(out)],
        )
        assert res.exit_code == 0
        payload = json.loads(out.read_text())
        assert payload["schema"] == 1
        assert len(payload["per_n"]) == 7

    def test_sikkema_rn_n6_bound(self, runner, tmp_path):
        out = tmp_path / "scan.json"
        res = runner.invoke(
            cli,
            ["scan", "--sikkema", "--n", "6..6", "--c-mode", "rn",
             "--workers", "1", "--out", str(out)],
        )
        assert res.exit_code == 0
        payload = json.loads(out.read_text())
        assert payload["sup"] <= 1.0699134 + 1e-6

    def test_popoviciu_scan(self, runner, tmp_path):
        out = tmp_path / "ratio.json"
        res = runner.invoke(
            cli,
            ["scan", "--popoviciu", "--fn", "abs-mid", "--op", "rn", "--n", "2..10",
             "--points", "2001", "--workers", "1", "--out", str(out)],
        )
        assert res.exit_code == 0
        payload = json.loads(out.read_text())
        assert payload["sup"] <= 1.08970

    def test_curves_csv_export(self, runner, tmp_path):
        out = tmp_path / "scan.json"
        curves = tmp_path / "curves.csv"
        res = runner.invoke(
            cli,
            ["scan", "--sikkema", "--n", "4..4", "--points", "1001",
             "--workers", "1", "--out", str(out), "--curves-csv", str(curves)],
        )
        assert res.exit_code == 0
        lines = curves.read_text().splitlines()
        assert lines[0] == "n,x,value"
        assert all(line.startswith("4,") for line in lines[1:])

    def test_requires_mode(self, runner):
        res = runner.invoke(cli, ["scan", "--n", "2..4"])
        assert res.exit_code == 2


class TestVerify:
    def test_passing_checks_exit_zero(self):
        res = run_main(
            ["verify", "--lemma", "--kozniewska", "--n", "2..6",
             "--points", "501", "--c-samples", "5", "--workers", "1"]
        )
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert all(r["passed"] for r in payload["reports"])

    def test_n6_check(self):
        res = run_main(["verify", "--n6", "--workers", "1"])
        assert res.returncode == 0

    def test_conjecture_is_exploratory(self):
        res = run_main(
            ["verify", "--conjecture", "--n", "2..5", "--points", "501",
             "--c-samples", "5", "--workers", "1"]
        )
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert "finding" in payload["reports"][0]

    def test_requires_selection(self):
        res = run_main(["verify"])
        assert res.returncode == 2
        err = json.loads(res.stderr)
        assert err["kind"] == "error"


class TestCompare:
    def test_writes_error_profiles(self, runner, tmp_path):
        out = tmp_path / "cmp.csv"
        res = runner.invoke(
            cli, ["compare", "--fn", "abs-mid", "--n", "6", "--points", "101", "--out", str(out)]
        )
        assert res.exit_code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "x,err_bernstein,err_rn"
        assert len(lines) == 102


class TestFailurePaths:
    def test_unknown_function_json_error(self):
        res = run_main(["eval", "--op", "rn", "--fn", "nope", "--n", "6", "--x", "0.5"])
        assert res.returncode == 2
        err = json.loads(res.stderr)
        assert err["schema"] == 1
        assert "nope" in err["message"]

    def test_usage_error_json(self):
        res = run_main(["scan", "--sikkema", "--n", "9..2"])
        assert res.returncode == 2
        err = json.loads(res.stderr)
        assert err["error"] == "usage"

    def test_bad_workers(self):
        res = run_main(["scan", "--sikkema", "--n", "2..3", "--workers", "0"])
        assert res.returncode == 2


class TestDeterminism:
    def test_identical_json_across_worker_counts(self, tmp_path):
        args = ["scan", "--sikkema", "--n", "2..8", "--points", "2001"]
        a = run_main([*args, "--workers", "1", "--out", str(tmp_path / "a.json")])
        b = run_main([*args, "--workers", "3", "--out", str(tmp_path / "b.json")])
        assert a.returncode == b.returncode == 0
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
