# CLI 명령 테스트 (click CliRunner)

import json

from app.data.store import DIAGNOSTICS_FILE
from app.main import cli


def test_help_lists_commands(cli_runner):
    result = cli_runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for name in ("simulate", "operator-check", "kernel-check", "sweep"):
        assert name in result.output


def test_simulate_golden(cli_runner, tmp_path, golden_run_document, golden_csv):
    out = tmp_path / "golden"
    result = cli_runner.invoke(
        cli, ["simulate", "--config", str(golden_run_document), "--output-dir", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert "stop_reason\ttime_reached" in result.stdout
    assert (out / DIAGNOSTICS_FILE).read_text(encoding="utf-8") == golden_csv


def test_simulate_flag_overrides(cli_runner, tmp_path):
    out = tmp_path / "flags"
    result = cli_runner.invoke(
        cli,
        [
            "simulate", "--profile", "constant", "--level", "0.5", "--n", "32",
            "--t-end", "0.2", "--output-every", "0.1", "--output-dir", str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    summary = json.loads((out / "summary.json").read_text())
    assert summary["config"]["n"] == 32
    assert summary["config"]["level"] == 0.5
    assert summary["stop_reason"] == "time_reached"


def test_simulate_invalid_parameter_exits_1(cli_runner, tmp_path):
    result = cli_runner.invoke(
        cli, ["simulate", "--a", "-1", "--output-dir", str(tmp_path / "bad")]
    )
    assert result.exit_code == 1
    assert "a" in result.stderr


def test_simulate_missing_config_exits_1(cli_runner, tmp_path):
    result = cli_runner.invoke(cli, ["simulate", "--config", str(tmp_path / "nope.yaml")])
    assert result.exit_code == 1
    assert "CONFIGURATION_ERROR" in result.stderr


def test_operator_check(cli_runner, tmp_path):
    result = cli_runner.invoke(
        cli, ["operator-check", "--a", "1.0", "--n", "64", "--report-dir", str(tmp_path)]
    )
    assert result.exit_code == 0, result.output
    assert "failed\t0" in result.stdout
    report = json.loads((tmp_path / "operator_report_a1.json").read_text())
    assert report["n"] == 64


def test_kernel_check(cli_runner):
    result = cli_runner.invoke(cli, ["kernel-check", "--a", "1.0"])
    assert result.exit_code == 0, result.output
    assert "kernel_bound\tpass" in result.stdout
    assert "failed\t0" in result.stdout


def test_kernel_check_rejects_q(cli_runner):
    result = cli_runner.invoke(cli, ["kernel-check", "--a", "1.0", "--q", "2.5"])
    assert result.exit_code == 1
    assert "PARAMETER_ERROR" in result.stderr


def test_sweep_empty_grid_exits_1(cli_runner, tmp_path):
    result = cli_runner.invoke(cli, ["sweep", "--output-dir", str(tmp_path)])
    assert result.exit_code == 1
    assert "sweep grid is empty" in result.stderr


def test_sweep_command(cli_runner, tmp_path, golden_run_document):
    result = cli_runner.invoke(
        cli,
        [
            "sweep", "--config", str(golden_run_document), "--g", "1.0", "--g", "2.0",
            "--output-dir", str(tmp_path), "--workers", "2",
        ],
    )
    assert result.exit_code == 0, result.output
    assert (tmp_path / "sweep_summary.csv").is_file()
    assert "run001_g2" in result.stdout
