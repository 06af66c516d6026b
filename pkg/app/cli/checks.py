# app/cli/checks.py

"""
operator-check / kernel-check 명령
- a 목록마다 suite 실행, pass/fail 표 출력
- 하나라도 fail 이면 종료 코드 1
- --report-dir 지정 시 리포트 JSON 저장
"""

import logging
from pathlib import Path

import click

from app.cli.common import handles_app_errors
from app.configs.run_config import load_run_config
from app.core.exceptions import EXIT_OK, EXIT_VALIDATION
from app.data.store import RunStore, prepare_output_dir
from app.services.checks import run_kernel_suite, run_operator_suite

logger = logging.getLogger(__name__)

OPERATOR_DEFAULT_A = (0.1, 1.0, 10.0)
KERNEL_DEFAULT_A = (0.05, 1.0, 10.0)
OPERATOR_DEFAULT_N = 256


def _store(report_dir: Path | None) -> RunStore | None:
    return RunStore(prepare_output_dir(report_dir)) if report_dir is not None else None


@click.command("operator-check")
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="run document; its a and n replace the built-in defaults")
@click.option("--a", "a_list", type=float, multiple=True, help="repeatable")
@click.option("--n", type=int, default=None, help="grid size")
@click.option("--seed", type=int, default=0, help="seed for random band-limited fields")
@click.option("--report-dir", type=click.Path(path_type=Path), default=None)
@handles_app_errors
def operator_check(
    config_path: Path | None,
    a_list: tuple[float, ...],
    n: int | None,
    seed: int,
    report_dir: Path | None,
) -> int:
    """Run the operator property suite for every a."""
    a_values, grid_n = list(a_list) or list(OPERATOR_DEFAULT_A), n or OPERATOR_DEFAULT_N
    if config_path is not None:
        cfg = load_run_config(config_path)
        a_values = list(a_list) or [cfg.a]
        grid_n = n or cfg.n

    store = _store(report_dir)
    failed = 0
    click.echo("a\tn\tcheck\tstatus\tmargin\tlocation")
    for a in a_values:
        report = run_operator_suite(a, grid_n, seed=seed)
        for check in report.checks:
            click.echo(f"{a!r}\t{grid_n}\t{check.line()}")
        failed += sum(not check.passed for check in report.checks)
        if store is not None:
            store.write_model(f"operator_report_a{a:g}.json", report)

    click.echo(f"failed\t{failed}")
    return EXIT_VALIDATION if failed else EXIT_OK


@click.command("kernel-check")
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="run document; its a, q and sigma replace the built-in defaults")
@click.option("--a", "a_list", type=float, multiple=True, help="repeatable")
@click.option("--q", type=float, default=None)
@click.option("--sigma", type=float, default=None)
@click.option("--m", type=int, default=1000, help="points per monotonicity grid")
@click.option("--report-dir", type=click.Path(path_type=Path), default=None)
@handles_app_errors
def kernel_check(
    config_path: Path | None,
    a_list: tuple[float, ...],
    q: float | None,
    sigma: float | None,
    m: int,
    report_dir: Path | None,
) -> int:
    """Run the kernel property suite for every a."""
    cfg = load_run_config(config_path)
    a_values = list(a_list) or ([cfg.a] if config_path is not None else list(KERNEL_DEFAULT_A))
    q = cfg.q if q is None else q
    sigma = cfg.sigma if sigma is None else sigma

    store = _store(report_dir)
    failed = 0
    for a in a_values:
        report = run_kernel_suite(a, q, sigma, m=m)
        click.echo(f"# a={a!r} q={q!r} sigma={sigma!r} key_constant={report.key_constant!r}")
        for check in report.checks:
            click.echo(check.line())
        failed += sum(not check.passed for check in report.checks)
        if store is not None:
            store.write_model(f"kernel_report_a{a:g}.json", report)

    click.echo(f"failed\t{failed}")
    return EXIT_VALIDATION if failed else EXIT_OK
