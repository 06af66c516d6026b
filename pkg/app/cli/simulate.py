# app/cli/simulate.py

"""
simulate 명령
- run 문서 (--config, 없으면 defaults.yaml) + 플래그 override
- 종료 코드: 0 성공 (blow-up proxy 정지 포함), 1 검증 오류, 2 non-finite
"""

import logging
from pathlib import Path
from typing import get_args

import click

from app.cli.common import handles_app_errors, run_overrides
from app.configs.run_config import load_run_config
from app.schemas.run import ProfileName
from app.services.simulation import run_simulation

logger = logging.getLogger(__name__)

PROFILE_CHOICES = list(get_args(ProfileName))


@click.command("simulate")
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="run document (YAML, flat keys)")
@click.option("--n", type=int, default=None, help="grid size (even)")
@click.option("--a", type=float, default=None, help="boundary-layer thickness")
@click.option("--g", type=float, default=None, help="gravitational constant")
@click.option("--cfl", type=float, default=None)
@click.option("--t-end", type=float, default=None)
@click.option("--output-every", type=float, default=None)
@click.option("--slope-stop", type=float, default=None)
@click.option("--tail-stop", type=float, default=None)
@click.option("--profile", type=click.Choice(PROFILE_CHOICES), default=None)
@click.option("--level", type=float, default=None, help="value of the constant profile")
@click.option("--delta", type=float, default=None)
@click.option("--s", type=int, default=None)
@click.option("--output-dir", type=click.Path(path_type=Path), default=None)
@handles_app_errors
def simulate(config_path: Path | None, **flags) -> int:
    """Integrate the model and write diagnostics, snapshots, summary and plots."""
    cfg = load_run_config(config_path, run_overrides(**flags))
    outcome = run_simulation(cfg)
    summary = outcome.summary

    click.echo(f"stop_reason\t{summary.stop_reason.value}")
    click.echo(f"t_final\t{summary.t_final!r}")
    click.echo(f"bkm\t{summary.bkm!r}")
    if summary.riccati is not None:
        click.echo(f"c_hat\t{summary.riccati.c_hat!r}")
    click.echo(f"output_dir\t{outcome.root}")
    return outcome.exit_code
