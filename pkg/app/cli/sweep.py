# app/cli/sweep.py

"""
sweep 명령
- 기준 run 문서 + a / g / n 목록 (각각 반복 가능 옵션)
- 종료 코드: run 들의 최대 종료 코드
"""

from pathlib import Path

import click

from app.cli.common import echo_table, handles_app_errors
from app.configs.run_config import load_run_config
from app.data.store import SWEEP_COLUMNS
from app.services.sweep import run_sweep


@click.command("sweep")
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="base run document")
@click.option("--a", "a_list", type=float, multiple=True)
@click.option("--g", "g_list", type=float, multiple=True)
@click.option("--n", "n_list", type=int, multiple=True)
@click.option("--t-end", type=float, default=None)
@click.option("--output-dir", type=click.Path(path_type=Path), default=None,
              help="sweep root, one subdirectory per run")
@click.option("--workers", type=int, default=None)
@handles_app_errors
def sweep(
    config_path: Path | None,
    a_list: tuple[float, ...],
    g_list: tuple[float, ...],
    n_list: tuple[int, ...],
    t_end: float | None,
    output_dir: Path | None,
    workers: int | None,
) -> int:
    """Run the base document over the Cartesian product of the given values."""
    overrides = {"t_end": t_end} if t_end is not None else None
    base = load_run_config(config_path, overrides)
    grid = {key: list(values) for key, values in (("a", a_list), ("g", g_list), ("n", n_list)) if values}

    rows = run_sweep(base, grid, out_root=output_dir, max_workers=workers)
    echo_table(
        SWEEP_COLUMNS,
        ([getattr(row, column) for column in SWEEP_COLUMNS] for row in rows),
    )
    return max(row.exit_code for row in rows)
