# app/main.py
"""
ipm1d 진입점
- cli: click 그룹 (simulate, operator-check, kernel-check, sweep)
"""

import logging

import click

from app.cli.checks import kernel_check, operator_check
from app.cli.simulate import simulate
from app.cli.sweep import sweep
from app.core.logging import setup_logging

logger = logging.getLogger(__name__)


@click.group("ipm1d")
@click.option("--log-level", default=None, help="overrides LOG_LEVEL")
def cli(log_level: str | None) -> None:
    """1D IPM boundary model: simulation and numerical verification."""
    setup_logging(log_level)


cli.add_command(simulate)
cli.add_command(operator_check)
cli.add_command(kernel_check)
cli.add_command(sweep)


if __name__ == "__main__":
    cli()
