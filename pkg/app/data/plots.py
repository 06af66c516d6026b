# app/data/plots.py

"""
run 그림 (SVG)
- profiles.svg: 선택 시각의 ρ(x)
- j_value.svg / bkm.svg / slope_max.svg: 시계열 (로그 축)
"""

import logging
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from app.core.exceptions import OutputError  # noqa: E402
from app.schemas.diagnostics import DiagnosticsRecord  # noqa: E402
from app.services.solver import SimState  # noqa: E402

logger = logging.getLogger(__name__)

PROFILE_PLOT = "profiles.svg"
SERIES_PLOTS = {
    "j_value": "J(t)",
    "bkm": "BKM integral",
    "slope_max": "max |d rho / dx|",
}
MAX_PROFILE_CURVES = 6

# SVG id/날짜 고정
matplotlib.rcParams["svg.hashsalt"] = "ipm1d"
_SVG_METADATA = {"Date": None}


def _save(fig, path: Path) -> Path:
    try:
        fig.savefig(path, format="svg", metadata=_SVG_METADATA, bbox_inches="tight")
    except OSError as e:
        raise OutputError(f"cannot write plot {path}: {e}") from e
    finally:
        plt.close(fig)
    return path


def _pick(states: Sequence[SimState], count: int) -> list[SimState]:
    if len(states) <= count:
        return list(states)
    index = np.unique(np.linspace(0, len(states) - 1, count).round().astype(int))
    return [states[i] for i in index]


def plot_profiles(path: Path, states: Sequence[SimState]) -> Path:
    """처음/마지막 포함 최대 6개 시각의 ρ(x)."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for state in _pick(states, MAX_PROFILE_CURVES):
        grid = state.field.grid
        ax.plot(grid.points, state.field.values, linewidth=1.2, label=f"t = {state.t:.3g}")
    ax.set_xlabel("x")
    ax.set_ylabel("rho")
    ax.set_xlim(-np.pi, np.pi)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_series(path: Path, records: Sequence[DiagnosticsRecord], column: str) -> Path | None:
    """
    진단 컬럼 1개의 시계열
    - 양의 유한값만 로그 축으로, 없으면 그림 생략 (None)
    """
    t = np.array([r.t for r in records], dtype=np.float64)
    y = np.array([getattr(r, column) for r in records], dtype=np.float64)
    keep = np.isfinite(y) & (y > 0)
    if not np.any(keep):
        logger.info("Plot skipped, no positive values: %s", column)
        return None

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.semilogy(t[keep], y[keep], "o-", markersize=2, linewidth=1)
    ax.set_xlabel("t")
    ax.set_ylabel(SERIES_PLOTS.get(column, column))
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, path)


def write_run_plots(
    root: Path, states: Sequence[SimState], records: Sequence[DiagnosticsRecord]
) -> list[Path]:
    written = [plot_profiles(Path(root) / PROFILE_PLOT, states)]
    for column in SERIES_PLOTS:
        target = plot_series(Path(root) / f"{column}.svg", records, column)
        if target is not None:
            written.append(target)
    logger.info("Plots written: %d files", len(written))
    return written
