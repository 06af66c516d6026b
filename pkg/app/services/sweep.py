# app/services/sweep.py

"""
파라미터 sweep
- a / g / n 목록의 데카르트 곱, 격자점마다 독립 run
- ProcessPoolExecutor 로 동시 실행, run 마다 별도 디렉토리
- 개별 run 실패는 SweepRow 에 기록하고 계속 진행
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Mapping, Sequence

from pydantic import ValidationError

from app.configs.run_config import resolve_output_dir
from app.core.config import settings
from app.core.exceptions import EXIT_VALIDATION, AppError, ConfigurationError, ParameterError
from app.data.store import prepare_output_dir, write_sweep_summary
from app.schemas.run import RunConfig, SweepRow
from app.services.simulation import run_simulation

logger = logging.getLogger(__name__)

SWEEP_KEYS = ("a", "g", "n")


def _label(index: int, point: Mapping[str, Any]) -> str:
    parts = [f"{key}{point[key]:g}" for key in SWEEP_KEYS if key in point]
    return "_".join([f"run{index:03d}", *parts])


def expand_grid(base: RunConfig, grid: Mapping[str, Sequence[Any]]) -> list[tuple[str, RunConfig]]:
    """
    sweep 격자 → (라벨, RunConfig) 목록

    Raise:
    - ParameterError: 빈 격자, 알 수 없는 키, 빈 값 목록
    - ConfigurationError: 격자점이 run 문서 검증에 실패
    """
    axes = {key: list(values) for key, values in grid.items() if values is not None}
    unknown = set(axes) - set(SWEEP_KEYS)
    if unknown:
        raise ParameterError(f"sweep keys must be among {SWEEP_KEYS}, got {sorted(unknown)}")
    if not axes or any(len(values) == 0 for values in axes.values()):
        raise ParameterError("sweep grid is empty")

    keys = [key for key in SWEEP_KEYS if key in axes]
    base_doc = base.model_dump()
    points: list[tuple[str, RunConfig]] = []
    for index, combo in enumerate(itertools.product(*(axes[key] for key in keys))):
        point = dict(zip(keys, combo))
        try:
            cfg = RunConfig.model_validate({**base_doc, **point})
        except ValidationError as e:
            raise ConfigurationError(f"invalid sweep point {point}: {e.errors()[0]['msg']}") from e
        points.append((_label(index, point), cfg))
    return points


def _sweep_worker(label: str, document: dict[str, Any], out_dir: str) -> SweepRow:
    """프로세스 풀 작업 단위 (pickle 가능한 인자만)."""
    cfg = RunConfig.model_validate(document)
    try:
        outcome = run_simulation(cfg, Path(out_dir))
    except AppError as e:
        return SweepRow(
            label=label,
            a=cfg.a,
            g=cfg.g,
            n=cfg.n,
            stop_reason="error",
            exit_code=e.exit_code,
            error=f"{e.error_code}: {e.message}",
        )
    summary = outcome.summary
    return SweepRow(
        label=label,
        a=cfg.a,
        g=cfg.g,
        n=cfg.n,
        stop_reason=summary.stop_reason.value,
        stop_time=summary.t_final,
        bkm=summary.bkm,
        c_hat=summary.riccati.c_hat if summary.riccati is not None else None,
        exit_code=summary.exit_code,
    )


def run_sweep(
    base: RunConfig,
    grid: Mapping[str, Sequence[Any]],
    out_root: Path | None = None,
    max_workers: int | None = None,
) -> list[SweepRow]:
    """
    sweep 실행 후 sweep_summary.csv 기록

    Args:
    - base: 기준 run 문서
    - grid: {"a": [...], "g": [...], "n": [...]} 중 일부
    - out_root: sweep 루트 (None 이면 resolve_output_dir(base))
    - max_workers: 동시 실행 수 (None 이면 settings.SWEEP_MAX_WORKERS)

    Returns:
    - 라벨 순 SweepRow 목록
    """
    points = expand_grid(base, grid)
    root = prepare_output_dir(Path(out_root) if out_root is not None else resolve_output_dir(base))
    workers = max_workers or settings.SWEEP_MAX_WORKERS
    logger.info("Sweep start: %d runs, workers=%s, root=%s", len(points), workers, root)

    rows: list[SweepRow] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            (label, cfg, pool.submit(_sweep_worker, label, cfg.model_dump(mode="json"), str(root / label)))
            for label, cfg in points
        ]
        for label, cfg, future in futures:
            try:
                row = future.result()
            except Exception as e:
                logger.error("Sweep run %s failed: %s", label, e)
                row = SweepRow(
                    label=label,
                    a=cfg.a,
                    g=cfg.g,
                    n=cfg.n,
                    stop_reason="error",
                    exit_code=EXIT_VALIDATION,
                    error=f"{type(e).__name__}: {e}",
                )
            logger.info("Sweep run %s: reason=%s exit=%d", label, row.stop_reason, row.exit_code)
            rows.append(row)

    write_sweep_summary(root, rows)
    return rows
