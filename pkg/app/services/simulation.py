# app/services/simulation.py

"""
simulate 본체
- run 문서 → 초기 데이터 → solver.run → 진단 → 파일 출력
- 출력: diagnostics.csv, 초기/최종 스냅샷, summary.json, SVG 그림
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path

from app.configs.run_config import resolve_output_dir
from app.core.exceptions import EXIT_NUMERIC, EXIT_OK, FitError
from app.data.plots import write_run_plots
from app.data.store import (
    FINAL_SNAPSHOT_FILE,
    INITIAL_SNAPSHOT_FILE,
    RunStore,
    prepare_output_dir,
)
from app.schemas.diagnostics import DiagnosticsRecord, RiccatiFit
from app.schemas.run import RunConfig, RunSummary
from app.schemas.solver import StopReason
from app.services.diagnostics import compute_j_rate, diagnostics_record, fit_riccati
from app.services.profiles import initial_field
from app.services.solver import RunResult, run

logger = logging.getLogger(__name__)

# 항등식 J' 와 차분 J' 의 허용 상대 차이
J_RATE_RTOL = 0.05


@dataclass
class SimulationOutcome:
    """simulate 결과 (요약 + 출력 위치)"""

    summary: RunSummary
    root: Path
    records: list[DiagnosticsRecord]

    @property
    def exit_code(self) -> int:
        return self.summary.exit_code


def _riccati(records: list[DiagnosticsRecord]) -> tuple[RiccatiFit | None, str | None]:
    """유한하고 양인 J 샘플만으로 fit, 실패 사유는 문자열로."""
    series = [(r.t, r.j_value) for r in records if math.isfinite(r.j_value) and r.j_value > 0]
    try:
        return fit_riccati(series), None
    except FitError as e:
        logger.info("Riccati fit skipped: %s", e.message)
        return None, e.message


def _j_rate_cross_check(
    result: RunResult, records: list[DiagnosticsRecord], cfg: RunConfig
) -> tuple[float | None, float | None]:
    """
    두 번째 출력 시각에서 J' 비교
    - 항등식: -g∫ H_aρ ∂xρ / x^{1+δ}
    - 중심차분: (J₂ - J₀)/(t₂ - t₀)
    """
    if len(records) < 3:
        return None, None
    j0, j1, j2 = (records[i].j_value for i in range(3))
    if not all(math.isfinite(j) for j in (j0, j1, j2)):
        return None, None

    identity = compute_j_rate(result.trajectory[1].field, cfg.a, cfg.g, cfg.delta)
    difference = (j2 - j0) / (records[2].t - records[0].t)
    scale = max(abs(identity), abs(difference))
    if scale > 0 and abs(identity - difference) > J_RATE_RTOL * scale:
        logger.warning(
            "J' mismatch at t=%.6f: identity=%.6e difference=%.6e",
            records[1].t,
            identity,
            difference,
        )
    return identity, difference


def run_simulation(cfg: RunConfig, out_dir: Path | None = None) -> SimulationOutcome:
    """
    run 1회 실행 후 결과 파일 기록

    Args:
    - cfg: 검증된 run 문서
    - out_dir: 출력 디렉토리 (None 이면 resolve_output_dir)

    Returns:
    - SimulationOutcome (exit_code: non-finite 정지면 2, 그 외 0)

    Raise:
    - OutputError: 출력 디렉토리 생성/쓰기 실패
    - NumericError: 초기 데이터가 non-finite
    """
    root = prepare_output_dir(Path(out_dir) if out_dir is not None else resolve_output_dir(cfg))
    store = RunStore(root)
    params = cfg.model_params()

    rho0 = initial_field(cfg)
    result = run(cfg.solver_config(), rho0)
    records = [diagnostics_record(state, params) for state in result.trajectory]

    riccati, riccati_error = _riccati(records)
    j_identity, j_difference = _j_rate_cross_check(result, records, cfg)

    first, last = records[0], records[-1]
    exit_code = EXIT_NUMERIC if result.reason is StopReason.NONFINITE_VALUE else EXIT_OK
    summary = RunSummary(
        stop_reason=result.reason,
        t_final=result.final.t,
        steps=result.steps,
        bkm=result.final.bkm,
        slope_max_initial=first.slope_max,
        slope_max_final=last.slope_max,
        slope_growth=last.slope_max / first.slope_max if first.slope_max > 0 else None,
        riccati=riccati,
        riccati_error=riccati_error,
        j_rate_identity=j_identity,
        j_rate_difference=j_difference,
        exit_code=exit_code,
        config=cfg,
    )

    store.write_diagnostics(records)
    store.write_snapshot(INITIAL_SNAPSHOT_FILE, result.trajectory[0])
    store.write_snapshot(FINAL_SNAPSHOT_FILE, result.final)
    store.write_summary(summary)
    write_run_plots(root, result.trajectory, records)

    logger.info(
        "Simulation done: reason=%s t=%.6f bkm=%.6e exit=%d dir=%s",
        result.reason.value,
        result.final.t,
        result.final.bkm,
        exit_code,
        root,
    )
    return SimulationOutcome(summary=summary, root=root, records=records)
