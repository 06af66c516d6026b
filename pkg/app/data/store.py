# app/data/store.py

"""
run 출력 저장소
- 진단 CSV (고정 컬럼 순서)
- 필드 스냅샷 (JSON, 버전 태그 ipm1d-snapshot/1)
- run 요약 / 검증 리포트 / sweep 요약
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ValidationError

from app.core.exceptions import ConfigurationError, OutputError
from app.schemas.diagnostics import DIAGNOSTICS_COLUMNS, DiagnosticsRecord
from app.schemas.run import FieldSnapshot, RunSummary, SweepRow
from app.services.grid_spectral import PeriodicField, make_grid
from app.services.solver import SimState

logger = logging.getLogger(__name__)

DIAGNOSTICS_FILE = "diagnostics.csv"
INITIAL_SNAPSHOT_FILE = "snapshot_initial.json"
FINAL_SNAPSHOT_FILE = "snapshot_final.json"
SUMMARY_FILE = "summary.json"
SWEEP_SUMMARY_FILE = "sweep_summary.csv"

SWEEP_COLUMNS: tuple[str, ...] = tuple(SweepRow.model_fields)


def format_float(value: float) -> str:
    """repr 기반 (bit 단위 round-trip), -0.0 은 0.0 으로."""
    return repr(float(value) + 0.0)


def prepare_output_dir(path: Path) -> Path:
    """
    출력 디렉토리 생성

    Raise:
    - OutputError: 생성 불가 또는 파일 경로
    """
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except (FileExistsError, NotADirectoryError) as e:
        raise OutputError(f"output path is not a directory: {path}") from e
    except OSError as e:
        raise OutputError(f"cannot create output directory {path}: {e}") from e
    if not path.is_dir():
        raise OutputError(f"output path is not a directory: {path}")
    return path


def snapshot_from_state(state: SimState) -> FieldSnapshot:
    f = state.field
    return FieldSnapshot(
        n=f.grid.n,
        t=state.t,
        bkm=state.bkm,
        values=[float(v) for v in f.values],
        spectrum_re=[float(v) for v in np.real(f.spectrum)],
        spectrum_im=[float(v) for v in np.imag(f.spectrum)],
    )


def state_from_snapshot(snapshot: FieldSnapshot) -> SimState:
    """격자 값으로 필드 복원 (스펙트럼은 재계산)."""
    field = PeriodicField.from_values(make_grid(snapshot.n), np.asarray(snapshot.values))
    return SimState(field=field, t=snapshot.t, bkm=snapshot.bkm)


@dataclass
class RunStore:
    """
    run 디렉토리 1개의 파일 입출력

    책임:
    - 진단 CSV 쓰기/읽기
    - 초기/최종 스냅샷 쓰기/읽기
    - 요약 문서 쓰기
    """

    root: Path

    def __post_init__(self) -> None:
        self.root = Path(self.root)

    def path(self, name: str) -> Path:
        return self.root / name

    def _write_text(self, name: str, text: str) -> Path:
        target = self.path(name)
        try:
            with target.open("w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as e:
            raise OutputError(f"cannot write {target}: {e}") from e
        return target

    def write_model(self, name: str, model: BaseModel) -> Path:
        return self._write_text(name, model.model_dump_json(indent=2) + "\n")

    def write_diagnostics(self, records: Iterable[DiagnosticsRecord]) -> Path:
        target = self.path(DIAGNOSTICS_FILE)
        try:
            with target.open("w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(DIAGNOSTICS_COLUMNS)
                for record in records:
                    writer.writerow([format_float(v) for v in record.row()])
        except OSError as e:
            raise OutputError(f"cannot write {target}: {e}") from e
        logger.info("Diagnostics CSV written: %s", target)
        return target

    def read_diagnostics(self) -> list[DiagnosticsRecord]:
        target = self.path(DIAGNOSTICS_FILE)
        with target.open(encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if tuple(reader.fieldnames or ()) != DIAGNOSTICS_COLUMNS:
                raise ConfigurationError(f"unexpected diagnostics header in {target}")
            return [
                DiagnosticsRecord(**{k: float(v) for k, v in row.items()}) for row in reader
            ]

    def write_snapshot(self, name: str, state: SimState) -> Path:
        return self.write_model(name, snapshot_from_state(state))

    def read_snapshot(self, name: str) -> FieldSnapshot:
        """
        Raise:
        - ConfigurationError: 파일 없음, 형식 태그 불일치, 스키마 위반
        """
        target = self.path(name)
        try:
            return FieldSnapshot.model_validate_json(target.read_text(encoding="utf-8"))
        except FileNotFoundError as e:
            raise ConfigurationError(f"snapshot not found: {target}") from e
        except ValidationError as e:
            raise ConfigurationError(f"invalid snapshot {target}: {e}") from e

    def write_summary(self, summary: RunSummary) -> Path:
        target = self.write_model(SUMMARY_FILE, summary)
        logger.info("Run summary written: %s", target)
        return target

    def read_summary(self) -> RunSummary:
        return RunSummary.model_validate_json(self.path(SUMMARY_FILE).read_text(encoding="utf-8"))


def write_sweep_summary(root: Path, rows: Sequence[SweepRow]) -> Path:
    """sweep_summary.csv (run 당 한 줄, 라벨 순)"""
    target = Path(root) / SWEEP_SUMMARY_FILE
    try:
        with target.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(SWEEP_COLUMNS)
            for row in rows:
                cells = []
                for name in SWEEP_COLUMNS:
                    value = getattr(row, name)
                    if value is None:
                        cells.append("")
                    elif isinstance(value, float):
                        cells.append(format_float(value))
                    else:
                        cells.append(str(value))
                writer.writerow(cells)
    except OSError as e:
        raise OutputError(f"cannot write {target}: {e}") from e
    logger.info("Sweep summary written: %s (%d runs)", target, len(rows))
    return target
