# app/schemas/run.py
"""
run 문서 스키마
- class RunConfig(BaseModel)
- class FieldSnapshot(BaseModel)
- class RunSummary(BaseModel)
- class SweepRow(BaseModel)
"""

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import RunDefaults
from app.schemas.diagnostics import RiccatiFit
from app.schemas.params import ModelParams
from app.schemas.solver import SolverConfig, StopReason

ProfileName = Literal["one-minus-cos", "one-minus-cos-squared", "sin-half-cubed", "constant"]

SNAPSHOT_FORMAT = "ipm1d-snapshot/1"


class RunConfig(BaseModel):
    """
    simulate / sweep 입력 문서 (flat key)
    - SolverConfig 필드 + 초기 데이터 선택 + 진단 옵션 + 출력 경로
    - 초기 데이터: profile 또는 coefficients 중 정확히 하나
    - coefficients: [k, re, im] 목록, 켤레 대칭이어야 함
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    # solver
    n: int = Field(RunDefaults.N, ge=8, description="grid size (even, >= 8)")
    a: float = Field(RunDefaults.A, gt=0, description="boundary-layer thickness")
    g: float = Field(RunDefaults.G, gt=0, description="gravitational constant")
    cfl: float = Field(RunDefaults.CFL, gt=0, le=1, description="Courant number in (0,1]")
    t_end: float = Field(RunDefaults.T_END, ge=0, description="final time")
    slope_stop: float = Field(RunDefaults.SLOPE_STOP, gt=0)
    tail_stop: float = Field(RunDefaults.TAIL_STOP, gt=0, lt=1)
    sup_drift_stop: float = Field(RunDefaults.SUP_DRIFT_STOP, gt=0, lt=1)
    origin_drift_stop: float = Field(RunDefaults.ORIGIN_DRIFT_STOP, gt=0, lt=1)
    output_every: float = Field(RunDefaults.OUTPUT_EVERY, gt=0)

    # 초기 데이터
    profile: ProfileName | None = Field(None, description="named initial profile")
    level: float = Field(1.0, description="value of the constant profile")
    coefficients: list[tuple[int, float, float]] | None = Field(
        None, description="explicit Fourier coefficients [k, re, im]"
    )

    # 진단
    s: int = Field(RunDefaults.S, ge=2)
    delta: float = Field(RunDefaults.DELTA, gt=0, lt=1)
    q: float = Field(RunDefaults.Q, gt=1, lt=2)
    sigma: float = Field(RunDefaults.SIGMA, gt=0)

    output_dir: Path | None = Field(None, description="run output directory")
    seed: int = Field(0, ge=0, description="seed for randomized property data only")

    @model_validator(mode="after")
    def _validate_document(self) -> "RunConfig":
        if self.n % 2:
            raise ValueError("n: grid size must be even")
        if (self.profile is None) == (self.coefficients is None):
            raise ValueError("exactly one of 'profile' or 'coefficients' must be given")
        if self.coefficients is not None:
            _validate_coefficients(self.coefficients, self.n)
        return self

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            n=self.n,
            a=self.a,
            g=self.g,
            cfl=self.cfl,
            t_end=self.t_end,
            slope_stop=self.slope_stop,
            tail_stop=self.tail_stop,
            sup_drift_stop=self.sup_drift_stop,
            origin_drift_stop=self.origin_drift_stop,
            output_every=self.output_every,
        )

    def model_params(self) -> ModelParams:
        return ModelParams(
            a=self.a, g=self.g, sigma=self.sigma, delta=self.delta, q=self.q, s=self.s
        )


def _validate_coefficients(entries: list[tuple[int, float, float]], n: int) -> None:
    """
    coefficients 검증
    - -n/2 < k ≤ n/2, k 중복 금지
    - k = 0, n/2 는 실수
    - k와 -k가 모두 주어지면 서로 켤레
    """
    half = n // 2
    seen: dict[int, complex] = {}
    for k, re, im in entries:
        if not -half < k <= half:
            raise ValueError(f"coefficients: wavenumber {k} outside (-{half}, {half}]")
        if k in seen:
            raise ValueError(f"coefficients: wavenumber {k} given twice")
        seen[k] = complex(re, im)

    for k, c in seen.items():
        if k in (0, half) and c.imag != 0.0:
            raise ValueError(f"coefficients: mode {k} must be real for a real field")
        if k > 0 and -k in seen and seen[-k] != c.conjugate():
            raise ValueError(f"coefficients: spectrum not conjugate symmetric at k = {k}")


class FieldSnapshot(BaseModel):
    """
    필드 스냅샷 (구조화 텍스트, 버전 태그 포함)
    - values: 격자 샘플
    - spectrum_re / spectrum_im: FFT 순서 계수
    """

    format: Literal["ipm1d-snapshot/1"] = SNAPSHOT_FORMAT
    n: int = Field(..., ge=8)
    t: float = Field(..., ge=0)
    bkm: float = Field(..., ge=0)
    values: list[float]
    spectrum_re: list[float]
    spectrum_im: list[float]

    @model_validator(mode="after")
    def _check_lengths(self) -> "FieldSnapshot":
        for name in ("values", "spectrum_re", "spectrum_im"):
            if len(getattr(self, name)) != self.n:
                raise ValueError(f"{name}: expected {self.n} entries")
        return self


class RunSummary(BaseModel):
    """run 요약 문서"""

    stop_reason: StopReason
    t_final: float
    steps: int
    bkm: float
    slope_max_initial: float
    slope_max_final: float
    slope_growth: float | None = Field(None, description="slope_max final / initial")
    riccati: RiccatiFit | None = None
    riccati_error: str | None = None
    j_rate_identity: float | None = Field(None, description="J' from the integral identity")
    j_rate_difference: float | None = Field(None, description="J' from finite differences")
    exit_code: int = 0
    config: RunConfig


class SweepRow(BaseModel):
    """sweep_summary.csv 한 줄"""

    label: str
    a: float
    g: float
    n: int
    stop_reason: str
    stop_time: float | None = None
    bkm: float | None = None
    c_hat: float | None = None
    exit_code: int
    error: str = ""
