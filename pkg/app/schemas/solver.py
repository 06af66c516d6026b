# app/schemas/solver.py
"""
시간 적분 설정 스키마
- class StopReason(str, Enum)
- class SolverConfig(BaseModel)
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.core.config import RunDefaults


class StopReason(str, Enum):
    """run 종료 사유 (run당 정확히 하나)"""

    TIME_REACHED = "time_reached"
    SLOPE_THRESHOLD = "slope_threshold"
    RESOLUTION_LOST = "resolution_lost"
    NONFINITE_VALUE = "nonfinite_value"

    @property
    def is_blowup_proxy(self) -> bool:
        return self in (StopReason.SLOPE_THRESHOLD, StopReason.RESOLUTION_LOST)


class SolverConfig(BaseModel):
    """
    solver 입력
    - 모든 양수/범위 제약은 생성 시점에 검증
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    n: int = Field(RunDefaults.N, ge=8, description="grid size (even, >= 8)")
    a: float = Field(RunDefaults.A, gt=0, description="boundary-layer thickness")
    g: float = Field(RunDefaults.G, gt=0, description="gravitational constant")
    cfl: float = Field(RunDefaults.CFL, gt=0, le=1, description="Courant number in (0,1]")
    t_end: float = Field(RunDefaults.T_END, ge=0, description="final time")
    slope_stop: float = Field(RunDefaults.SLOPE_STOP, gt=0, description="max |d_x rho| threshold")
    tail_stop: float = Field(
        RunDefaults.TAIL_STOP, gt=0, lt=1, description="max spectral tail energy fraction"
    )
    sup_drift_stop: float = Field(
        RunDefaults.SUP_DRIFT_STOP, gt=0, lt=1, description="max relative drift of max |rho|"
    )
    origin_drift_stop: float = Field(
        RunDefaults.ORIGIN_DRIFT_STOP,
        gt=0,
        lt=1,
        description="max drift of rho(0) relative to max |rho0| (class data)",
    )
    output_every: float = Field(RunDefaults.OUTPUT_EVERY, gt=0, description="output interval")

    @field_validator("n")
    @classmethod
    def _even_grid(cls, v: int) -> int:
        if v % 2:
            raise ValueError("grid size must be even")
        return v
