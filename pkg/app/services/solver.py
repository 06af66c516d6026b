# app/services/solver.py

"""
∂t ρ = -g·(H_a ρ)·∂x ρ 시간 적분 (torus, pseudo-spectral)

- 2/3 dealiasing: u, ∂xρ, 곱 모두
- CFL 적응 dt, 출력 시각에 정확히 맞춤
- 고전 RK4, BKM 적분 ∫‖∂xρ‖∞ 는 step마다 사다리꼴
- 정지: time_reached / slope_threshold / resolution_lost / nonfinite_value
- 해상도 판정: 꼬리 에너지, class 데이터는 ‖ρ‖∞ 보존 / 원점 고정 / class 유지까지
  판정에 실패한 step 은 버리고 마지막 해상 상태에서 종료
"""

import logging
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from app.core.exceptions import NumericError, ParameterError
from app.schemas.solver import SolverConfig, StopReason
from app.services.grid_spectral import (
    PeriodicField,
    dealias_truncate,
    spectral_derivative,
    tail_fraction,
)
from app.services.operators import velocity

logger = logging.getLogger(__name__)

VELOCITY_FLOOR = 1e-12
# class 판정 상대 허용오차
CLASS_RTOL = 1e-6
# 출력 시각 맞춤 허용오차 (상대)
_SNAP_RTOL = 1e-12


def max_slope(f: PeriodicField) -> float:
    """격자 위 ‖∂x f‖∞ (참값의 하한)."""
    return float(np.max(np.abs(spectral_derivative(f).values)))


@dataclass(frozen=True)
class SimState:
    """
    궤적의 한 시점
    - field: ρ(·, t)
    - bkm: ∫₀^t ‖∂xρ‖∞ ds (누적)
    - slope: 현재 ‖∂xρ‖∞ (사다리꼴용)
    """

    field: PeriodicField
    t: float = 0.0
    bkm: float = 0.0
    slope: float = float("nan")

    @classmethod
    def initial(cls, rho0: PeriodicField, t: float = 0.0) -> "SimState":
        if not rho0.is_finite():
            raise NumericError("initial data contains non-finite samples")
        return cls(field=rho0, t=t, bkm=0.0, slope=max_slope(rho0))


@dataclass
class RunResult:
    """run 결과: 출력 시각 궤적 + 종료 사유"""

    trajectory: list[SimState]
    reason: StopReason
    steps: int = 0

    @property
    def final(self) -> SimState:
        return self.trajectory[-1]


def _tendency(rho: PeriodicField, cfg: SolverConfig) -> np.ndarray:
    u = dealias_truncate(velocity(rho, cfg.a, cfg.g))
    rho_x = dealias_truncate(spectral_derivative(rho))
    product = PeriodicField.from_values(rho.grid, -(u.values * rho_x.values))
    tendency = dealias_truncate(product).values
    if not np.all(np.isfinite(tendency)):
        raise NumericError(f"non-finite tendency (n={rho.grid.n})")
    return tendency


def rhs(state: SimState, cfg: SolverConfig) -> PeriodicField:
    """
    -g·(H_a ρ)·∂xρ (dealiased)

    Raise:
    - NumericError: non-finite 중간값
    """
    return PeriodicField.from_values(state.field.grid, _tendency(state.field, cfg))


def cfl_dt(state: SimState, cfg: SolverConfig) -> float:
    """
    dt = cfl·Δx / max(‖u‖∞, 1e-12), output_every 로 상한
    """
    u = velocity(state.field, cfg.a, cfg.g)
    speed = max(float(np.max(np.abs(u.values))), VELOCITY_FLOOR)
    return min(cfg.cfl * state.field.grid.dx / speed, cfg.output_every)


def step_rk4(state: SimState, dt: float, cfg: SolverConfig) -> SimState:
    """
    고전 4단 RK4 한 step

    Raise:
    - ParameterError: dt ≤ 0
    - NumericError: non-finite 값
    """
    if not dt > 0:
        raise ParameterError(f"dt must be positive, got {dt!r}")

    grid = state.field.grid
    rho = state.field.values

    def stage(values: np.ndarray) -> np.ndarray:
        return _tendency(PeriodicField.from_values(grid, values), cfg)

    k1 = _tendency(state.field, cfg)
    k2 = stage(rho + 0.5 * dt * k1)
    k3 = stage(rho + 0.5 * dt * k2)
    k4 = stage(rho + dt * k3)
    new_values = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(new_values)):
        raise NumericError(f"non-finite state after step at t={state.t + dt!r}")

    new_field = PeriodicField.from_values(grid, new_values)
    old_slope = state.slope if np.isfinite(state.slope) else max_slope(state.field)
    new_slope = max_slope(new_field)
    return SimState(
        field=new_field,
        t=state.t + dt,
        bkm=state.bkm + 0.5 * dt * (old_slope + new_slope),
        slope=new_slope,
    )


def check_blowup_class(f: PeriodicField, tol: float) -> bool:
    """
    blow-up class 판정 (격자 기준)
    - min f ≥ -tol
    - |f(0)| ≤ tol
    - max_j |f(x_j) - f(-x_j)| ≤ tol
    - [0,π) 격자점에서 min ∂xf ≥ -tol·(1 + ‖∂xf‖∞)
    """
    values = f.values
    if not np.all(np.isfinite(values)):
        return False
    grid = f.grid
    slope = spectral_derivative(f).values
    right = slope[grid.origin_index :]
    evenness = float(np.max(np.abs(values - values[grid.reflection_indices()])))
    return bool(
        float(np.min(values)) >= -tol
        and abs(f.at_origin()) <= tol
        and evenness <= tol
        and float(np.min(right)) >= -tol * (1.0 + float(np.max(np.abs(slope))))
    )


def class_tolerance(slope: float) -> float:
    """궤적 중 class 판정 허용오차 1e-6·max(1, ‖∂xρ‖∞)."""
    return CLASS_RTOL * max(1.0, slope)


@dataclass(frozen=True)
class ResolutionMonitor:
    """
    격자 해상도 판정 (초기 데이터로 기준 고정)

    해상 상태의 조건:
    - 꼬리 에너지 비율 < tail_stop
    - class 데이터 (최댓값이 x = π 격자점에 고정):
        |‖ρ‖∞ - ‖ρ₀‖∞| ≤ sup_drift_stop·‖ρ₀‖∞
        |ρ(0,t) - ρ₀(0)| ≤ origin_drift_stop·‖ρ₀‖∞
        check_blowup_class(class_tolerance) 유지
    """

    sup0: float
    origin0: float
    in_class: bool

    @classmethod
    def from_initial(cls, state: SimState) -> "ResolutionMonitor":
        field = state.field
        return cls(
            sup0=float(np.max(np.abs(field.values))),
            origin0=field.at_origin(),
            in_class=check_blowup_class(field, class_tolerance(state.slope)),
        )

    def violation(self, state: SimState, cfg: SolverConfig) -> str | None:
        """해상 상태면 None, 아니면 위반 내용."""
        field = state.field
        tail = tail_fraction(field)
        if tail >= cfg.tail_stop:
            return f"tail fraction {tail:.3e}"
        if not self.in_class:
            return None
        drift = abs(float(np.max(np.abs(field.values))) - self.sup0)
        if drift > cfg.sup_drift_stop * self.sup0:
            return f"sup-norm drift {drift:.3e}"
        origin = abs(field.at_origin() - self.origin0)
        if origin > cfg.origin_drift_stop * self.sup0:
            return f"origin drift {origin:.3e}"
        if not check_blowup_class(field, class_tolerance(state.slope)):
            return "blow-up class lost"
        return None


def _stop_reason(
    state: SimState, cfg: SolverConfig, monitor: ResolutionMonitor
) -> tuple[StopReason | None, str | None]:
    lost = monitor.violation(state, cfg)
    if lost is not None:
        return StopReason.RESOLUTION_LOST, lost
    if state.slope >= cfg.slope_stop:
        return StopReason.SLOPE_THRESHOLD, None
    return None, None


def run(
    cfg: SolverConfig,
    rho0: PeriodicField,
    on_output: Callable[[SimState], None] | None = None,
) -> RunResult:
    """
    t_end 또는 정지 조건까지 적분

    - 궤적: 초기 상태, 각 출력 시각 k·output_every, 종료 상태
    - 해상도 판정에 실패한 step 은 궤적에 넣지 않음 (종료 상태 = 마지막 해상 상태)
    - non-finite 발생 시 마지막 유한 상태에서 nonfinite_value 로 종료
    - 입력이 같으면 궤적이 bit 단위로 같음

    Raise:
    - NumericError: rho0 가 non-finite
    - ParameterError: rho0 격자와 cfg.n 불일치
    """
    if rho0.grid.n != cfg.n:
        raise ParameterError(f"initial data has n={rho0.grid.n}, config expects n={cfg.n}")

    state = SimState.initial(rho0)
    monitor = ResolutionMonitor.from_initial(state)
    trajectory = [state]

    def emit(s: SimState) -> None:
        if trajectory[-1] is s:
            return
        trajectory.append(s)
        if on_output is not None:
            on_output(s)

    if on_output is not None:
        on_output(state)
    logger.info(
        "Run start n=%d a=%g g=%g t_end=%g slope0=%.6e class=%s",
        cfg.n,
        cfg.a,
        cfg.g,
        cfg.t_end,
        state.slope,
        monitor.in_class,
    )

    reason, detail = _stop_reason(state, cfg, monitor)
    steps = 0
    output_index = 0

    while reason is None:
        if state.t >= cfg.t_end:
            reason = StopReason.TIME_REACHED
            break

        target = min((output_index + 1) * cfg.output_every, cfg.t_end)
        dt = cfl_dt(state, cfg)
        capped = state.t + dt >= target * (1.0 - _SNAP_RTOL)
        if capped:
            dt = target - state.t

        try:
            candidate = step_rk4(state, dt, cfg)
        except NumericError as e:
            logger.warning("Stopping on non-finite value at t=%.6e: %s", state.t, e.message)
            reason = StopReason.NONFINITE_VALUE
            emit(state)
            break
        steps += 1
        if capped:
            candidate = replace(candidate, t=target)

        reason, detail = _stop_reason(candidate, cfg, monitor)
        if reason is StopReason.RESOLUTION_LOST:
            logger.info(
                "Resolution lost at t=%.6f (%s), keeping t=%.6f", candidate.t, detail, state.t
            )
            emit(state)
            break

        state = candidate
        if capped:
            output_index += 1
            emit(state)
            logger.debug("t=%.6f slope=%.6e bkm=%.6e", state.t, state.slope, state.bkm)
        elif reason is not None:
            emit(state)

    logger.info(
        "Run stop reason=%s t=%.6f bkm=%.6e steps=%d", reason.value, state.t, state.bkm, steps
    )
    return RunResult(trajectory=trajectory, reason=reason, steps=steps)
