# app/services/diagnostics.py

"""
출력 시각별 스칼라 진단
- 노름 (L∞, L2, Ḣˢ, 평균), 최대 기울기와 위치
- J(t) = ∫₀^{π/2} ρ / x^{1+δ} dx 와 적분 항등식 기반 J'
- Riccati 비교 fit (J' ≥ c·J²)
- 짝함수성/단조성 결함 리포트

모든 진단은 스냅샷(SimState)만으로 계산
"""

import logging
from typing import NamedTuple, Sequence

import numpy as np

from app.core.config import QuadraturePolicy
from app.core.exceptions import FitError, ParameterError, PreconditionError
from app.schemas.diagnostics import DiagnosticsRecord, RiccatiFit, SymmetryReport
from app.schemas.params import ModelParams
from app.services.grid_spectral import (
    PeriodicField,
    evaluate_increment,
    evaluate_series,
    parseval_l2,
    spectral_derivative,
    tail_fraction,
)
from app.services.operators import apply_ha_spectral, ha_multiplier
from app.services.quadrature import HALF_PI, weighted_boundary_integral
from app.services.solver import SimState, check_blowup_class, class_tolerance

logger = logging.getLogger(__name__)

MIN_FIT_SAMPLES = 8
# J 계산 시 class 판정 기본 허용오차
J_CLASS_TOL = 1e-8


class Norms(NamedTuple):
    linf: float
    l2: float
    hs: float
    mean: float


def compute_norms(f: PeriodicField, s: int) -> Norms:
    """
    (‖f‖∞, ‖f‖₂, ‖f‖_{Ḣˢ}, 평균)
    - L2: Parseval, Ḣˢ: sqrt(2π Σ |k|^{2s} |ĉ_k|²)

    Raise:
    - ParameterError: s 가 음수이거나 정수가 아님
    """
    if int(s) != s or s < 0:
        raise ParameterError(f"s must be a nonnegative integer, got {s!r}")
    k = np.abs(f.grid.wavenumbers).astype(np.float64)
    energy = np.abs(f.spectrum) ** 2
    hs = float(np.sqrt(2.0 * np.pi * np.sum(k ** (2 * int(s)) * energy)))
    return Norms(
        linf=float(np.max(np.abs(f.values))),
        l2=parseval_l2(f),
        hs=hs,
        mean=float(np.mean(f.values)),
    )


def slope_max(f: PeriodicField) -> tuple[float, float]:
    """격자 위 ‖∂x f‖∞ 와 그 위치 x (동률이면 첫 인덱스)."""
    slope = np.abs(spectral_derivative(f).values)
    index = int(np.argmax(slope))
    return float(slope[index]), float(f.grid.points[index])


def compute_j(
    f: PeriodicField,
    delta: float,
    tol: float = J_CLASS_TOL,
    upper: float = HALF_PI,
    count: int = QuadraturePolicy.GAUSS_NODES,
) -> float:
    """
    J = ∫₀^{upper} ρ(x) / x^{1+δ} dx  (기본 upper = π/2)

    - graded Gauss-Legendre, 격자 밖 값은 삼각급수 합산
    - 분자는 ρ(x) - ρ(0) 로 평가 (class 데이터는 ρ(0) = 0, 원점 근처 상쇄 오차 제거)
    - count: Gauss-Legendre 노드 수

    Raise:
    - ParameterError: δ ∉ (0, 1)
    - PreconditionError: f 가 blow-up class 밖
    """
    if not 0.0 < delta < 1.0:
        raise ParameterError(f"delta must lie in (0, 1), got {delta!r}")
    if not check_blowup_class(f, tol):
        raise PreconditionError("J is only defined for blow-up class data")
    return weighted_boundary_integral(
        lambda x: evaluate_increment(f, x), 1.0 + delta, count=count, upper=upper
    )


def compute_j_rate(f: PeriodicField, a: float, g: float, delta: float) -> float:
    """
    J' = -g·∫₀^{π/2} H_aρ·∂xρ / x^{1+δ} dx  (적분 항등식)
    """
    if not 0.0 < delta < 1.0:
        raise ParameterError(f"delta must lie in (0, 1), got {delta!r}")
    ha_rho = apply_ha_spectral(f, a)
    rho_x = spectral_derivative(f)

    def integrand(x: np.ndarray) -> np.ndarray:
        return -g * evaluate_series(ha_rho, x) * evaluate_series(rho_x, x)

    return weighted_boundary_integral(integrand, 1.0 + delta)


def mean_growth_rate(f: PeriodicField, a: float, g: float) -> float:
    """
    semi-discrete 평균 변화율 g·Σ |k|(1 - e^{-a|k|})|ĉ_k|²  (|k| ≤ n/3 대역, ≥ 0)
    """
    grid = f.grid
    k = np.abs(grid.wavenumbers)
    band = 3 * k <= grid.n
    weight = k * np.abs(ha_multiplier(grid.n, float(a)))
    return float(g * np.sum((weight * np.abs(f.spectrum) ** 2)[band]))


def symmetry_monotonicity_report(f: PeriodicField) -> SymmetryReport:
    grid = f.grid
    values = f.values
    slope = spectral_derivative(f).values
    return SymmetryReport(
        evenness_defect=float(np.max(np.abs(values - values[grid.reflection_indices()]))),
        min_value=float(np.min(values)),
        origin_value=abs(f.at_origin()),
        min_slope_right=float(np.min(slope[grid.origin_index :])),
    )


def diagnostics_record(state: SimState, params: ModelParams) -> DiagnosticsRecord:
    """
    SimState → DiagnosticsRecord
    - j_value: class 밖이면 nan
    """
    f = state.field
    norms = compute_norms(f, params.s)
    slope, where = slope_max(f)
    try:
        j_value = compute_j(f, params.delta, tol=class_tolerance(slope))
    except PreconditionError:
        j_value = float("nan")
    return DiagnosticsRecord(
        t=state.t,
        linf=norms.linf,
        l2=norms.l2,
        hs=norms.hs,
        mean=norms.mean,
        slope_max=slope,
        slope_argmax=where,
        bkm=state.bkm,
        j_value=j_value,
        tail_fraction=tail_fraction(f),
    )


def _series_arrays(series: Sequence[tuple[float, float]]) -> tuple[np.ndarray, np.ndarray]:
    if len(series) < MIN_FIT_SAMPLES:
        raise FitError(f"Riccati fit needs at least {MIN_FIT_SAMPLES} samples, got {len(series)}")
    data = np.asarray(series, dtype=np.float64)
    t, j = data[:, 0], data[:, 1]
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(j))):
        raise FitError("Riccati fit needs finite samples")
    if np.any(j <= 0):
        raise FitError("Riccati fit needs strictly positive J")
    if np.any(np.diff(t) <= 0):
        raise FitError("Riccati fit needs strictly increasing times")
    return t, j


def fit_riccati(series: Sequence[tuple[float, float]]) -> RiccatiFit:
    """
    J' ≥ c·J² 비교

    - c_hat = 내부 샘플에서 min (중심차분 J') / J²
    - t_star_bound = t₀ + 1/(c_hat·J₀)  (c_hat > 0 일 때)
    - residual = max(0, max_i (J_R(t_i) - J_i)/J_i),  J_R = J₀ / (1 - c_hat·J₀·(t - t₀))

    Raise:
    - FitError: 샘플 8개 미만, J ≤ 0, non-finite
    """
    t, j = _series_arrays(series)
    slopes = (j[2:] - j[:-2]) / (t[2:] - t[:-2])
    ratios = slopes / j[1:-1] ** 2
    c_hat = float(np.min(ratios))

    t0, j0 = float(t[0]), float(j[0])
    denom = 1.0 - c_hat * j0 * (t - t0)
    alive = denom > 0
    comparison = j0 / denom[alive]
    excess = (comparison - j[alive]) / j[alive]
    residual = max(0.0, float(np.max(excess))) if excess.size else 0.0

    conclusive = c_hat > 0
    t_star = t0 + 1.0 / (c_hat * j0) if conclusive else None
    if not conclusive:
        logger.info("Riccati fit inconclusive: c_hat=%.6e", c_hat)
    return RiccatiFit(
        c_hat=c_hat,
        t_star_bound=t_star,
        residual=residual,
        conclusive=conclusive,
        samples=len(t),
    )
