# app/services/operators.py

"""
비국소 속도 연산자
- H_a (Fourier multiplier), Hilbert 변환 H, Poisson smoothing P_a
- H_a 주기 적분 오라클 (스펙트럴 구현 교차 검증용)

multiplier (Nyquist 모드는 항상 0):
    H_a : -i·sgn(k)·(1 - e^{-a|k|})
    H   : -i·sgn(k)
    P_a : e^{-a|k|}
"""

import logging
from functools import lru_cache
from typing import Callable, Literal

import numpy as np
from scipy import integrate

from app.core.config import QuadraturePolicy
from app.core.exceptions import DomainError, NumericError, ParameterError
from app.schemas.reports import IdentityResiduals
from app.services.grid_spectral import (
    PeriodicField,
    apply_multiplier,
    evaluate_series,
    make_grid,
    parseval_l2,
)

logger = logging.getLogger(__name__)

QuadratureMethod = Literal["folded", "truncated"]


def _require_positive_a(a: float) -> float:
    a = float(a)
    if not np.isfinite(a) or a <= 0:
        raise ParameterError(f"a must be positive, got {a!r}")
    return a


# ============================================================
# Fourier multipliers
# ============================================================


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


@lru_cache(maxsize=64)
def hilbert_multiplier(n: int) -> np.ndarray:
    grid = make_grid(n)
    m = -1j * np.sign(grid.wavenumbers).astype(np.complex128)
    m[grid.nyquist] = 0.0
    return _frozen(m)


@lru_cache(maxsize=64)
def poisson_multiplier(n: int, a: float) -> np.ndarray:
    grid = make_grid(n)
    m = np.exp(-a * np.abs(grid.wavenumbers)).astype(np.complex128)
    m[grid.nyquist] = 0.0
    return _frozen(m)


@lru_cache(maxsize=64)
def ha_multiplier(n: int, a: float) -> np.ndarray:
    grid = make_grid(n)
    k = grid.wavenumbers
    # -expm1: 작은 a에서 1 - e^{-a|k|} 상쇄 오차 방지
    m = -1j * np.sign(k) * (-np.expm1(-a * np.abs(k)))
    m[grid.nyquist] = 0.0
    return _frozen(m.astype(np.complex128))


def apply_ha_spectral(f: PeriodicField, a: float) -> PeriodicField:
    """
    H_a f (스펙트럴)

    Raise:
    - ParameterError: a ≤ 0
    """
    a = _require_positive_a(a)
    return apply_multiplier(f, ha_multiplier(f.grid.n, a))


def apply_hilbert(f: PeriodicField) -> PeriodicField:
    """H f, 평균 모드와 Nyquist 모드 제거."""
    return apply_multiplier(f, hilbert_multiplier(f.grid.n))


def apply_poisson(f: PeriodicField, a: float) -> PeriodicField:
    """
    P_a f

    Raise:
    - ParameterError: a ≤ 0
    """
    a = _require_positive_a(a)
    return apply_multiplier(f, poisson_multiplier(f.grid.n, a))


def velocity(rho: PeriodicField, a: float, g: float) -> PeriodicField:
    """u = g·H_a ρ"""
    a = _require_positive_a(a)
    if not np.isfinite(g) or g <= 0:
        raise ParameterError(f"g must be positive, got {g!r}")
    return apply_multiplier(rho, g * ha_multiplier(rho.grid.n, a))


def operator_identity_check(f: PeriodicField, a: float) -> IdentityResiduals:
    """
    H_a = H∘(I - P_a) 인수분해 잔차와 두 개의 L2 노름

    Returns:
    - IdentityResiduals(factorization, smoothing_l2, ha_l2)
    """
    ha_f = apply_ha_spectral(f, a)
    smoothed = apply_poisson(f, a)
    factored = apply_hilbert(PeriodicField.from_values(f.grid, f.values - smoothed.values))
    h_f = apply_hilbert(f)

    difference = PeriodicField.from_spectrum(f.grid, h_f.spectrum - ha_f.spectrum)
    return IdentityResiduals(
        factorization=float(np.max(np.abs(ha_f.values - factored.values))),
        smoothing_l2=parseval_l2(difference),
        ha_l2=parseval_l2(ha_f),
    )


# ============================================================
# 적분 오라클
# ============================================================


def kernel_ka(y, a: float):
    """
    실수축 커널 K_a(y) = a² / (π y (y² + a²)), y ≠ 0

    Raise:
    - ParameterError: a ≤ 0
    - DomainError: y = 0 (극점)
    """
    a = _require_positive_a(a)
    y_arr = np.asarray(y, dtype=np.float64)
    if np.any(y_arr == 0.0):
        raise DomainError("K_a has a pole at y = 0")
    value = a * a / (np.pi * y_arr * (y_arr * y_arr + a * a))
    return float(value) if value.ndim == 0 else value


def folded_kernel(y, a: float):
    """
    K_a 의 2π 주기화 (격자합의 닫힌 형태)

        K̃_a(y) = (1/2π)·[cot(y/2) - sin y / (cosh a - cos y)]
               = sin y · h / (2π c (c + h)),  c = 2 sin²(y/2), h = 2 sinh²(a/2)

    - y → 0 에서 1/(π y), a → ∞ 에서 cot(y/2)/(2π)
    """
    c = 2.0 * np.sin(0.5 * y) ** 2
    # h 오버플로 (a ≳ 1400) 시 c/h → 0
    with np.errstate(over="ignore"):
        h = 2.0 * np.sinh(0.5 * a) ** 2
    return np.sin(y) / (2.0 * np.pi * c * (1.0 + c / h))


def truncation_cutoff(a: float) -> float:
    """실수축 절단 Y = max(50, 50a)."""
    factor = QuadraturePolicy.TRUNCATION_FACTOR
    return max(factor, factor * a)


def truncation_tail_bound(f_sup: float, a: float, cutoff: float) -> float:
    """|∫_{y>Y} (f(x-y) - f(x+y)) K_a(y) dy| ≤ ‖f‖∞·a²/(π Y²)."""
    return f_sup * a * a / (np.pi * cutoff * cutoff)


def _as_callable(f) -> Callable:
    if isinstance(f, PeriodicField):
        if not f.is_finite():
            raise NumericError("field contains non-finite samples")
        return lambda y: evaluate_series(f, y)
    return f


def _breakpoints(a: float, upper: float) -> list[float]:
    # 작은 a: 커널이 폭 a 안에서 1/(πy) → a²/(πy³) 로 전이
    return [p for p in (a, 10.0 * a) if 0.0 < p < upper]


def apply_ha_quadrature(
    f,
    a: float,
    x,
    method: QuadratureMethod = "folded",
    tol: float = QuadraturePolicy.ADAPTIVE_TOL,
):
    """
    H_a f(x) 를 적분으로 직접 계산 (대칭화된 형태, y = 0 에서 피적분함수가 매끄러움)

        folded   : ∫₀^π    (f(x-y) - f(x+y))·K̃_a(y) dy
        truncated: ∫₀^Y    (f(x-y) - f(x+y))·K_a(y) dy,  Y = max(50, 50a)

    Args:
    - f: 임의 점에서 평가 가능한 2π 주기 함수 또는 PeriodicField (삼각급수 합산)
    - x: 스칼라 또는 1차원 배열 (배열이면 quad_vec로 동시 적분)

    Raise:
    - ParameterError: a ≤ 0 또는 알 수 없는 method
    - NumericError: f 샘플이 non-finite
    """
    a = _require_positive_a(a)
    func = _as_callable(f)

    if method == "folded":
        upper = np.pi
        kernel = folded_kernel
    elif method == "truncated":
        upper = truncation_cutoff(a)
        kernel = kernel_ka
    else:
        raise ParameterError(f"unknown quadrature method {method!r}")

    points = _breakpoints(a, upper)

    if np.ndim(x) == 0:
        x0 = float(x)

        def integrand(y: float) -> float:
            if y == 0.0:
                return 0.0
            diff = func(x0 - y) - func(x0 + y)
            value = float(diff * kernel(y, a))
            if not np.isfinite(value):
                raise NumericError(f"non-finite integrand at x={x0!r}, y={y!r}")
            return value

        limit = QuadraturePolicy.ADAPTIVE_LIMIT
        if method == "truncated":
            limit = max(limit, int(10 * upper))
        value, abserr = integrate.quad(
            integrand,
            0.0,
            upper,
            epsabs=tol,
            epsrel=tol,
            limit=limit,
            points=points or None,
        )
        logger.debug("H_a quadrature x=%.6f a=%g value=%.12e err=%.2e", x0, a, value, abserr)
        return float(value)

    xs = np.asarray(x, dtype=np.float64)

    def vector_integrand(y: float) -> np.ndarray:
        if y == 0.0:
            return np.zeros_like(xs)
        values = (func(xs - y) - func(xs + y)) * kernel(y, a)
        if not np.all(np.isfinite(values)):
            raise NumericError(f"non-finite integrand at y={y!r}")
        return values

    values, abserr = integrate.quad_vec(
        vector_integrand,
        0.0,
        upper,
        epsabs=tol,
        epsrel=tol,
        norm="max",
        limit=max(QuadraturePolicy.ADAPTIVE_LIMIT, int(10 * upper)),
        points=points or None,
    )
    logger.debug("H_a quadrature on %d points a=%g err=%.2e", xs.size, a, abserr)
    return np.asarray(values, dtype=np.float64)
