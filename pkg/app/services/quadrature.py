# app/services/quadrature.py

"""
구적법 공통 유틸
- graded Gauss-Legendre: ∫₀^{π/2} φ(x) dx, x = (π/2)·s^p
- 가중 경계 적분 ∫₀^{π/2} h(x) / x^{1+σ} dx
- scipy quad 래퍼 (정책 허용오차 적용)
"""

import logging
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate

from app.core.config import QuadraturePolicy
from app.core.exceptions import NumericError

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * np.pi


@lru_cache(maxsize=16)
def graded_nodes(
    count: int = QuadraturePolicy.GAUSS_NODES,
    power: int = QuadraturePolicy.GRADING_POWER,
    upper: float = HALF_PI,
) -> tuple[np.ndarray, np.ndarray]:
    """
    (0, upper] 위 graded Gauss-Legendre 노드/가중치

    - s ∈ [0,1] 위 Gauss-Legendre, x = upper·s^power
    - 원점 근처로 노드가 몰려 O(x²) 피적분함수의 x^{-(1+σ)} 가중치를 흡수

    Returns:
    - (x, w): Σ w·φ(x) ≈ ∫₀^upper φ(x) dx
    """
    t, wt = np.polynomial.legendre.leggauss(count)
    s = 0.5 * (t + 1.0)
    ws = 0.5 * wt
    x = upper * s**power
    w = upper * power * s ** (power - 1) * ws
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def weighted_boundary_integral(
    h: Callable[[np.ndarray], np.ndarray],
    exponent: float,
    count: int = QuadraturePolicy.GAUSS_NODES,
    upper: float = HALF_PI,
) -> float:
    """
    ∫₀^upper h(x) / x^{exponent} dx  (기본 upper = π/2)

    Args:
    - h: 배열 입력을 받는 피적분함수 분자
    - exponent: 1 + σ (또는 σ)

    Raise:
    - NumericError: 피적분함수가 non-finite
    """
    x, w = graded_nodes(count, upper=upper)
    values = np.asarray(h(x), dtype=np.float64) / x**exponent
    if not np.all(np.isfinite(values)):
        raise NumericError("non-finite integrand in weighted boundary integral")
    return float(np.dot(w, values))


def adaptive_integral(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    points: list[float] | None = None,
    tol: float = QuadraturePolicy.ADAPTIVE_TOL,
) -> float:
    """scipy quad (QAGS / QAGP), 정책 허용오차."""
    if hi <= lo:
        return 0.0
    inner = [p for p in (points or []) if lo < p < hi]
    value, abserr = integrate.quad(
        func,
        lo,
        hi,
        epsabs=tol,
        epsrel=tol,
        limit=QuadraturePolicy.ADAPTIVE_LIMIT,
        points=inner or None,
    )
    if not np.isfinite(value):
        raise NumericError(f"adaptive quadrature diverged on [{lo!r}, {hi!r}]")
    logger.debug("quad [%.3e, %.3e] value=%.12e err=%.2e", lo, hi, value, abserr)
    return float(value)
