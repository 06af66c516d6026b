# app/services/profiles.py

"""
초기 데이터 / blow-up class 함수군
- ProfileFunction: 해석적 값 + 도함수 (임의 점 평가)
- 이름 있는 profile 샘플링, Fourier 계수 목록 → PeriodicField
- 무작위 band-limited 필드 (property 검사용, seed 고정)
"""

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from app.core.exceptions import ParameterError
from app.schemas.run import RunConfig
from app.services.grid_spectral import (
    PeriodicField,
    PeriodicGrid,
    evaluate_derivative_series,
    evaluate_series,
    make_grid,
)

logger = logging.getLogger(__name__)

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ProfileFunction:
    """
    2π 주기 함수 핸들
    - value / slope: 배열 입력을 받는 함수
    - scale: 곱해지는 상수 (scaled()로 생성)
    """

    name: str
    value: ArrayFn
    slope: ArrayFn
    scale: float = 1.0

    def __call__(self, x):
        return self.scale * self.value(x)

    def derivative(self, x):
        return self.scale * self.slope(x)

    def scaled(self, factor: float) -> "ProfileFunction":
        return ProfileFunction(
            name=self.name, value=self.value, slope=self.slope, scale=self.scale * factor
        )

    def sample(self, grid: PeriodicGrid) -> PeriodicField:
        return PeriodicField.from_values(grid, self(np.asarray(grid.points)))


def _one_minus_cos(x):
    return 2.0 * np.sin(0.5 * x) ** 2


def _one_minus_cos_slope(x):
    return np.sin(x)


def _one_minus_cos_squared(x):
    return 4.0 * np.sin(0.5 * x) ** 4


def _one_minus_cos_squared_slope(x):
    return 4.0 * np.sin(0.5 * x) ** 2 * np.sin(x)


def _sin_half_cubed(x):
    return np.abs(np.sin(0.5 * x)) ** 3


def _sin_half_cubed_slope(x):
    s = np.sin(0.5 * x)
    return 1.5 * s * np.abs(s) * np.cos(0.5 * x)


ONE_MINUS_COS = ProfileFunction("one-minus-cos", _one_minus_cos, _one_minus_cos_slope)
ONE_MINUS_COS_SQUARED = ProfileFunction(
    "one-minus-cos-squared", _one_minus_cos_squared, _one_minus_cos_squared_slope
)
SIN_HALF_CUBED = ProfileFunction("sin-half-cubed", _sin_half_cubed, _sin_half_cubed_slope)


def constant_profile(level: float = 1.0) -> ProfileFunction:
    return ProfileFunction(
        "constant",
        value=lambda x: np.full_like(np.asarray(x, dtype=np.float64), 1.0),
        slope=lambda x: np.zeros_like(np.asarray(x, dtype=np.float64)),
        scale=float(level),
    )


def blowup_family() -> list[ProfileFunction]:
    """표준 blow-up class 함수군 (짝, 비음수, f(0)=0, [0,π)에서 f' ≥ 0)."""
    return [ONE_MINUS_COS, ONE_MINUS_COS_SQUARED, SIN_HALF_CUBED]


def get_profile(name: str, level: float = 1.0) -> ProfileFunction:
    """
    이름으로 profile 조회

    Raise:
    - ParameterError: 알 수 없는 이름
    """
    if name == "constant":
        return constant_profile(level)
    for profile in blowup_family():
        if profile.name == name:
            return profile
    raise ParameterError(f"unknown profile {name!r}")


def field_profile(f: PeriodicField, name: str = "field") -> ProfileFunction:
    """PeriodicField 를 삼각급수 합산으로 임의 점에서 평가하는 핸들로 변환."""
    return ProfileFunction(
        name=name,
        value=lambda x: evaluate_series(f, x),
        slope=lambda x: evaluate_derivative_series(f, x),
    )


def from_coefficients(grid: PeriodicGrid, entries) -> PeriodicField:
    """
    [k, re, im] 목록 → PeriodicField
    - 한쪽 부호만 주어진 모드는 켤레로 채움
    """
    spectrum = np.zeros(grid.n, dtype=np.complex128)
    half = grid.nyquist
    for k, re, im in entries:
        k = int(k)
        if not -half < k <= half:
            raise ParameterError(f"wavenumber {k} outside (-{half}, {half}]")
        c = complex(re, im)
        spectrum[k % grid.n] = c
        if k not in (0, half):
            spectrum[(-k) % grid.n] = c.conjugate()
    return PeriodicField.from_spectrum(grid, spectrum)


def random_band_limited(
    grid: PeriodicGrid, rng: np.random.Generator, max_mode: int = 8
) -> PeriodicField:
    """1 ≤ |k| ≤ max_mode 모드만 가진 무작위 실수 필드 (평균 포함)."""
    spectrum = np.zeros(grid.n, dtype=np.complex128)
    spectrum[0] = rng.normal()
    for k in range(1, max_mode + 1):
        c = complex(rng.normal(), rng.normal()) / k
        spectrum[k] = c
        spectrum[-k] = c.conjugate()
    return PeriodicField.from_spectrum(grid, spectrum)


def initial_field(cfg: RunConfig) -> PeriodicField:
    """run 문서의 초기 데이터 선택자 → ρ₀"""
    grid = make_grid(cfg.n)
    if cfg.coefficients is not None:
        logger.info("Initial data from %d explicit coefficients", len(cfg.coefficients))
        return from_coefficients(grid, cfg.coefficients)
    profile = get_profile(cfg.profile, cfg.level)
    logger.info("Initial data profile=%s n=%d", profile.name, cfg.n)
    return profile.sample(grid)
