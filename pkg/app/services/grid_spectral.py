# app/services/grid_spectral.py

"""
주기 격자와 스펙트럴 연산
- PeriodicGrid: [-π, π) 위 균등 격자 + 정수 파수
- PeriodicField: 실수 샘플 + 복소 스펙트럼 (불변)
- 미분, 2/3 dealiasing, 격자 밖 삼각급수 평가, 반사

변환 정규화:
    f(x_j) = Σ_k ĉ_k e^{i k x_j},   x_j = -π + 2πj/n
    k ∈ {-n/2+1, …, n/2}, 스펙트럼 배열은 FFT 순서로 저장 (Nyquist는 +n/2)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import fft as sp_fft

from app.core.exceptions import NumericError, ParameterError

logger = logging.getLogger(__name__)

MIN_GRID_SIZE = 8
# 켤레 대칭 검증 상대 허용오차
SYMMETRY_RTOL = 1e-10
# 격자 밖 평가 시 한 번에 처리할 점 수
_EVAL_CHUNK = 2048


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PeriodicGrid:
    """
    [-π, π) 위의 균등 주기 격자

    - n: 짝수 샘플 수 (≥ 8)
    - points: x_j = -π + 2πj/n
    - wavenumbers: FFT 순서의 정수 파수, Nyquist 모드는 +n/2
    """

    n: int
    points: np.ndarray
    wavenumbers: np.ndarray

    @property
    def dx(self) -> float:
        return 2.0 * np.pi / self.n

    @property
    def nyquist(self) -> int:
        return self.n // 2

    @property
    def origin_index(self) -> int:
        """x = 0 격자점 인덱스."""
        return self.n // 2

    @property
    def dealias_cutoff(self) -> float:
        return self.n / 3.0

    @property
    def phase(self) -> np.ndarray:
        """x_0 = -π 기준 위상 인자 (-1)^k."""
        return _phase(self.n)

    def reflection_indices(self) -> np.ndarray:
        """x ↦ -x 에 대응하는 인덱스 j ↦ (n - j) mod n."""
        return (self.n - np.arange(self.n)) % self.n


@lru_cache(maxsize=32)
def _phase(n: int) -> np.ndarray:
    k = make_grid(n).wavenumbers
    return _frozen(np.where(k % 2 == 0, 1.0, -1.0))


@lru_cache(maxsize=32)
def make_grid(n: int) -> PeriodicGrid:
    """
    균등 주기 격자 생성

    Raise:
    - ParameterError: n이 홀수이거나 8 미만
    """
    if isinstance(n, bool) or int(n) != n:
        raise ParameterError(f"grid size must be an integer, got {n!r}")
    n = int(n)
    if n % 2:
        raise ParameterError("grid size must be even")
    if n < MIN_GRID_SIZE:
        raise ParameterError(f"grid size must be at least {MIN_GRID_SIZE}, got {n}")

    points = -np.pi + 2.0 * np.pi * np.arange(n) / n
    points[n // 2] = 0.0

    k = np.rint(sp_fft.fftfreq(n, d=1.0 / n)).astype(np.int64)
    k[n // 2] = n // 2

    return PeriodicGrid(n=n, points=_frozen(points), wavenumbers=_frozen(k))


@dataclass(frozen=True, eq=False)
class PeriodicField:
    """
    2π-주기 실함수의 격자 샘플과 스펙트럼

    - values: 물리 공간 실수 샘플 (n개)
    - spectrum: ĉ_k (FFT 순서), ĉ_{-k} = conj(ĉ_k)
    """

    grid: PeriodicGrid
    values: np.ndarray
    spectrum: np.ndarray

    @classmethod
    def from_values(cls, grid: PeriodicGrid, values: np.ndarray) -> PeriodicField:
        values = np.array(values, dtype=np.float64)
        if values.shape != (grid.n,):
            raise ParameterError(f"expected {grid.n} samples, got shape {values.shape}")
        spectrum = sp_fft.fft(values) / grid.n * grid.phase
        return cls(grid=grid, values=_frozen(values), spectrum=_frozen(spectrum))

    @classmethod
    def from_spectrum(cls, grid: PeriodicGrid, spectrum: np.ndarray) -> PeriodicField:
        spectrum = np.array(spectrum, dtype=np.complex128)
        if spectrum.shape != (grid.n,):
            raise ParameterError(f"expected {grid.n} coefficients, got shape {spectrum.shape}")
        _check_conjugate_symmetry(grid, spectrum)
        values = np.real(sp_fft.ifft(spectrum * grid.phase)) * grid.n
        return cls(grid=grid, values=_frozen(values), spectrum=_frozen(spectrum))

    @classmethod
    def from_function(cls, grid: PeriodicGrid, func) -> PeriodicField:
        """격자점에서 func를 샘플링."""
        return cls.from_values(grid, func(np.asarray(grid.points)))

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))

    def at_origin(self) -> float:
        return float(self.values[self.grid.origin_index])


def _check_conjugate_symmetry(grid: PeriodicGrid, spectrum: np.ndarray) -> None:
    mirrored = np.conj(spectrum[(-grid.wavenumbers) % grid.n])
    scale = float(np.max(np.abs(spectrum))) if spectrum.size else 0.0
    defect = float(np.max(np.abs(spectrum - mirrored))) if spectrum.size else 0.0
    if not np.isfinite(defect):
        raise NumericError("spectrum contains non-finite coefficients")
    if defect > SYMMETRY_RTOL * max(scale, 1e-300):
        raise ParameterError(f"spectrum is not conjugate symmetric (defect {defect:.3e})")


def apply_multiplier(f: PeriodicField, multiplier: np.ndarray) -> PeriodicField:
    """ĉ_k ↦ m(k)·ĉ_k (multiplier는 FFT 순서)."""
    return PeriodicField.from_spectrum(f.grid, f.spectrum * multiplier)


def spectral_derivative(f: PeriodicField, order: int = 1) -> PeriodicField:
    """
    스펙트럴 미분 ∂x^order

    - 계수 (ik)^order·ĉ_k
    - Nyquist 모드는 0
    """
    k = f.grid.wavenumbers
    multiplier = (1j * k.astype(np.float64)) ** order
    if order > 0:
        multiplier[f.grid.nyquist] = 0.0
    return apply_multiplier(f, multiplier)


def dealias_truncate(f: PeriodicField) -> PeriodicField:
    """2/3 규칙: |k| > n/3 모드 제거."""
    k = f.grid.wavenumbers
    mask = (3 * np.abs(k) <= f.grid.n).astype(np.float64)
    return apply_multiplier(f, mask)


def reflect(f: PeriodicField) -> PeriodicField:
    """x ↦ -x 반사."""
    return PeriodicField.from_values(f.grid, f.values[f.grid.reflection_indices()])


def parseval_l2(f: PeriodicField) -> float:
    """‖f‖₂ = sqrt(2π Σ|ĉ_k|²)."""
    return float(np.sqrt(2.0 * np.pi * np.sum(np.abs(f.spectrum) ** 2)))


def tail_fraction(f: PeriodicField) -> float:
    """
    해상도 손실 지표
    - 유지 대역(|k| ≤ n/3)의 상위 1/3 (2n/9 < |k| ≤ n/3) 에너지 비율
    - 전체 에너지가 0이면 0
    """
    k = np.abs(f.grid.wavenumbers)
    energy = np.abs(f.spectrum) ** 2
    total = float(np.sum(energy))
    if total == 0.0:
        return 0.0
    tail = (9 * k > 2 * f.grid.n) & (3 * k <= f.grid.n)
    return float(np.sum(energy[tail]) / total)


def evaluate_series(f: PeriodicField, x, derivative: int = 0):
    """
    격자 밖 점에서 삼각급수를 정확히 합산 (O(n) / 점)

    - derivative > 0 이면 (ik)^m ĉ_k 로 미분하고 Nyquist 모드 제외
    - Nyquist 모드 값은 Re(ĉ_{n/2})·cos(n x/2)

    Returns:
    - 스칼라 입력이면 float, 배열 입력이면 ndarray
    """
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))

    grid = f.grid
    half = grid.nyquist
    ks = np.arange(1, half, dtype=np.float64)
    coeffs = f.spectrum[1:half] * (1j * ks) ** derivative

    out = np.empty_like(xs)
    for start in range(0, xs.size, _EVAL_CHUNK):
        chunk = xs[start : start + _EVAL_CHUNK]
        waves = np.exp(1j * np.outer(chunk, ks))
        acc = 2.0 * np.real(waves @ coeffs)
        if derivative == 0:
            acc += np.real(f.spectrum[0])
            acc += np.real(f.spectrum[half]) * np.cos(half * chunk)
        out[start : start + chunk.size] = acc

    if scalar:
        return float(out[0])
    return out


def evaluate_derivative_series(f: PeriodicField, x):
    """∂x f 를 격자 밖에서 평가 (Nyquist 제외, spectral_derivative와 일치)."""
    return evaluate_series(f, x, derivative=1)


def evaluate_increment(f: PeriodicField, x):
    """
    f(x) - f(0) 를 상쇄 오차 없이 평가

        Σ_{k≥1} 2·[-2 Re(ĉ_k) sin²(kx/2) - Im(ĉ_k) sin(kx)] - 2 Re(ĉ_{n/2}) sin²(n x/4)

    - 원점 근처 x ≪ 1 에서도 상대 정확도 유지 (가중 경계 적분용)
    """
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))

    half = f.grid.nyquist
    ks = np.arange(1, half, dtype=np.float64)
    re = np.real(f.spectrum[1:half])
    im = np.imag(f.spectrum[1:half])
    nyq = np.real(f.spectrum[half])

    out = np.empty_like(xs)
    for start in range(0, xs.size, _EVAL_CHUNK):
        chunk = xs[start : start + _EVAL_CHUNK]
        phase = np.outer(chunk, ks)
        acc = -4.0 * (np.sin(0.5 * phase) ** 2 @ re) - 2.0 * (np.sin(phase) @ im)
        acc -= 2.0 * nyq * np.sin(0.25 * f.grid.n * chunk) ** 2
        out[start : start + chunk.size] = acc

    if scalar:
        return float(out[0])
    return out
