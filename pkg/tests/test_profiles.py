# 초기 데이터 / 함수군 테스트

import numpy as np
import pytest

from app.configs.run_config import parse_config
from app.core.exceptions import ParameterError
from app.services.grid_spectral import PeriodicField
from app.services.profiles import (
    ONE_MINUS_COS,
    SIN_HALF_CUBED,
    field_profile,
    from_coefficients,
    get_profile,
    initial_field,
    random_band_limited,
)


def test_profile_derivatives_match_finite_differences(family):
    xs = np.linspace(-3.0, 3.0, 13)
    h = 1e-6
    for f in family:
        fd = (f(xs + h) - f(xs - h)) / (2 * h)
        assert np.max(np.abs(fd - f.derivative(xs))) < 1e-8, f.name


def test_scaled_profile():
    g = ONE_MINUS_COS.scaled(3.0)
    assert g(np.pi) == pytest.approx(6.0)
    assert g.derivative(np.pi / 2) == pytest.approx(3.0)
    assert g.name == ONE_MINUS_COS.name


def test_get_profile():
    assert get_profile("sin-half-cubed") is SIN_HALF_CUBED
    assert float(get_profile("constant", 2.5)(0.3)) == pytest.approx(2.5)
    with pytest.raises(ParameterError):
        get_profile("gaussian")


def test_field_profile_evaluates_off_grid(grid64):
    f = PeriodicField.from_function(grid64, np.cos)
    handle = field_profile(f)
    assert handle(0.4) == pytest.approx(np.cos(0.4), abs=1e-13)
    assert handle.derivative(0.4) == pytest.approx(-np.sin(0.4), abs=1e-13)


def test_from_coefficients_mirrors_one_sided_entries(grid64):
    """[1, 0.5, 0] 만 주면 ĉ_{-1} 도 채워져 cos x"""
    f = from_coefficients(grid64, [(1, 0.5, 0.0)])
    assert np.max(np.abs(f.values - np.cos(np.asarray(grid64.points)))) < 1e-14
    with pytest.raises(ParameterError):
        from_coefficients(grid64, [(40, 1.0, 0.0)])


def test_random_band_limited_is_seeded(grid64):
    a = random_band_limited(grid64, np.random.default_rng(7))
    b = random_band_limited(grid64, np.random.default_rng(7))
    assert np.array_equal(a.values, b.values)
    k = np.abs(grid64.wavenumbers)
    assert np.max(np.abs(a.spectrum[k > 8])) == 0.0


def test_initial_field_from_document():
    cfg = parse_config("profile: constant\nlevel: 0.0\nn: 64\n")
    assert np.all(initial_field(cfg).values == 0.0)

    cfg = parse_config("n: 16\ncoefficients: [[2, 0.0, -0.5]]\n")
    f = initial_field(cfg)
    assert np.max(np.abs(f.values - np.sin(2 * np.asarray(f.grid.points)))) < 1e-14
