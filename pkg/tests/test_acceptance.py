# 장시간 blow-up run (n = 512 / 1024 / 2048) 검증, pytest -m slow 로 실행

import math

import numpy as np
import pytest

from app.schemas.params import ModelParams
from app.schemas.solver import SolverConfig, StopReason
from app.services.diagnostics import (
    class_tolerance,
    diagnostics_record,
    fit_riccati,
    symmetry_monotonicity_report,
)
from app.services.grid_spectral import make_grid
from app.services.profiles import ONE_MINUS_COS
from app.services.solver import run

pytestmark = pytest.mark.slow

OUTPUT_EVERY = 0.05


def _blowup(n: int):
    cfg = SolverConfig(n=n, a=1.0, g=1.0, output_every=OUTPUT_EVERY)
    return run(cfg, ONE_MINUS_COS.sample(make_grid(n)))


def _records(result):
    params = ModelParams()
    return [diagnostics_record(state, params) for state in result.trajectory]


def _riccati(records):
    series = [(r.t, r.j_value) for r in records if math.isfinite(r.j_value) and r.j_value > 0]
    return fit_riccati(series)


def _on_output_grid(t: float) -> bool:
    k = round(t / OUTPUT_EVERY)
    return abs(t - k * OUTPUT_EVERY) <= 1e-9


@pytest.fixture(scope="module")
def blowup_run():
    return _blowup(1024)


@pytest.fixture(scope="module")
def blowup_records(blowup_run):
    return _records(blowup_run)


def test_stops_on_blowup_proxy(blowup_run):
    assert blowup_run.reason.is_blowup_proxy
    assert blowup_run.reason is StopReason.RESOLUTION_LOST


def test_sup_norm_preserved(blowup_records):
    """궤적의 모든 상태에서 |‖ρ‖∞ - 2| ≤ 2e-4"""
    for record in blowup_records:
        assert abs(record.linf - 2.0) <= 2e-4, record.t


def test_origin_stays_pinned(blowup_run):
    """|ρ(0,t)| ≤ 1e-8·‖ρ₀‖∞"""
    for state in blowup_run.trajectory:
        assert abs(state.field.at_origin()) <= 2e-8, state.t


def test_class_preserved(blowup_run, blowup_records):
    for state, record in zip(blowup_run.trajectory, blowup_records):
        report = symmetry_monotonicity_report(state.field)
        tol = class_tolerance(record.slope_max)
        assert report.evenness_defect <= tol
        assert report.origin_value <= tol
        assert report.min_value >= -tol
        assert report.min_slope_right >= -tol * (1.0 + record.slope_max)


def test_mean_increases(blowup_records):
    means = [record.mean for record in blowup_records]
    assert all(b > a - 1e-10 for a, b in zip(means, means[1:]))


def test_slope_growth(blowup_records):
    """
    해상 구간 안에서의 기울기 증가

    - n = 1024 에서 원점/‖ρ‖∞ 조건이 유지되는 동안 도달 가능한 증가는 수 배 수준
    """
    assert blowup_records[-1].slope_max >= 3.0 * blowup_records[0].slope_max
    slopes = [record.slope_max for record in blowup_records[-6:]]
    assert all(b > a for a, b in zip(slopes, slopes[1:]))


def test_bkm_convex_near_termination(blowup_records):
    """같은 간격 출력에서 bkm 증가량이 끝으로 갈수록 커짐"""
    on_grid = [r for r in blowup_records if _on_output_grid(r.t)]
    bkm = np.array([record.bkm for record in on_grid[-6:]])
    increments = np.diff(bkm)
    assert np.all(increments > 0)
    assert np.all(np.diff(increments) > 0)


def test_riccati_fit_conclusive(blowup_records):
    fit = _riccati(blowup_records)
    assert fit.conclusive
    assert math.isfinite(fit.t_star_bound)


def test_riccati_constant_stable_under_refinement(blowup_records):
    """n = 2048 에서 c_hat 변화 < 20%"""
    fine = _riccati(_records(_blowup(2048)))
    coarse = _riccati(blowup_records)
    assert fine.conclusive
    assert abs(fine.c_hat - coarse.c_hat) <= 0.2 * abs(coarse.c_hat)


def test_grid_refinement_agreement(blowup_run):
    """공통 출력 시각에서 n = 512 와 n = 1024 (짝수 인덱스) 차이 ≤ 1e-6"""
    coarse = _blowup(512)
    fine_by_time = {round(s.t, 9): s for s in blowup_run.trajectory if _on_output_grid(s.t)}
    common = [s for s in coarse.trajectory if _on_output_grid(s.t) and round(s.t, 9) in fine_by_time]
    assert len(common) >= 10
    for state in common:
        fine = fine_by_time[round(state.t, 9)]
        gap = np.max(np.abs(state.field.values - fine.field.values[::2]))
        assert gap <= 1e-6, (state.t, gap)


def test_gravity_rescales_time():
    """g = 2 run 은 g = 1 run 의 시간 축 1/2 (정지 시각 비 2, 5% 이내)"""
    rho0 = ONE_MINUS_COS.sample(make_grid(256))
    slow = run(SolverConfig(n=256, g=1.0, slope_stop=5.0), rho0)
    fast = run(SolverConfig(n=256, g=2.0, slope_stop=5.0), rho0)
    assert slow.reason is fast.reason
    assert slow.final.t / fast.final.t == pytest.approx(2.0, rel=0.05)
