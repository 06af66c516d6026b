# simulate 본체 (파일 출력, golden CSV, 결정성) 테스트

import numpy as np
import pytest

from app.configs.run_config import load_run_config, parse_config
from app.core.exceptions import EXIT_OK, OutputError
from app.data.store import (
    DIAGNOSTICS_FILE,
    FINAL_SNAPSHOT_FILE,
    INITIAL_SNAPSHOT_FILE,
    SUMMARY_FILE,
    RunStore,
)
from app.schemas.solver import StopReason
from app.services.grid_spectral import make_grid
from app.services.simulation import run_simulation


def test_golden_zero_run(tmp_path, golden_run_document, golden_csv):
    """영 초기 데이터 n = 64: 진단 CSV 가 고정 파일과 byte 단위로 같음"""
    cfg = load_run_config(golden_run_document)
    outcome = run_simulation(cfg, tmp_path / "golden")
    assert outcome.exit_code == EXIT_OK
    assert (tmp_path / "golden" / DIAGNOSTICS_FILE).read_text(encoding="utf-8") == golden_csv


def test_one_minus_cos_reference_run(tmp_path, reference_run_document):
    """
    ρ₀ = 1 - cos x, n = 64, t = 0.1 를 짧은 시간 전개와 비교

    - ρ ≈ ρ₀ + tβ sin²x + (t²/2)·A(cos x - cos 3x),  β = 1 - e^{-1}, A = β(γ/2 + β)/2, γ = 1 - e^{-2}
    - 평균 ≈ 1 + βt/2 - (t³/6)(Aβ - β²γ/2)
    - ‖ρ‖∞ = 2, ρ(0) = 0 은 정확히 유지
    """
    cfg = load_run_config(reference_run_document)
    outcome = run_simulation(cfg, tmp_path / "reference")
    assert outcome.exit_code == EXIT_OK
    assert outcome.summary.stop_reason is StopReason.TIME_REACHED

    store = RunStore(outcome.root)
    first, last = store.read_diagnostics()
    assert (first.t, last.t) == (0.0, 0.1)

    t = 0.1
    beta = -np.expm1(-1.0)
    gamma = -np.expm1(-2.0)
    amp = beta * (gamma / 2 + beta) / 2
    x = make_grid(64).points
    expected = (
        1.0 - np.cos(x) + t * beta * np.sin(x) ** 2 + 0.5 * t**2 * amp * (np.cos(x) - np.cos(3 * x))
    )
    snapshot = store.read_snapshot(FINAL_SNAPSHOT_FILE)
    assert snapshot.t == 0.1
    assert np.max(np.abs(np.array(snapshot.values) - expected)) < 1e-3

    assert first.linf == 2.0
    assert first.slope_max == pytest.approx(1.0, abs=1e-12)
    assert first.mean == pytest.approx(1.0, abs=1e-14)
    assert last.linf == pytest.approx(2.0, abs=1e-12)
    assert abs(np.array(snapshot.values)[32]) <= 1e-12
    mean = 1.0 + beta * t / 2 - t**3 / 6 * (amp * beta - beta**2 * gamma / 2)
    assert last.mean == pytest.approx(mean, abs=2e-5)
    assert last.bkm == pytest.approx(0.1, rel=2e-3)
    assert last.j_value > first.j_value > 0.0
    assert last.tail_fraction < 1e-20


def test_run_writes_all_artifacts(tmp_path):
    cfg = parse_config("profile: one-minus-cos\nn: 64\nt_end: 0.4\noutput_every: 0.05\n")
    outcome = run_simulation(cfg, tmp_path / "run")
    root = outcome.root
    for name in (DIAGNOSTICS_FILE, INITIAL_SNAPSHOT_FILE, FINAL_SNAPSHOT_FILE, SUMMARY_FILE):
        assert (root / name).is_file(), name
    for name in ("profiles.svg", "j_value.svg", "bkm.svg", "slope_max.svg"):
        assert (root / name).is_file(), name

    summary = RunStore(root).read_summary()
    assert summary.stop_reason is StopReason.TIME_REACHED
    assert summary.t_final == pytest.approx(0.4)
    assert summary.riccati is not None
    assert summary.j_rate_identity is not None
    assert summary.j_rate_identity == pytest.approx(summary.j_rate_difference, rel=0.05)
    assert summary.config == cfg
    assert len(outcome.records) == 9


def test_constant_run_keeps_snapshot(tmp_path):
    """상수 초기 데이터: 최종 스냅샷 = 초기 스냅샷, j_value 는 nan"""
    cfg = parse_config("profile: constant\nlevel: 1.0\nn: 64\nt_end: 1.0\noutput_every: 0.25\n")
    outcome = run_simulation(cfg, tmp_path / "const")
    store = RunStore(outcome.root)
    first = store.read_snapshot(INITIAL_SNAPSHOT_FILE)
    last = store.read_snapshot(FINAL_SNAPSHOT_FILE)
    assert outcome.exit_code == EXIT_OK
    assert last.t == 1.0
    assert np.max(np.abs(np.array(last.values) - np.array(first.values))) < 1e-12
    assert outcome.summary.riccati is None
    assert outcome.summary.riccati_error is not None


def test_identical_runs_give_identical_csv(tmp_path):
    text = "profile: one-minus-cos-squared\nn: 64\nt_end: 0.3\noutput_every: 0.1\n"
    cfg = parse_config(text)
    run_simulation(cfg, tmp_path / "first")
    run_simulation(cfg, tmp_path / "second")
    first = (tmp_path / "first" / DIAGNOSTICS_FILE).read_bytes()
    second = (tmp_path / "second" / DIAGNOSTICS_FILE).read_bytes()
    assert first == second


def test_unwritable_output_dir(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    cfg = parse_config("profile: constant\nn: 64\nt_end: 0.1\noutput_every: 0.1\n")
    with pytest.raises(OutputError):
        run_simulation(cfg, blocker)


def test_default_output_dir(isolated_output):
    cfg = parse_config("profile: constant\nlevel: 0.0\nn: 64\nt_end: 0.1\noutput_every: 0.1\n")
    outcome = run_simulation(cfg)
    assert outcome.root == isolated_output
    assert (isolated_output / DIAGNOSTICS_FILE).is_file()
