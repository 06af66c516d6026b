# 파라미터 sweep 테스트

import pytest

from app.configs.run_config import parse_config
from app.core.exceptions import ConfigurationError, ParameterError
from app.data.store import SWEEP_SUMMARY_FILE
from app.services.sweep import expand_grid, run_sweep

BASE = "profile: one-minus-cos\nn: 32\nt_end: 0.2\noutput_every: 0.1\n"


def test_expand_grid_product():
    base = parse_config(BASE)
    points = expand_grid(base, {"a": [0.5, 1.0], "g": [1.0, 2.0, 3.0]})
    assert len(points) == 6
    assert points[0][0] == "run000_a0.5_g1"
    assert {(cfg.a, cfg.g) for _, cfg in points} == {
        (a, g) for a in (0.5, 1.0) for g in (1.0, 2.0, 3.0)
    }
    assert all(cfg.n == 32 for _, cfg in points)


def test_expand_grid_errors():
    base = parse_config(BASE)
    with pytest.raises(ParameterError):
        expand_grid(base, {})
    with pytest.raises(ParameterError):
        expand_grid(base, {"a": []})
    with pytest.raises(ParameterError):
        expand_grid(base, {"cfl": [0.1]})
    with pytest.raises(ConfigurationError):
        expand_grid(base, {"n": [33]})


def test_run_sweep_writes_summary(tmp_path):
    base = parse_config(BASE)
    rows = run_sweep(base, {"a": [0.5, 1.0]}, out_root=tmp_path / "sweep", max_workers=2)
    assert [row.label for row in rows] == ["run000_a0.5", "run001_a1"]
    assert all(row.exit_code == 0 for row in rows)
    assert all(row.stop_reason == "time_reached" for row in rows)
    assert all(row.stop_time == pytest.approx(0.2) for row in rows)

    lines = (tmp_path / "sweep" / SWEEP_SUMMARY_FILE).read_text().splitlines()
    assert len(lines) == 3
    assert (tmp_path / "sweep" / "run000_a0.5" / "diagnostics.csv").is_file()
    assert (tmp_path / "sweep" / "run001_a1" / "summary.json").is_file()
