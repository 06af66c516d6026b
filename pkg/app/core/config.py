# app/core/config.py
"""
환경변수 및 수치 정책 관리
- class Settings(BaseSettings)
- class QuadraturePolicy
- class RunDefaults
"""

from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

# 기본 경로 상수
_BASE_DIR = Path(__file__).resolve().parent.parent.parent
_DEFAULT_LOG_DIR = _BASE_DIR / "logs"
_DEFAULT_OUTPUT_DIR = _BASE_DIR / "runs"


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    ENV: str = "dev"

    LOG_LEVEL: str = "INFO"
    LOG_DIR: Path = _DEFAULT_LOG_DIR

    # 설정 시 모든 run 문서의 output_dir을 덮어씀
    IPM1D_OUTPUT_DIR: Path | None = None
    DEFAULT_OUTPUT_DIR: Path = _DEFAULT_OUTPUT_DIR

    # sweep 동시 실행 수 (None이면 CPU 수)
    SWEEP_MAX_WORKERS: int | None = None


settings = Settings()


class QuadraturePolicy:
    """
    구적법 정책

    - TRUNCATION_FACTOR: 실수축 절단 Y = max(50, 50a)
    - ADAPTIVE_TOL: 적응 구적 허용오차
    - GAUSS_NODES: graded Gauss-Legendre 노드 수
    - SINGULAR_EPS: log 특이점 분할 폭
    """

    TRUNCATION_FACTOR: float = 50.0
    ADAPTIVE_TOL: float = 1e-10
    ADAPTIVE_LIMIT: int = 400
    GAUSS_NODES: int = 128
    GRADING_POWER: int = 4
    SINGULAR_EPS: float = 1e-6


class RunDefaults:
    """
    run 문서 기본값

    - 물리 상수: a, g
    - 해상도/적분: n, cfl, t_end, output_every
    - 정지 조건: slope_stop, tail_stop, sup_drift_stop, origin_drift_stop (‖ρ₀‖∞ 대비 상대값)
    - 진단: s, delta, q, sigma
    """

    A: float = 1.0
    G: float = 1.0
    N: int = 1024
    CFL: float = 0.4
    T_END: float = 20.0
    OUTPUT_EVERY: float = 0.05
    SLOPE_STOP: float = 1e3
    TAIL_STOP: float = 1e-6
    SUP_DRIFT_STOP: float = 1e-4
    ORIGIN_DRIFT_STOP: float = 1e-8
    S: int = 3
    DELTA: float = 0.5
    Q: float = 1.5
    SIGMA: float = 1.5
