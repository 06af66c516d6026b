# pytest 공통 fixture: 격자, 함수군, CLI runner, 고정 데이터

import logging
from pathlib import Path

import pytest
from click.testing import CliRunner

from app.core.config import settings
from app.services.grid_spectral import make_grid
from app.services.profiles import blowup_family

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
)

logger = logging.getLogger("pytest")

FIXTURES_DIR = Path(__file__).parent / "fixtures"

# 현재 실행 중인 테스트 파일 추적
_current_test_file: str | None = None


def pytest_runtest_setup(item: pytest.Item) -> None:
    """각 테스트 파일 및 함수 시작 시 로깅"""
    global _current_test_file
    test_file = str(item.fspath)

    # 파일 단위 로깅
    if test_file != _current_test_file:
        _current_test_file = test_file
        relative_path = Path(test_file).relative_to(Path(__file__).parent.parent)
        logger.info("=" * 60)
        logger.info("테스트 파일 시작: %s", relative_path)
        logger.info("=" * 60)

    # 함수 단위 로깅
    logger.info("  ▶ 테스트 함수 시작: %s", item.name)


def pytest_runtest_logreport(report: pytest.TestReport) -> None:
    """각 테스트 함수 완료 시 결과 로깅"""
    if report.when == "call":
        status_icon = {
            "passed": "✓",
            "failed": "✗",
            "skipped": "⊘",
        }.get(report.outcome, "?")
        logger.info(
            "  %s 테스트 함수 완료: %s [%s]",
            status_icon,
            report.nodeid.split("::")[-1],
            report.outcome,
        )


@pytest.fixture(autouse=True)
def isolated_output(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """환경변수 출력 경로를 무시하고 기본 출력 경로를 tmp 로 고정"""
    default_dir = tmp_path / "runs"
    monkeypatch.setattr(settings, "IPM1D_OUTPUT_DIR", None)
    monkeypatch.setattr(settings, "DEFAULT_OUTPUT_DIR", default_dir)
    return default_dir


@pytest.fixture(scope="session")
def grid64():
    return make_grid(64)


@pytest.fixture(scope="session")
def grid256():
    return make_grid(256)


@pytest.fixture(scope="session")
def family():
    return blowup_family()


@pytest.fixture
def cli_runner() -> CliRunner:
    return CliRunner()


@pytest.fixture(scope="session")
def golden_csv() -> str:
    return (FIXTURES_DIR / "golden_n64.csv").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def golden_run_document() -> Path:
    return FIXTURES_DIR / "run_n64.yaml"


@pytest.fixture(scope="session")
def reference_run_document() -> Path:
    return FIXTURES_DIR / "run_one_minus_cos_n64.yaml"
