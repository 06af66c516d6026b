# app/core/exceptions.py
"""
공통 예외 정의
- 종료 코드(exit status)를 가진 애플리케이션 예외 계층
- CLI 전역 예외 핸들러

종료 코드 규약:
- 0: 성공 (blow-up proxy 정지 포함)
- 1: 검증 오류 (설정, 파라미터, 전제조건)
- 2: 수치 실패 (non-finite 값)
"""

import logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERIC = 2


class AppError(Exception):
    """
    애플리케이션 공통 베이스 예외
    - 모든 도메인/서비스 예외의 부모
    - exit code와 error code를 가짐
    """

    exit_code: int = EXIT_VALIDATION
    error_code: str = "INTERNAL_ERROR"

    def __init__(self, message: str = "unexpected error") -> None:
        super().__init__(message)
        self.message = message


# ============================================================
# 입력 검증 예외 (exit 1)
# ============================================================


class ConfigurationError(AppError):
    """
    설정 오류
    - run 문서 YAML이 없거나 깨짐
    - 알 수 없는 키, 타입 불일치, 제약 위반
    """

    error_code = "CONFIGURATION_ERROR"

    def __init__(self, message: str, key: str | None = None) -> None:
        super().__init__(message)
        self.key = key


class ParameterError(AppError):
    """수치 파라미터 오류 (a ≤ 0, q ∉ (1,2), 홀수 n 등)"""

    error_code = "PARAMETER_ERROR"


class DomainError(AppError):
    """커널 정의역 오류 (y = 0 극점, y = x 로그 특이점)"""

    error_code = "DOMAIN_ERROR"


class PreconditionError(AppError):
    """blow-up class 전제조건 위반"""

    error_code = "PRECONDITION_ERROR"


class FitError(AppError):
    """Riccati fit 입력 부족"""

    error_code = "FIT_ERROR"


class OutputError(AppError):
    """출력 디렉토리/파일 쓰기 실패"""

    error_code = "OUTPUT_ERROR"


# ============================================================
# 수치 실패 (exit 2)
# ============================================================


class NumericError(AppError):
    """non-finite 값 발생"""

    exit_code = EXIT_NUMERIC
    error_code = "NUMERIC_ERROR"


# ============================================================
# 전역 예외 핸들러
# ============================================================


def handle_app_error(exc: AppError) -> int:
    """
    AppError 및 하위 예외를 로깅하고 종료 코드로 변환

    Returns:
    - exc.exit_code
    """
    logger.error("[%s] %s", exc.error_code, exc.message)
    return exc.exit_code
