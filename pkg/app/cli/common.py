# app/cli/common.py

"""
CLI 공통 도구
- handles_app_errors: AppError → 종료 코드 변환 데코레이터
- run_overrides: click 옵션 → run 문서 override dict
- echo_table: 탭 구분 표 출력
"""

import functools
import logging
from typing import Any, Callable, Iterable

import click

from app.core.exceptions import AppError, handle_app_error

logger = logging.getLogger(__name__)


def handles_app_errors(func: Callable[..., int | None]) -> Callable[..., None]:
    """
    명령 본체의 반환값(int)을 종료 코드로 사용
    - AppError 는 stderr 메시지 + 해당 exit_code
    """

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        ctx = click.get_current_context()
        try:
            code = func(*args, **kwargs)
        except AppError as e:
            click.echo(f"error [{e.error_code}]: {e.message}", err=True)
            ctx.exit(handle_app_error(e))
            return
        ctx.exit(code or 0)

    return wrapper


def run_overrides(**options: Any) -> dict[str, Any]:
    """None 이 아닌 플래그만 남김 (문서 값 우선순위 아래)"""
    return {key: value for key, value in options.items() if value is not None}


def echo_table(header: Iterable[str], rows: Iterable[Iterable[Any]]) -> None:
    click.echo("\t".join(header))
    for row in rows:
        click.echo("\t".join(str(cell) for cell in row))
