# app/configs/run_config.py

"""
run 문서 로더
- YAML(flat key) 파싱 및 RunConfig 변환
- 모든 실패는 ConfigurationError (문제 키 이름 포함)
"""

import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import ConfigurationError
from app.schemas.run import RunConfig

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent / "defaults.yaml"


def _validation_error(e: ValidationError) -> ConfigurationError:
    """첫 번째 검증 오류를 키 이름이 드러나는 메시지로 변환."""
    first = e.errors()[0]
    key = ".".join(str(part) for part in first["loc"]) or None
    msg = first["msg"]
    if key is None and ":" in msg:
        # model_validator 메시지는 "<key>: ..." 형식
        head = msg.split(",", 1)[-1].strip()
        candidate = head.split(":", 1)[0].strip()
        if candidate.isidentifier():
            key = candidate
    message = f"{key}: {msg}" if key else msg
    return ConfigurationError(f"invalid run document, {message}", key=key)


def parse_config(text: str, overrides: dict[str, Any] | None = None) -> RunConfig:
    """
    run 문서 텍스트를 RunConfig로 변환

    Args:
    - text: YAML 문서 (flat key)
    - overrides: CLI 플래그 등 문서보다 우선하는 값 (None 값은 무시)

    Raise:
    - ConfigurationError: YAML 파싱 실패, 알 수 없는 키, 타입/제약 위반
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"run document YAML parse failed: {e}") from e

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigurationError("run document must be a flat key-value mapping")

    for key, value in data.items():
        if isinstance(value, dict):
            raise ConfigurationError(f"{key}: nested mappings are not allowed", key=str(key))

    merged = dict(data)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        merged[key] = value
        # profile 과 coefficients 는 상호 배타
        if key == "profile":
            merged.pop("coefficients", None)
        elif key == "coefficients":
            merged.pop("profile", None)

    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        raise _validation_error(e) from e


def load_run_config(
    path: Path | None = None, overrides: dict[str, Any] | None = None
) -> RunConfig:
    """
    run 문서 파일 로드 (path가 None이면 defaults.yaml)

    Raise:
    - ConfigurationError: 파일 없음 또는 검증 실패
    """
    path = path or DEFAULT_CONFIG_PATH
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise ConfigurationError(f"run document not found: {path}") from e
    except OSError as e:
        raise ConfigurationError(f"run document unreadable: {path} ({e})") from e

    cfg = parse_config(text, overrides)
    logger.info("Loaded run document %s", path)
    return cfg


def resolve_output_dir(cfg: RunConfig) -> Path:
    """
    출력 디렉토리 결정
    - IPM1D_OUTPUT_DIR 환경변수 > 문서의 output_dir > settings.DEFAULT_OUTPUT_DIR
    """
    if settings.IPM1D_OUTPUT_DIR is not None:
        return Path(settings.IPM1D_OUTPUT_DIR)
    if cfg.output_dir is not None:
        return Path(cfg.output_dir)
    return settings.DEFAULT_OUTPUT_DIR
