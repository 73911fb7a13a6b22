"""
로깅 유틸리티
=====================================
프로젝트 전역 로깅 설정

stdout 은 CLI 결과(JSON) 전용이므로 로그는 stderr 로 출력
"""

import logging
import sys
from typing import Optional

from config.constants import SystemConfig

# 로거 저장소
_loggers = {}

# 새로 만드는 로거에 적용할 기본값 (configure_logging 으로 변경)
_defaults = {"level": logging.INFO, "log_file": None}


def _formatter() -> logging.Formatter:
    return logging.Formatter(SystemConfig.LOG_FORMAT, datefmt=SystemConfig.LOG_DATEFMT)


def setup_logger(
    name: str = "kpp_patch_lab",
    level: Optional[int] = None,
    log_file: Optional[str] = None,
) -> logging.Logger:
    """
    로거 설정 및 반환

    Args:
        name: 로거 이름
        level: 로그 레벨 (None 이면 전역 기본값)
        log_file: 파일 출력 경로 (선택)

    Returns:
        설정된 Logger 인스턴스
    """

    if name in _loggers:
        return _loggers[name]

    logger = logging.getLogger(name)
    logger.setLevel(level if level is not None else _defaults["level"])
    logger.propagate = False

    # 콘솔 핸들러
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(_formatter())
    logger.addHandler(console_handler)

    # 파일 핸들러 (선택)
    log_file = log_file or _defaults["log_file"]
    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(_formatter())
        logger.addHandler(file_handler)

    _loggers[name] = logger
    return logger


def get_logger(name: str = "kpp_patch_lab") -> logging.Logger:
    """기존 로거 반환 또는 새로 생성"""

    if name in _loggers:
        return _loggers[name]

    return setup_logger(name)


def configure_logging(level: int, log_file: Optional[str] = None) -> None:
    """
    전역 로그 레벨/파일 변경

    이미 생성된 로거에도 적용 (모듈 import 시점에 만들어진 로거 포함)
    """

    _defaults["level"] = level
    _defaults["log_file"] = log_file

    for logger in _loggers.values():
        logger.setLevel(level)
        has_file = any(isinstance(h, logging.FileHandler) for h in logger.handlers)
        if log_file and not has_file:
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setFormatter(_formatter())
            logger.addHandler(file_handler)
