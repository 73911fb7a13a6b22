"""
실행 환경 설정
=====================================
환경 변수(.env)에서 실행 설정을 로드

사용 가능한 변수 (.env.example 참고):
- LAB_JOBS: 병렬 작업 수 (기본 1)
- LAB_OUT_DIR: 출력 디렉토리 (기본 out)
- LAB_LOG_LEVEL: 로그 레벨 (기본 INFO)
- LAB_LOG_FILE: 로그 파일 경로 (선택)

CLI 인자가 주어지면 항상 환경 설정보다 우선
"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Optional

from dotenv import load_dotenv

from config.constants import SystemConfig

# .env 파일 로드
load_dotenv()


@dataclass(frozen=True)
class LabSettings:
    """실행 설정"""

    jobs: int = 1
    out_dir: str = SystemConfig.DEFAULT_OUT_DIR
    log_level: str = SystemConfig.LOG_LEVEL
    log_file: Optional[str] = None

    @classmethod
    def from_env(cls) -> "LabSettings":
        """환경 변수에서 설정 로드"""

        raw_jobs = os.getenv("LAB_JOBS", "1")
        try:
            jobs = int(raw_jobs)
        except ValueError:
            raise ValueError(f"LAB_JOBS 는 정수여야 합니다: {raw_jobs!r}")

        settings = cls(
            jobs=jobs,
            out_dir=os.getenv("LAB_OUT_DIR") or SystemConfig.DEFAULT_OUT_DIR,
            log_level=(os.getenv("LAB_LOG_LEVEL") or SystemConfig.LOG_LEVEL).upper(),
            log_file=os.getenv("LAB_LOG_FILE") or None,
        )
        settings.validate()
        return settings

    def validate(self) -> bool:
        """설정 유효성 검증"""

        if self.jobs < 1:
            raise ValueError(f"jobs 는 1 이상이어야 합니다: {self.jobs}")

        if not isinstance(logging.getLevelName(self.log_level), int):
            raise ValueError(f"알 수 없는 로그 레벨: {self.log_level}")

        return True

    def with_overrides(self, **overrides) -> "LabSettings":
        """CLI 인자로 덮어쓴 설정 반환 (None 값은 무시)"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        updated = replace(self, **changes)
        updated.validate()
        return updated

    @property
    def level(self) -> int:
        """logging 모듈 레벨 값"""
        return logging.getLevelName(self.log_level)


# 싱글톤 인스턴스
_settings: Optional[LabSettings] = None


def get_settings() -> LabSettings:
    """전역 설정 반환 (싱글톤)"""
    global _settings
    if _settings is None:
        _settings = LabSettings.from_env()
    return _settings
