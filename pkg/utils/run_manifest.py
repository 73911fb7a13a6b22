"""
결과 파일 / Run Manifest 관리
=====================================
출력 파일을 메모리에 모았다가 계산 성공 후 한 번에 기록
(검증 실패 시 부분 출력 없음)

- CSV: 고정 헤더, float 는 repr (결정적 출력)
- JSON: sort_keys, 들여쓰기 2
- manifest.json: 설정, 도구 버전, 시각, 각 출력 파일 sha256

사용법:
    writer = OutputWriter(out_dir, command="eigen", config={...})
    writer.add_json("eigen.json", payload)
    writer.add_csv("eigenfunction.csv", ["y", "phi"], rows)
    paths = writer.commit()
"""

import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, Iterable, List, Sequence

from dataclasses_json import dataclass_json

from config.constants import SystemConfig
from utils.logger import get_logger


logger = get_logger(__name__)


def format_cell(value: Any) -> str:
    """CSV 셀 포맷 (float 는 repr 로 고정)"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "item"):
        # numpy scalar
        return format_cell(value.item())
    if value is None:
        return ""
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV 문자열 생성 (쉼표 구분, 줄바꿈 \\n)"""
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"CSV 열 수 불일치: {len(row)} != {len(header)}")
        lines.append(",".join(format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _to_plain(value: Any) -> Any:
    """numpy 값/Enum 을 JSON 기본 타입으로 변환"""
    if isinstance(value, dict):
        return {str(k): _to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_plain(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float) and not math.isfinite(value):
        # JSON 표준에 NaN / Infinity 없음
        return None
    if hasattr(value, "tolist"):
        return value.tolist()
    return value


def render_json(payload: Any) -> str:
    """결정적 JSON 문자열"""
    return json.dumps(_to_plain(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass_json
@dataclass
class RunManifest:
    """실행 기록"""

    command: str
    config: Dict[str, Any]
    tool: str = SystemConfig.TOOL_NAME
    tool_version: str = SystemConfig.TOOL_VERSION
    created_at: str = ""
    outputs: Dict[str, str] = field(default_factory=dict)  # 파일명 -> sha256


class OutputWriter:
    """
    출력 파일 버퍼

    commit() 전에는 디스크에 아무것도 쓰지 않음
    """

    def __init__(self, out_dir: str, command: str, config: Dict[str, Any]):
        self.out_dir = out_dir
        self.manifest = RunManifest(command=command, config=_to_plain(config))
        self._files: Dict[str, str] = {}

    # ============================================================
    # 출력 등록
    # ============================================================

    def add_text(self, name: str, text: str) -> None:
        if name == SystemConfig.MANIFEST_NAME:
            raise ValueError(f"예약된 파일명: {name}")
        self._files[name] = text

    def add_json(self, name: str, payload: Any) -> None:
        self.add_text(name, render_json(payload))

    def add_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
        self.add_text(name, render_csv(header, rows))

    @property
    def names(self) -> List[str]:
        return sorted(self._files)

    def text(self, name: str) -> str:
        return self._files[name]

    # ============================================================
    # 기록
    # ============================================================

    def commit(self) -> List[str]:
        """
        모든 출력 + manifest.json 기록

        Returns:
            기록된 파일 경로 목록
        """

        os.makedirs(self.out_dir, exist_ok=True)
        written = []

        for name in self.names:
            text = self._files[name]
            self.manifest.outputs[name] = sha256_text(text)
            written.append(self._write_atomic(name, text))

        self.manifest.created_at = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        written.append(
            self._write_atomic(SystemConfig.MANIFEST_NAME, render_json(self.manifest.to_dict()))
        )

        logger.info(f"출력 {len(written)}개 기록 완료 - {self.out_dir}")
        return written

    def _write_atomic(self, name: str, text: str) -> str:
        path = os.path.join(self.out_dir, name)
        tmp_path = path + ".tmp"
        with open(tmp_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_path, path)
        return path
