# Utils Module
# 공통 유틸리티 (로깅, 예외, 출력 파일)

from .logger import setup_logger, get_logger, configure_logging
from .errors import (
    LabError,
    ValidationError,
    LabRuntimeError,
    BoundaryContaminationError,
    ConvergenceError,
    EigenComputationError,
)
from .run_manifest import OutputWriter, RunManifest, render_csv, render_json

__all__ = [
    "setup_logger",
    "get_logger",
    "configure_logging",
    "LabError",
    "ValidationError",
    "LabRuntimeError",
    "BoundaryContaminationError",
    "ConvergenceError",
    "EigenComputationError",
    "OutputWriter",
    "RunManifest",
    "render_csv",
    "render_json",
]
