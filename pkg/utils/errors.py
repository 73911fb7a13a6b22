"""
예외 계층
=====================================
- ValidationError: 입력/설정 오류 (CLI 종료 코드 1)
- LabRuntimeError 계열: 계산 실패 (CLI 종료 코드 2)
"""

from typing import Optional, Tuple


class LabError(Exception):
    """lab 전용 예외 기본 클래스"""


class ValidationError(LabError, ValueError):
    """사전조건 위반, 잘못된 설정"""


class LabRuntimeError(LabError, RuntimeError):
    """유효한 입력에서 발생한 계산 실패"""


class BoundaryContaminationError(LabRuntimeError):
    """시뮬레이션 오른쪽 경계에 해가 도달 (영역 부족)"""

    def __init__(self, t: float, boundary_value: float, guard: float):
        self.t = t
        self.boundary_value = boundary_value
        super().__init__(
            f"t={t:.4g} 에서 오른쪽 경계 u={boundary_value:.3e} (기준 {guard:.1e}) - x_max 를 늘리세요"
        )


class ConvergenceError(LabRuntimeError):
    """R-ladder 수렴 실패"""

    def __init__(self, message: str, last_values: Optional[Tuple[float, float]] = None):
        self.last_values = last_values
        if last_values is not None:
            message = f"{message} (마지막 두 값: {last_values[0]!r}, {last_values[1]!r})"
        super().__init__(message)


class EigenComputationError(LabRuntimeError):
    """단조성이 보장된 bisection 의 구간 실패 등 내부 오류"""
