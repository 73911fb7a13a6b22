"""
절단 영역 Dirichlet 고유값 λ₁ᴿ (수치 경로)
=====================================
(-R, R) 에서 -L⁻² d²/dy² - m(y), 양끝 0 Dirichlet

- 2차 중심차분 → (n-1)×(n-1) 대칭 삼중대각 행렬
- 최소 고유값: Sturm sequence bisection (LAPACK stebz)
- m 은 셀 평균(기본) 또는 노드 샘플링
- lambda1_general: R-ladder (R₀·2ᵏ, 격자 간격 고정 → 중첩 격자)

사용법:
    lam_R = lambda1_truncated(StepProfile.constant(1.0), L=1.0, R=5.0, n=20000)
    lam = lambda1_general(params.profile(), params.L)
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal

from config.constants import EigenCase, EigenTolerances
from eigen.analytic import EigenResult, critical_length
from model.growth import GrowthParams, StepProfile
from utils.errors import ConvergenceError, EigenComputationError, ValidationError
from utils.logger import get_logger


logger = get_logger(__name__)

SAMPLING_MODES = ("average", "midpoint")


# ============================================================
# 삼중대각 이산화
# ============================================================


def _check_inputs(L: float, R: float, n: int, sampling: str) -> None:
    if not L > 0:
        raise ValidationError(f"L 은 양수여야 합니다: {L}")
    if not R > 0:
        raise ValidationError(f"R 은 양수여야 합니다: {R}")
    if n < 3:
        raise ValidationError(f"n 은 3 이상이어야 합니다: {n}")
    if sampling not in SAMPLING_MODES:
        raise ValidationError(f"sampling 은 {SAMPLING_MODES} 중 하나: {sampling}")


def _tridiagonal(m: StepProfile, L: float, R: float, n: int, sampling: str):
    """내부 노드 y_j = -R + j h (j = 1..n-1), h = 2R/n"""

    h = 2.0 * R / n
    y = -R + h * np.arange(1, n)
    m_vals = m.cell_average(y, h) if sampling == "average" else m(y)

    stiffness = 1.0 / (L * L * h * h)
    diag = 2.0 * stiffness - m_vals
    off = np.full(n - 2, -stiffness)
    return y, diag, off


def lambda1_truncated(
    m: StepProfile,
    L: float,
    R: float,
    n: int,
    sampling: str = "average",
) -> float:
    """
    λ₁ᴿ: 절단 Dirichlet 문제의 최소 고유값

    Args:
        m: 계단 프로파일 (y 단위)
        L: 척도
        R: 반폭 (y 단위)
        n: 격자 구간 수 (노드 n+1, 미지수 n-1)
        sampling: "average" (셀 평균) / "midpoint" (노드 샘플링)

    기본값은 "average": 점프를 포함한 셀에서 m 의 정확한 평균을 쓰므로
    노드 샘플링의 O(h) 점프 오차가 사라짐. "midpoint" 는 노드 값 m(y_i) 그대로.
    """

    _check_inputs(L, R, n, sampling)
    _, diag, off = _tridiagonal(m, L, R, n, sampling)

    values = eigvalsh_tridiagonal(
        diag,
        off,
        select="i",
        select_range=(0, 0),
        lapack_driver="stebz",
        tol=EigenTolerances.STURM_TOL,
    )
    return float(values[0])


@dataclass(frozen=True)
class TruncatedEigenpair:
    """λ₁ᴿ 와 격자 고유벡터 (φ(0) = 1 정규화, 구간 선형 보간)"""

    lambda1: float
    L: float
    R: float
    y: np.ndarray  # 경계 포함 노드
    phi: np.ndarray  # 경계값 0

    def value(self, y):
        out = np.interp(y, self.y, self.phi, left=0.0, right=0.0)
        return float(out) if np.ndim(out) == 0 else out

    def derivative(self, y):
        """선형 보간의 기울기 (y 에 대한 미분, 영역 밖 0)"""
        y_arr = np.asarray(y, dtype=float)
        h = self.y[1] - self.y[0]
        idx = np.clip(((y_arr - self.y[0]) // h).astype(int), 0, len(self.y) - 2)
        slope = (self.phi[idx + 1] - self.phi[idx]) / h
        slope = np.where((y_arr < -self.R) | (y_arr > self.R), 0.0, slope)
        return float(slope) if slope.ndim == 0 else slope

    def value_from_left(self, offset):
        """φ(-R + offset), offset 를 -R 에 더하지 않고 계산 (왼쪽 끝 근처 정밀도 유지)"""
        d = np.asarray(offset, dtype=float)
        h = self.y[1] - self.y[0]
        idx = np.clip((d // h).astype(int), 0, len(self.y) - 2)
        frac = d / h - idx
        out = self.phi[idx] + frac * (self.phi[idx + 1] - self.phi[idx])
        out = np.where((d < 0) | (d > 2.0 * self.R), 0.0, out)
        return float(out) if out.ndim == 0 else out

    def slope_from_left(self, offset):
        """φ′(-R + offset)"""
        d = np.asarray(offset, dtype=float)
        h = self.y[1] - self.y[0]
        idx = np.clip((d // h).astype(int), 0, len(self.y) - 2)
        slope = (self.phi[idx + 1] - self.phi[idx]) / h
        return float(slope) if slope.ndim == 0 else slope


def truncated_eigenpair(
    m: StepProfile,
    L: float,
    R: float,
    n: int,
    sampling: str = "average",
) -> TruncatedEigenpair:
    """λ₁ᴿ 와 양의 고유벡터"""

    _check_inputs(L, R, n, sampling)
    y_inner, diag, off = _tridiagonal(m, L, R, n, sampling)

    values, vectors = eigh_tridiagonal(
        diag,
        off,
        select="i",
        select_range=(0, 0),
        lapack_driver="stebz",
        tol=EigenTolerances.STURM_TOL,
    )
    vec = vectors[:, 0]
    if vec[np.argmax(np.abs(vec))] < 0:
        vec = -vec

    y = np.concatenate(([-R], y_inner, [R]))
    phi = np.concatenate(([0.0], vec, [0.0]))
    at_zero = float(np.interp(0.0, y, phi))
    if not at_zero > 0:
        raise EigenComputationError(f"Dirichlet 고유벡터가 y=0 에서 양수가 아닙니다: {at_zero}")

    return TruncatedEigenpair(float(values[0]), L, R, y, np.maximum(phi / at_zero, 0.0))


# ============================================================
# R-ladder
# ============================================================


@dataclass
class LadderResult:
    """R-ladder 기록"""

    estimate: float
    half_widths: List[float] = field(default_factory=list)
    values: List[float] = field(default_factory=list)
    nodes: List[int] = field(default_factory=list)
    extrapolated: bool = False


def run_ladder(
    m: StepProfile,
    L: float,
    tol: float = EigenTolerances.LADDER_TOL,
    spacing: float = EigenTolerances.NODE_SPACING,
    base_half_width: Optional[float] = None,
    max_rungs: int = EigenTolerances.LADDER_MAX_RUNGS,
    sampling: str = "average",
) -> LadderResult:
    """
    R_k = R₀·2ᵏ 에서 λ₁ᴿ 계산

    종료 조건:
    - 연속 rung 차이 < tol
    - Richardson 추정 λ_k + (λ_k - λ_{k-1})/3 (1/R² 꼬리) 의 연속 차이 < tol

    격자 간격 h 고정 (R₀/h 정수) → 작은 영역 행렬이 큰 영역 행렬의 주 부분행렬,
    λ_k ≤ λ_{k-1} 이 정확히 성립해야 함
    """

    if not L > 0:
        raise ValidationError(f"L 은 양수여야 합니다: {L}")

    R0 = base_half_width or m.extent + EigenTolerances.LADDER_DECAY_LENGTH / L
    h_target = spacing / L
    cells = max(1, math.ceil(R0 / h_target))

    result = LadderResult(estimate=math.nan)
    richardson: List[float] = []

    for k in range(max_rungs):
        R = R0 * 2 ** k
        n = 2 * cells * 2 ** k
        if n > EigenTolerances.MAX_NODES:
            break

        lam = lambda1_truncated(m, L, R, n, sampling)
        logger.debug(f"R-ladder rung {k}: R={R:.4g}, n={n}, λ₁ᴿ={lam!r}")

        if result.values and lam > result.values[-1] + EigenTolerances.MONOTONE_SLACK:
            raise EigenComputationError(
                f"Dirichlet 단조성 위반: λ(R={R})={lam!r} > λ(R={R / 2})={result.values[-1]!r}"
            )

        result.half_widths.append(R)
        result.values.append(lam)
        result.nodes.append(n)

        if k >= 1:
            prev = result.values[-2]
            if abs(lam - prev) < tol:
                result.estimate = lam
                return result

            richardson.append(lam + (lam - prev) / 3.0)
            if len(richardson) >= 2 and abs(richardson[-1] - richardson[-2]) < tol:
                logger.warning(f"Richardson 추정으로 수렴: {richardson[-1]!r}")
                result.estimate = richardson[-1]
                result.extrapolated = True
                return result

    last_two: Optional[Tuple[float, float]] = None
    if len(result.values) >= 2:
        last_two = (result.values[-2], result.values[-1])
    raise ConvergenceError(
        f"R-ladder 가 {len(result.values)} rung 안에 수렴하지 않았습니다 (tol={tol})",
        last_two,
    )


def lambda1_general(m: StepProfile, L: float, **ladder_options) -> float:
    """λ₁ = lim λ₁ᴿ (R-ladder 추정값)"""
    return run_ladder(m, L, **ladder_options).estimate


def lambda1_numeric(params: GrowthParams, **ladder_options) -> EigenResult:
    """two-interface 파라미터의 λ₁ 을 수치 경로로 계산 (고유함수 상수 없음)"""

    params.require_two_interface()
    L_bar = critical_length(params.r1, params.r2, params.r3)
    if params.L > L_bar:
        case = EigenCase.INTERIOR
    elif params.r1 < params.r3:
        case = EigenCase.RIGHT_CRITICAL
    else:
        case = EigenCase.LEFT_CRITICAL

    lam = lambda1_general(params.profile(), params.L, **ladder_options)
    return EigenResult(
        lam, case, params.r1, params.r2, params.r3, params.L, L_bar, method="numeric"
    )
