"""
구간별 주 고유함수 φ₁
=====================================
Interior (L > L̄):
    φ₁(y) = e^{L a1 y}                     (y ≤ 0)
          = C2 sin(L k y + C3)             (0 < y < 1)
          = C4 e^{-L a3 y}                 (y ≥ 1)
RightCritical (r1 < r3, L ≤ L̄, λ₁ = -r3):
    마지막 조각이 C4 L (y - 1) + C5 (선형, L = L̄ 이면 C4 = 0)
LeftCritical (r1 > r3):
    r1 <-> r3 교환 문제의 RightCritical 해를 y -> 1 - y 로 반사, φ₁(0) = 1 로 정규화

a1 = √(-r1-λ₁), k = √(r2+λ₁), a3 = √(-r3-λ₁)
"""

import math
from typing import Dict

import numpy as np

from config.constants import EigenCase
from eigen.analytic import EigenResult
from model.growth import GrowthParams
from utils.errors import ValidationError


class PiecewiseEigenfunction:
    """
    닫힌 형태 φ₁, φ₁′, φ₁″ 평가

    내부적으로 "기본 방향" 좌표 z 에서 계산 (LeftCritical 만 z = 1 - y)
    """

    def __init__(self, result: EigenResult):
        self.result = result
        self.case = result.case
        self.L = result.L
        self.lambda1 = result.lambda1

        self.mirrored = result.case == EigenCase.LEFT_CRITICAL
        left, right = (result.r3, result.r1) if self.mirrored else (result.r1, result.r3)

        lam = result.lambda1
        self.a_left = math.sqrt(max(-left - lam, 0.0))
        self.k = math.sqrt(result.r2 + lam)
        self.a_right = math.sqrt(max(-right - lam, 0.0))

        self.C1, self.C2, self.C3 = result.C1, result.C2, result.C3
        self.C4, self.C5 = result.C4, result.C5
        if None in (self.C1, self.C2, self.C3, self.C4):
            raise ValidationError("고유함수 상수가 없는 결과입니다 (numeric 경로 결과는 사용 불가)")
        if self.case != EigenCase.INTERIOR and self.C5 is None:
            raise ValidationError(f"{self.case.value} case 에는 C5 가 필요합니다")

        # LeftCritical: ψ(1) = C5 로 나눠 φ₁(0) = 1
        self.scale = 1.0 / self.C5 if self.mirrored else 1.0

    # ============================================================
    # 조각별 평가 (기본 방향 좌표 z)
    # ============================================================

    def _piece(self, index: int, z: np.ndarray, order: int) -> np.ndarray:
        """index 0: z ≤ 0, 1: 0 < z < 1, 2: z ≥ 1 / order: 미분 차수"""

        L = self.L
        if index == 0:
            e = self.C1 * np.exp(L * self.a_left * z)
            return e * (L * self.a_left) ** order

        if index == 1:
            phase = L * self.k * z + self.C3
            w = L * self.k
            if order == 0:
                return self.C2 * np.sin(phase)
            if order == 1:
                return self.C2 * w * np.cos(phase)
            return -self.C2 * w * w * np.sin(phase)

        if self.case == EigenCase.INTERIOR:
            e = self.C4 * np.exp(-L * self.a_right * z)
            return e * (-L * self.a_right) ** order

        # 임계 case: 선형 꼬리
        if order == 0:
            return self.C4 * L * (z - 1.0) + self.C5
        if order == 1:
            return np.full_like(z, self.C4 * L)
        return np.zeros_like(z)

    def _evaluate(self, y, order: int):
        y_arr = np.asarray(y, dtype=float)
        z = 1.0 - y_arr if self.mirrored else y_arr

        out = np.where(
            z <= 0.0,
            self._piece(0, np.minimum(z, 0.0), order),
            np.where(
                z < 1.0,
                self._piece(1, np.clip(z, 0.0, 1.0), order),
                self._piece(2, np.maximum(z, 1.0), order),
            ),
        )
        # d/dy = -d/dz (반사)
        sign = (-1.0) ** order if self.mirrored else 1.0
        out = self.scale * sign * out
        return float(out) if out.ndim == 0 else out

    # ============================================================
    # 공개 API
    # ============================================================

    def value(self, y):
        """φ₁(y)"""
        return self._evaluate(y, 0)

    def derivative(self, y):
        """φ₁′(y) (y 에 대한 미분)"""
        return self._evaluate(y, 1)

    def second_derivative(self, y):
        return self._evaluate(y, 2)

    __call__ = value

    def residual(self, y) -> np.ndarray:
        """-L⁻² φ₁″ - m φ₁ - λ₁ φ₁"""
        y_arr = np.asarray(y, dtype=float)
        m = self.result.params.profile()(y_arr)
        phi = self.value(y_arr)
        return -self.second_derivative(y_arr) / self.L ** 2 - m * phi - self.lambda1 * phi

    def matching_errors(self) -> Dict[str, float]:
        """y = 0, y = 1 에서 조각 간 값/미분 불일치 (y 기준 크기)"""

        errors = {}
        for label, z in (("z0", 0.0), ("z1", 1.0)):
            left_piece, right_piece = (0, 1) if z == 0.0 else (1, 2)
            zz = np.array(z)
            for order, name in ((0, "value"), (1, "derivative")):
                gap = self._piece(left_piece, zz, order) - self._piece(right_piece, zz, order)
                errors[f"{name}_{label}"] = abs(float(gap)) * abs(self.scale)

        # y 기준 이름으로 정리 (반사 시 z0 <-> y1)
        rename = {"z0": "y1", "z1": "y0"} if self.mirrored else {"z0": "y0", "z1": "y1"}
        return {
            key.rsplit("_", 1)[0] + "_" + rename[key.rsplit("_", 1)[1]]: value
            for key, value in errors.items()
        }


def eigenfunction(params: GrowthParams, result: EigenResult) -> PiecewiseEigenfunction:
    """lambda1_analytic 결과로 φ₁ 생성 (같은 params 인지 확인)"""

    same = (
        math.isclose(params.r1, result.r1)
        and math.isclose(params.r2, result.r2)
        and math.isclose(params.r3, result.r3)
        and math.isclose(params.L, result.L)
    )
    if not same:
        raise ValidationError("EigenResult 가 다른 GrowthParams 에서 계산되었습니다")

    expected = _expected_case(result)
    if result.case != expected:
        raise ValidationError(f"case 불일치: {result.case.value} (예상 {expected.value})")

    return PiecewiseEigenfunction(result)


def _expected_case(result: EigenResult) -> EigenCase:
    if result.L > result.critical_length:
        return EigenCase.INTERIOR
    return EigenCase.RIGHT_CRITICAL if result.r1 < result.r3 else EigenCase.LEFT_CRITICAL
