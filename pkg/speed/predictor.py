"""
전파 속도 예측
=====================================
two-interface 이동 patch:
    c* = 2√r3                 (cA < 2√r3)                          Slow
       = cA                   (2√r3 ≤ cA ≤ 2√(-λ₁))                Locked
       = F(cA)                (2√(-λ₁) < cA < 2√r1 + 2√(-λ₁-r1))   NonlocallyPulled
       = 2√r1                 (그 외)                              Fast
    F(c) = (c - 2√(-λ₁-r1))/2 + 2 r1 / (c - 2√(-λ₁-r1))

single transition (r2 = r3 또는 L → 0): 6 case 공식

사용법:
    pred = predict_two_interface(params, cA=5.0)
    pred.regime, pred.c_star
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from dataclasses_json import dataclass_json

from config.constants import Regime
from eigen.analytic import lambda1_analytic
from eigen.truncated import lambda1_general
from model.growth import GrowthParams, StepProfile
from utils.errors import ValidationError


@dataclass_json
@dataclass(frozen=True)
class SpeedPrediction:
    """예측 결과 (thresholds = (2√r3, 2√(-λ₁), 2√r1 + 2√(-λ₁-r1)))"""

    regime: Regime
    c_star: float
    thresholds: Tuple[float, float, float]
    lambda1: float
    cA: float


# ============================================================
# 감쇠율 / F
# ============================================================


def decay_rate(r: float, c: float) -> float:
    """λ(c) = (c - √(c² - 4r))/2, λ² - cλ + r = 0 의 작은 근"""

    if not r > 0:
        raise ValidationError(f"r 은 양수여야 합니다: {r}")
    disc = c * c - 4.0 * r
    if disc < 0:
        # 2√r 바로 아래의 반올림 오차 허용
        if disc > -1e-12 * c * c:
            disc = 0.0
        else:
            raise ValidationError(f"c ≥ 2√r 가 필요합니다: c={c}, 2√r={2 * math.sqrt(r)}")
    # 2r / (c + √disc) 형태 (큰 c 에서 상쇄 오차 방지)
    return 2.0 * r / (c + math.sqrt(disc))


def F(c: float, r1: float, lambda1: float) -> float:
    """비국소 끌림 속도 함수"""

    if not lambda1 <= -r1:
        raise ValidationError(f"λ₁ ≤ -r1 가 필요합니다: λ₁={lambda1}, r1={r1}")
    shift = 2.0 * math.sqrt(-lambda1 - r1)
    gap = c - shift
    if not gap > 0:
        raise ValidationError(f"c > 2√(-λ₁-r1) = {shift} 가 필요합니다: c={c}")
    return gap / 2.0 + 2.0 * r1 / gap


# ============================================================
# regime 분류
# ============================================================


def thresholds_for(r1: float, r3: float, lambda1: float) -> Tuple[float, float, float]:
    return (
        2.0 * math.sqrt(r3),
        2.0 * math.sqrt(-lambda1),
        2.0 * math.sqrt(r1) + 2.0 * math.sqrt(max(-lambda1 - r1, 0.0)),
    )


def classify(r1: float, r3: float, lambda1: float, cA: float) -> SpeedPrediction:
    """λ₁ 이 주어졌을 때의 4-구간 공식"""

    if not lambda1 <= -max(r1, r3):
        raise ValidationError(f"λ₁ ≤ -max(r1, r3) 가 필요합니다: {lambda1}")

    t_slow, t_lock, t_fast = thresholds_for(r1, r3, lambda1)

    if cA < t_slow:
        regime, c_star = Regime.SLOW, t_slow
    elif cA <= t_lock:
        regime, c_star = Regime.LOCKED, cA
    elif cA < t_fast:
        regime, c_star = Regime.NONLOCALLY_PULLED, F(cA, r1, lambda1)
    else:
        regime, c_star = Regime.FAST, 2.0 * math.sqrt(r1)

    return SpeedPrediction(regime, c_star, (t_slow, t_lock, t_fast), lambda1, cA)


def predict_two_interface(
    params: GrowthParams,
    cA: float,
    lambda1: Optional[float] = None,
) -> SpeedPrediction:
    """
    이동 patch 의 전파 속도

    Args:
        params: r2 > max(r1, r3)
        cA: patch 속도 (> 0)
        lambda1: 미리 계산한 λ₁ (없으면 lambda1_analytic)
    """

    params.require_two_interface()
    if not cA > 0:
        raise ValidationError(f"cA 는 양수여야 합니다: {cA}")

    if lambda1 is None:
        lambda1 = lambda1_analytic(params).lambda1
    return classify(params.r1, params.r3, lambda1, cA)


def predict_single_transition(r1: float, r3: float, cA: float) -> SpeedPrediction:
    """
    단일 전이 (x < cA t 에서 r1, 그 외 r3)

    (a) r1 ≥ r3: 2√r3 (cA ≤ 2√r3) / cA (2√r3 < cA ≤ 2√r1) / 2√r1
    (b) r1 < r3: 2√r3 (cA ≤ 2√r3)
                 / (cA - 2√(r3-r1))/2 + 2r1/(cA - 2√(r3-r1)) (cA < 2√r1 + 2√(r3-r1))
                 / 2√r1
    """

    if not (r1 > 0 and r3 > 0):
        raise ValidationError(f"r1, r3 는 양수여야 합니다: {r1}, {r3}")
    if not cA >= 0:
        raise ValidationError(f"cA 는 0 이상이어야 합니다: {cA}")

    top = max(r1, r3)
    thresholds = thresholds_for(r1, r3, -top)
    slow, fast = 2.0 * math.sqrt(r3), 2.0 * math.sqrt(r1)

    if cA <= slow:
        regime, c_star = Regime.SLOW, slow
    elif r1 >= r3:
        if cA <= fast:
            regime, c_star = Regime.LOCKED, cA
        else:
            regime, c_star = Regime.FAST, fast
    elif cA < thresholds[2]:
        regime, c_star = Regime.NONLOCALLY_PULLED, F(cA, r1, -r3)
    else:
        regime, c_star = Regime.FAST, fast

    return SpeedPrediction(regime, c_star, thresholds, -top, cA)


def predict_general_profile(
    m: StepProfile,
    cA: float,
    L: float = 1.0,
    lambda1: Optional[float] = None,
) -> SpeedPrediction:
    """
    patch 좌표계 계단 프로파일 m((x - cA t)/L) 의 전파 속도

    r1 = m(-∞), r3 = m(+∞), λ₁ 은 R-ladder (lambda1_general)
    """

    if not cA > 0:
        raise ValidationError(f"cA 는 양수여야 합니다: {cA}")
    if lambda1 is None:
        lambda1 = lambda1_general(m, L)
    # 수치 λ₁ 이 -max 바로 위로 나올 수 있음 (임계 프로파일)
    lambda1 = min(lambda1, -max(m.left_value, m.right_value))
    return classify(m.left_value, m.right_value, lambda1, cA)


def pulling_possible(params: GrowthParams, lambda1: Optional[float] = None) -> bool:
    """λ₁ ≠ -r1 (비국소 끌림 구간이 비어 있지 않음)"""
    if lambda1 is None:
        lambda1 = lambda1_analytic(params).lambda1
    return lambda1 < -params.r1


# ============================================================
# sweep / 검사
# ============================================================


def sweep_cA(
    params: GrowthParams,
    cA_min: float,
    cA_max: float,
    n: int,
    lambda1: Optional[float] = None,
) -> List[SpeedPrediction]:
    """cA 격자 위 예측 (λ₁ 1회 계산)"""

    if n < 2 or not 0 < cA_min < cA_max:
        raise ValidationError(f"0 < cA_min < cA_max, n ≥ 2 가 필요합니다: {cA_min}, {cA_max}, {n}")
    if lambda1 is None:
        lambda1 = lambda1_analytic(params.require_two_interface()).lambda1
    return [predict_two_interface(params, float(c), lambda1) for c in np.linspace(cA_min, cA_max, n)]


def sweep_lambda1(
    r1: float,
    r2: float,
    r3: float,
    cA: float,
    lambda_min: float,
    lambda_max: float,
    n: int,
) -> List[SpeedPrediction]:
    """고정 cA 에서 λ₁ ∈ [lambda_min, lambda_max] ⊂ [-r2, -max(r1, r3)] 에 대한 c*"""

    if not r2 > max(r1, r3):
        raise ValidationError(f"r2 > max(r1, r3) 가 필요합니다: r2={r2}")
    if not -r2 <= lambda_min < lambda_max <= -max(r1, r3) or n < 2:
        raise ValidationError(
            f"-r2 ≤ lambda_min < lambda_max ≤ -max(r1, r3), n ≥ 2 가 필요합니다: {lambda_min}, {lambda_max}, {n}"
        )
    return [classify(r1, r3, float(lam), cA) for lam in np.linspace(lambda_min, lambda_max, n)]


def threshold_gaps(r1: float, r3: float, lambda1: float, eps: float = 1e-9) -> List[float]:
    """각 threshold ±eps 에서 c* 차이 (연속성 검사)"""

    gaps = []
    for t in thresholds_for(r1, r3, lambda1):
        if t - eps <= 0:
            continue
        below = classify(r1, r3, lambda1, t - eps).c_star
        above = classify(r1, r3, lambda1, t + eps).c_star
        gaps.append(abs(above - below))
    return gaps
