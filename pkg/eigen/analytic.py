"""
주 고유값 λ₁ (해석적 경로)
=====================================
-L⁻² d²/dy² - m(y),  m = r1 1{y<0} + r2 1{0≤y<1} + r3 1{y≥1}

- critical_length: L̄ (이보다 짧은 patch 는 λ₁ 을 -max(r1, r3) 에서 움직이지 못함)
- lambda1_analytic: L ≤ L̄ 이면 -max(r1, r3), 아니면 cot 방정식의 유일한 근 (bisection)
- length_for_lambda1: 역문제 L(λ) = arccot(ζ(λ)) / √(r2 + λ)
- critical_r2: L̄(r2) = L 이 되는 r2 (이보다 큰 r2 에서만 λ₁ 이 r2 에 따라 감소)

사용법:
    result = lambda1_analytic(GrowthParams(1, 9, 4, 0.895353))
    result.lambda1   # ≈ -77/13
"""

import math
from dataclasses import dataclass
from typing import Optional

from dataclasses_json import dataclass_json
from scipy import optimize

from config.constants import EigenCase, EigenTolerances
from model.growth import GrowthParams
from utils.errors import EigenComputationError, ValidationError
from utils.logger import get_logger


logger = get_logger(__name__)


@dataclass_json
@dataclass(frozen=True)
class EigenResult:
    """
    λ₁ 계산 결과

    C1..C5 는 고유함수 구성 상수 (Interior 에서는 C5 없음).
    LeftCritical 은 r1 <-> r3 교환 문제의 RightCritical 상수를 그대로 보관하고
    y -> 1 - y 반사 후 φ₁(0) = 1 로 정규화해서 사용
    """

    lambda1: float
    case: EigenCase
    r1: float
    r2: float
    r3: float
    L: float
    critical_length: float
    C1: Optional[float] = None
    C2: Optional[float] = None
    C3: Optional[float] = None
    C4: Optional[float] = None
    C5: Optional[float] = None
    method: str = "analytic"

    @property
    def params(self) -> GrowthParams:
        return GrowthParams(self.r1, self.r2, self.r3, self.L)


# ============================================================
# 보조 함수
# ============================================================


def arccot(z: float) -> float:
    """(0, π) 값의 arccot"""
    return 0.5 * math.pi - math.atan(z)


def _check_two_interface(r1: float, r2: float, r3: float) -> None:
    for name, value in (("r1", r1), ("r2", r2), ("r3", r3)):
        if not value > 0:
            raise ValidationError(f"{name} 는 양수여야 합니다: {value}")
    if not r2 > max(r1, r3):
        raise ValidationError(f"r2 > max(r1, r3) 가 필요합니다: r2={r2}, max={max(r1, r3)}")


def zeta(lam: float, r1: float, r2: float, r3: float) -> float:
    """
    ζ(λ) = [r2 + λ - √((r1+λ)(r3+λ))] / [√(r2+λ)(√(-r1-λ) + √(-r3-λ))]

    λ ∈ (-r2, -max(r1, r3)) 에서 정의
    """
    a1 = math.sqrt(-r1 - lam)
    a3 = math.sqrt(-r3 - lam)
    k = math.sqrt(r2 + lam)
    return (k * k - a1 * a3) / (k * (a1 + a3))


# ============================================================
# 임계 길이
# ============================================================


def critical_length(r1: float, r2: float, r3: float) -> float:
    """L̄ = arccot(√((r2 - max)/|r1 - r3|)) / √(r2 - max), r1 = r3 이면 0"""

    _check_two_interface(r1, r2, r3)
    if r1 == r3:
        return 0.0

    gap = r2 - max(r1, r3)
    return arccot(math.sqrt(gap / abs(r1 - r3))) / math.sqrt(gap)


def critical_r2(r1: float, r3: float, L: float) -> float:
    """
    L̄(r2) = L 인 r2 (r̲2)

    r2 ≤ r̲2 이면 λ₁ = -max(r1, r3), r2 > r̲2 에서 λ₁ 은 r2 에 대해 순감소.
    r1 = r3 이면 L̄ ≡ 0 이므로 max(r1, r3)
    """

    if not (r1 > 0 and r3 > 0 and L > 0):
        raise ValidationError(f"r1, r3, L 은 양수여야 합니다: {r1}, {r3}, {L}")

    top = max(r1, r3)
    if r1 == r3:
        return top

    def excess(gap: float) -> float:
        return critical_length(r1, top + gap, r3) - L

    # L̄ 은 gap 에 대해 감소: gap -> 0 에서 +∞, gap -> ∞ 에서 0
    hi = 1.0
    while excess(hi) > 0:
        hi *= 2.0
    lo = hi / 2.0
    while excess(lo) < 0 and lo > 1e-300:
        lo /= 2.0

    gap = optimize.bisect(excess, lo, hi, xtol=1e-14 * max(1.0, hi))
    return top + gap


# ============================================================
# λ₁ (해석적)
# ============================================================


def _eigen_equation(lam: float, r1: float, r2: float, r3: float, L: float) -> float:
    """cot(L√(r2+λ)) - ζ(λ) (구간에서 순감소)"""
    arg = L * math.sqrt(r2 + lam)
    return math.cos(arg) / math.sin(arg) - zeta(lam, r1, r2, r3)


def lambda1_analytic(params: GrowthParams) -> EigenResult:
    """
    주 고유값 λ₁ 과 고유함수 상수

    Args:
        params: r2 > max(r1, r3) 인 GrowthParams

    Returns:
        EigenResult (case, C1..C5 포함)
    """

    r1, r2, r3, L = params.r1, params.r2, params.r3, params.L
    _check_two_interface(r1, r2, r3)

    top = max(r1, r3)
    L_bar = critical_length(r1, r2, r3)

    if L <= L_bar:
        if r1 < r3:
            case, constants = EigenCase.RIGHT_CRITICAL, _right_critical_constants(r1, r2, r3, L)
        else:
            case, constants = EigenCase.LEFT_CRITICAL, _right_critical_constants(r3, r2, r1, L)
        logger.debug(f"임계 branch: L={L} ≤ L̄={L_bar}, λ₁={-top}")
        return EigenResult(-top, case, r1, r2, r3, L, L_bar, *constants)

    # 구간 (-r2, λ̄) 안쪽으로 이동한 bracket
    lam_bar = min(-top, math.pi ** 2 / L ** 2 - r2)
    nudge = EigenTolerances.BRACKET_NUDGE * (r2 - top)
    lo, hi = -r2 + nudge, lam_bar - nudge

    g_lo = _eigen_equation(lo, r1, r2, r3, L)
    g_hi = _eigen_equation(hi, r1, r2, r3, L)

    if g_lo > 0 and g_hi >= 0 and lam_bar == -top:
        # L 이 L̄ 바로 위: 근이 -max(r1, r3) 의 nudge 이내
        logger.debug(f"λ₁ 이 -max 에서 {nudge:.1e} 이내 (L={L}, L̄={L_bar})")
        constants = _interior_constants(r1, r2, r3, L, hi)
        return EigenResult(hi, EigenCase.INTERIOR, r1, r2, r3, L, L_bar, *constants)

    if not (g_lo > 0 > g_hi):
        raise EigenComputationError(
            f"λ₁ bracket 부호 변화 없음: g({lo})={g_lo}, g({hi})={g_hi} (params={params})"
        )

    lam = optimize.bisect(
        _eigen_equation,
        lo,
        hi,
        args=(r1, r2, r3, L),
        xtol=EigenTolerances.BISECTION_XTOL,
        maxiter=400,
    )

    constants = _interior_constants(r1, r2, r3, L, lam)
    return EigenResult(lam, EigenCase.INTERIOR, r1, r2, r3, L, L_bar, *constants)


def _interior_constants(r1, r2, r3, L, lam):
    a1 = math.sqrt(-r1 - lam)
    a3 = math.sqrt(-r3 - lam)
    k = math.sqrt(r2 + lam)

    c3 = math.atan2(k, a1)  # cot C3 = a1 / k
    c2 = 1.0 / math.sin(c3)
    c4 = math.exp(L * a3) * math.sin(L * k + c3) / math.sin(c3)

    if not (0 < c3 < L * k + c3 < math.pi):
        raise EigenComputationError(f"Interior 부호 조건 위반: C3={c3}, L√(r2+λ)={L * k}")
    return 1.0, c2, c3, c4, None


def _right_critical_constants(r1, r2, r3, L):
    """r1 < r3, L ≤ L̄, λ₁ = -r3 (LeftCritical 은 교환된 인자로 호출)"""

    a1 = math.sqrt(r3 - r1)
    k = math.sqrt(r2 - r3)

    c3 = math.atan2(k, a1)  # cot C3 = √((r3-r1)/(r2-r3))
    c2 = 1.0 / math.sin(c3)
    c4 = k * math.cos(L * k + c3) / math.sin(c3)
    c5 = math.sin(L * k + c3) / math.sin(c3)

    # L = L̄ 에서 L√(r2-r3) + C3 = π/2, C4 = 0
    if not (0 < c3 < L * k + c3 <= 0.5 * math.pi + 1e-12):
        raise EigenComputationError(f"임계 부호 조건 위반: C3={c3}, L√(r2-r3)={L * k}")
    return 1.0, c2, c3, max(c4, 0.0), c5


# ============================================================
# 역문제 L(λ)
# ============================================================


def length_for_lambda1(r1: float, r2: float, r3: float, lambda_target: float) -> float:
    """lambda1_analytic(L) = lambda_target 인 유일한 L"""

    _check_two_interface(r1, r2, r3)
    top = max(r1, r3)
    if not -r2 < lambda_target < -top:
        raise ValidationError(
            f"lambda1 은 열린 구간 (-r2, -max(r1, r3)) = ({-r2}, {-top}) 에 있어야 합니다: {lambda_target}"
        )

    z = zeta(lambda_target, r1, r2, r3)
    return arccot(z) / math.sqrt(r2 + lambda_target)


def resolve_length(
    r1: float,
    r2: float,
    r3: float,
    L: Optional[float] = None,
    lambda1: Optional[float] = None,
) -> float:
    """
    L 또는 λ₁ 로 patch 길이 결정

    λ₁ = -max(r1, r3) 은 임계 길이 L̄ 로 대응 (r1 = r3 이면 불가)
    """

    if (L is None) == (lambda1 is None):
        raise ValidationError("L 과 lambda1 중 정확히 하나를 지정해야 합니다")
    if L is not None:
        return float(L)

    _check_two_interface(r1, r2, r3)
    if lambda1 == -max(r1, r3):
        L_bar = critical_length(r1, r2, r3)
        if L_bar == 0.0:
            raise ValidationError("r1 = r3 이면 λ₁ = -max(r1, r3) 를 만드는 L 이 없습니다")
        return L_bar

    return length_for_lambda1(r1, r2, r3, lambda1)
