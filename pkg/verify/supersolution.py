"""
상위해(super-solution) 검증
=====================================
Step1 (r3 감쇠율, c' = max(2√r3, cA)):
    ū = 2 min(1, e^{-λ(c')(x - c't - L)})
Step2 (r1 감쇠율, cA > 2√(-λ₁)):
    ū = 2                                       (x ≤ ct - ln2/λ(c))
      = e^{-λ(c)(x - ct)}                       (ct - ln2/λ(c) < x < cA t)
      = e^{-λ(c)(cA-c)t} e^{-cA(x-cAt)/2} φ₁((x-cAt)/L)   (x ≥ cA t)

N[ū] = ∂t ū - ∂xx ū - r ū (1 - ū) 를 조각별 닫힌 형태로 계산, N ≥ -tol 확인.
각 경계에서 왼쪽 기울기 ≥ 오른쪽 기울기 (미분 gap ≤ 0) 확인.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from config.constants import SubSolutionRecipe
from eigen.analytic import lambda1_analytic
from eigen.eigenfunction import PiecewiseEigenfunction, eigenfunction
from model.growth import GrowthParams, Trajectory, eval_r
from speed.predictor import decay_rate, predict_two_interface
from utils.errors import ValidationError
from utils.logger import get_logger


logger = get_logger(__name__)

STEP1 = "Step1"
STEP2 = "Step2"


@dataclass
class SuperSolutionSpec:
    """상위해 파라미터"""

    case: str
    params: GrowthParams
    cA: float
    c: float
    decay: float  # λ(c)
    lambda1: float
    phi: Optional[PiecewiseEigenfunction] = None

    def validate(self) -> "SuperSolutionSpec":
        if self.case not in (STEP1, STEP2):
            raise ValidationError(f"알 수 없는 상위해 case: {self.case}")
        if not self.cA > 0:
            raise ValidationError(f"cA 는 양수여야 합니다: {self.cA}")
        if self.case == STEP2:
            if not self.cA > 2.0 * math.sqrt(-self.lambda1):
                raise ValidationError(
                    f"Step2 는 cA > 2√(-λ₁) = {2 * math.sqrt(-self.lambda1)} 가 필요합니다: cA={self.cA}"
                )
            if self.phi is None:
                raise ValidationError("Step2 에는 고유함수 φ₁ 가 필요합니다")
        return self


@dataclass
class SuperSolutionReport:
    """검증 결과"""

    case: str
    samples: int
    min_residual: float
    violations: List[Dict[str, float]] = field(default_factory=list)
    interfaces: List[Dict[str, float]] = field(default_factory=list)
    angle_margin: Optional[float] = None
    passed: bool = False


# ============================================================
# 구성
# ============================================================


def build_step1(params: GrowthParams, cA: float) -> SuperSolutionSpec:
    """Step1: c' = max(2√r3, cA), r3 감쇠율"""
    params.require_two_interface()
    c = max(2.0 * math.sqrt(params.r3), cA)
    lam1 = lambda1_analytic(params).lambda1
    return SuperSolutionSpec(STEP1, params, cA, c, decay_rate(params.r3, c), lam1).validate()


def build_step2(params: GrowthParams, cA: float, c: Optional[float] = None) -> SuperSolutionSpec:
    """Step2: 기본 c = c*(cA), r1 감쇠율, 고유함수 φ₁"""
    params.require_two_interface()
    result = lambda1_analytic(params)
    if c is None:
        c = predict_two_interface(params, cA, result.lambda1).c_star
    phi = eigenfunction(params, result)
    spec = SuperSolutionSpec(STEP2, params, cA, c, decay_rate(params.r1, c), result.lambda1, phi)
    return spec.validate()


# ============================================================
# 검증
# ============================================================


def check_supersolution(
    spec: SuperSolutionSpec,
    t_samples: int = 100,
    x_samples: int = 100,
    horizon: float = SubSolutionRecipe.TIME_HORIZON,
    tol: float = SubSolutionRecipe.RESIDUAL_TOL,
) -> SuperSolutionReport:
    """
    t ∈ (0, horizon] × 조각별 x 샘플에서 N[ū] ≥ -tol, 경계 기울기 조건 확인

    Returns:
        SuperSolutionReport (실패 샘플 위치 포함)
    """

    spec.validate()
    traj = Trajectory.linear(spec.cA)
    times = np.linspace(horizon / t_samples, horizon, t_samples)

    report = SuperSolutionReport(case=spec.case, samples=0, min_residual=math.inf)

    for t in times:
        if spec.case == STEP1:
            x, residual, interfaces = _step1_samples(spec, traj, t, x_samples)
        else:
            x, residual, interfaces = _step2_samples(spec, traj, t, x_samples)

        report.samples += x.size
        report.min_residual = min(report.min_residual, float(residual.min()))
        for xi, ni in zip(x[residual < -tol], residual[residual < -tol]):
            report.violations.append({"t": float(t), "x": float(xi), "residual": float(ni)})

        for item in interfaces:
            item["t"] = float(t)
            report.interfaces.append(item)

    if spec.case == STEP2:
        dphi0 = spec.phi.derivative(0.0) / spec.params.L
        report.angle_margin = spec.cA / 2.0 - spec.decay - dphi0

    angle_ok = report.angle_margin is None or report.angle_margin >= -tol
    gaps_ok = all(item["gap"] <= tol for item in report.interfaces)
    report.passed = not report.violations and angle_ok and gaps_ok

    logger.info(
        f"상위해 {spec.case} 검증 - 샘플 {report.samples}, min N={report.min_residual:.3e}, "
        f"위반 {len(report.violations)}, 통과={report.passed}"
    )
    return report


def _step1_samples(spec: SuperSolutionSpec, traj: Trajectory, t: float, count: int):
    L, lam, c = spec.params.L, spec.decay, spec.c
    edge = c * t + L
    x = np.linspace(edge - 20.0, edge + 20.0, count)
    z = x - edge

    u = np.where(z <= 0, 2.0, 2.0 * np.exp(-lam * np.maximum(z, 0.0)))
    # z > 0: ∂t ū = λ c ū, ∂xx ū = λ² ū
    linear = np.where(z <= 0, 0.0, (lam * c - lam * lam) * u)
    r = eval_r(spec.params, traj, t, x)
    residual = linear - r * u * (1.0 - u)

    interfaces = [{"x": float(edge), "left_slope": 0.0, "right_slope": -2.0 * lam, "gap": -2.0 * lam}]
    return x, residual, interfaces


def _step2_samples(spec: SuperSolutionSpec, traj: Trajectory, t: float, count: int):
    params, phi = spec.params, spec.phi
    L, lam, c, cA = params.L, spec.decay, spec.c, spec.cA
    beta = lam * (cA - c)

    plateau_end = c * t - math.log(2.0) / lam
    patch = cA * t
    x = np.linspace(plateau_end - 10.0, patch + 10.0 * L + 10.0, count)
    # 계단 불연속점 위의 샘플은 제외 (N 은 분포 의미로만 정의)
    x = x[(x != patch) & (x != patch + L)]
    r = eval_r(params, traj, t, x)

    # 조각 1, 2
    front = x > plateau_end
    u = np.full_like(x, 2.0)
    linear = np.zeros_like(x)
    u[front] = np.exp(-lam * (x[front] - c * t))
    linear[front] = (lam * c - lam * lam) * u[front]

    # 조각 3 (patch 좌표계): ∂t ū - ∂xx ū = g E [(-β + cA²/4) φ - φ″/L²]
    in_patch = x >= patch
    xi = x[in_patch] - patch
    y = xi / L
    g = math.exp(-beta * t)
    envelope = g * np.exp(-cA * xi / 2.0)
    phi_y = phi.value(y)
    u[in_patch] = envelope * phi_y
    linear[in_patch] = envelope * ((-beta + cA * cA / 4.0) * phi_y - phi.second_derivative(y) / L ** 2)

    residual = linear - r * u * (1.0 - u)

    left_patch = -lam * g
    right_patch = g * (phi.derivative(0.0) / L - cA / 2.0)
    interfaces = [
        {"x": float(plateau_end), "left_slope": 0.0, "right_slope": -2.0 * lam, "gap": -2.0 * lam},
        {"x": float(patch), "left_slope": left_patch, "right_slope": right_patch, "gap": right_patch - left_patch},
    ]
    return x, residual, interfaces
