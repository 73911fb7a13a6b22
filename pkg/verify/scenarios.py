"""
검증 시나리오
=====================================
- sweep_speed_curve: cA 격자에서 예측 c* 와 시뮬레이션 속도 비교
- corollary_bounds: 임의 궤적 A(t) 의 slow / fast patch 판정
- oscillation_experiment: 느리게 진동하는 patch 속도에서 구간별 속도 분리

시뮬레이션 실행은 서로 독립이므로 jobs > 1 이면 ProcessPoolExecutor 로 병렬 실행,
결과는 입력 순서대로 정렬.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from dataclasses_json import dataclass_json

from config.constants import Regime, ScenarioDefaults, SimulationDefaults
from eigen.analytic import lambda1_analytic
from model.growth import GrowthParams, Trajectory
from sim.solver import Grid
from sim.tracking import FrontTrace, fit_speed, run
from speed.predictor import F, predict_two_interface, pulling_possible, thresholds_for
from utils.errors import ValidationError
from utils.logger import get_logger


logger = get_logger(__name__)


@dataclass(frozen=True)
class SimSettings:
    """시나리오 시뮬레이션 설정"""

    T: float = ScenarioDefaults.HORIZON
    dx: float = SimulationDefaults.DX
    dt: float = SimulationDefaults.DT
    theta: float = SimulationDefaults.THETA
    scheme: str = "imex"
    jobs: int = 1

    def grid(self, params: GrowthParams, traj: Trajectory, T: Optional[float] = None) -> Grid:
        return Grid.for_scenario(params, traj, self.T if T is None else T, self.dx, self.dt)


def _simulate(job: Tuple[GrowthParams, Trajectory, SimSettings, Optional[float]]) -> FrontTrace:
    """worker (프로세스 풀에서 pickle 가능한 최상위 함수)"""
    params, traj, settings, T = job
    grid = settings.grid(params, traj, T)
    return run(grid, params, traj, theta=settings.theta, scheme=settings.scheme)


def _run_all(jobs: List[tuple], workers: int) -> List[FrontTrace]:
    if workers <= 1 or len(jobs) <= 1:
        return [_simulate(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as executor:
        return list(executor.map(_simulate, jobs))


# ============================================================
# 속도 곡선
# ============================================================


@dataclass_json
@dataclass
class SweepPoint:
    cA: float
    regime: Regime
    c_star: float
    fitted_speed: float = math.nan
    fit_residual: float = math.nan
    relative_error: float = math.nan


@dataclass_json
@dataclass
class SweepTable:
    """cA 별 예측 / 시뮬레이션 속도"""

    lambda1: float
    T: float
    points: List[SweepPoint] = field(default_factory=list)
    simulated: bool = True

    @property
    def max_relative_error(self) -> float:
        errors = [p.relative_error for p in self.points if math.isfinite(p.relative_error)]
        return max(errors) if errors else math.nan

    def rows(self) -> List[list]:
        return [
            [p.cA, p.regime.value, p.c_star, p.fitted_speed, p.fit_residual, p.relative_error]
            for p in self.points
        ]


def sweep_speed_curve(
    params: GrowthParams,
    cA_grid: Sequence[float],
    settings: Optional[SimSettings] = None,
    simulate: bool = True,
) -> SweepTable:
    """
    cA 격자 위 예측 (regime, c*) 와 시뮬레이션 fitted speed

    Args:
        params: r2 > max(r1, r3)
        cA_grid: patch 속도 목록
        settings: 시뮬레이션 설정 (jobs 로 병렬도 지정)
        simulate: False 면 예측만 (fitted_speed = nan)
    """

    settings = settings or SimSettings()
    lam1 = lambda1_analytic(params.require_two_interface()).lambda1
    predictions = [predict_two_interface(params, float(cA), lam1) for cA in cA_grid]
    table = SweepTable(lambda1=lam1, T=settings.T, simulated=simulate)

    logger.info("=" * 50)
    logger.info(f"속도 곡선 sweep - {len(predictions)}개 cA, λ₁={lam1:.6f}, 시뮬레이션={simulate}")
    logger.info("=" * 50)

    traces: List[Optional[FrontTrace]] = [None] * len(predictions)
    if simulate:
        jobs = [(params, Trajectory.linear(p.cA), settings, None) for p in predictions]
        traces = _run_all(jobs, settings.jobs)

    for prediction, trace in zip(predictions, traces):
        point = SweepPoint(prediction.cA, prediction.regime, prediction.c_star)
        if trace is not None:
            point.fitted_speed = trace.fitted_speed
            point.fit_residual = trace.fit_residual
            point.relative_error = abs(trace.fitted_speed - prediction.c_star) / prediction.c_star
        table.points.append(point)
        logger.info(
            f"  cA={point.cA:.4f}: {point.regime.value}, c*={point.c_star:.5f}, "
            f"시뮬레이션={point.fitted_speed:.5f}"
        )

    return table


# ============================================================
# Corollary (slow / fast patch)
# ============================================================


SLOW = "slow"
FAST = "fast"
NOT_APPLICABLE = "not applicable"


@dataclass_json
@dataclass
class CorollaryVerdict:
    """slow / fast patch 판정"""

    verdict: str
    hypothesis_value: float  # slow: sup (A+L)/t, fast: inf A/t
    slow_bound: float  # 2√r3
    fast_bound: float  # 2√r1 + 2√(r2 - r1)
    expected_speed: float = math.nan
    fitted_speed: float = math.nan
    relative_error: float = math.nan
    passed: bool = False


def corollary_bounds(
    params: GrowthParams,
    traj: Trajectory,
    settings: Optional[SimSettings] = None,
    tolerance: float = SimulationDefaults.SPEED_REL_TOL,
) -> CorollaryVerdict:
    """
    임의 궤적 A(t) 에 대한 Corollary 판정

    - slow: sup_t (A(t) + L)/t ≤ 2√r3  →  속도 2√r3
    - fast: inf_t A(t)/t ≥ 2√r1 + 2√(r2 - r1)  →  속도 2√r1
    - 둘 다 아니면 "not applicable" (시뮬레이션 생략)

    가정은 t ∈ [1, T] 샘플에서 확인 (t → 0 에서 (A+L)/t 는 발산).
    """

    settings = settings or SimSettings()
    r1, r2, r3, L = params.r1, params.r2, params.r3, params.L
    if not r2 > r1:
        raise ValidationError(f"r2 > r1 이 필요합니다: r1={r1}, r2={r2}")

    t = np.linspace(ScenarioDefaults.HYPOTHESIS_T_MIN, settings.T, ScenarioDefaults.HYPOTHESIS_SAMPLES)
    A = traj.position(t)
    slow_bound = 2.0 * math.sqrt(r3)
    fast_bound = 2.0 * math.sqrt(r1) + 2.0 * math.sqrt(r2 - r1)
    sup_slow = float(np.max((A + L) / t))
    inf_fast = float(np.min(A / t))

    if sup_slow <= slow_bound * (1 + 1e-12):
        verdict = CorollaryVerdict(SLOW, sup_slow, slow_bound, fast_bound, expected_speed=slow_bound)
    elif inf_fast >= fast_bound * (1 - 1e-12):
        verdict = CorollaryVerdict(FAST, inf_fast, slow_bound, fast_bound, expected_speed=2.0 * math.sqrt(r1))
    else:
        logger.warning(
            f"Corollary 가정 불충족 - sup (A+L)/t={sup_slow:.4f} > {slow_bound:.4f}, "
            f"inf A/t={inf_fast:.4f} < {fast_bound:.4f}"
        )
        return CorollaryVerdict(NOT_APPLICABLE, math.nan, slow_bound, fast_bound)

    trace = _simulate((params, traj, settings, None))
    verdict.fitted_speed = trace.fitted_speed
    verdict.relative_error = abs(trace.fitted_speed - verdict.expected_speed) / verdict.expected_speed
    verdict.passed = verdict.relative_error <= tolerance

    logger.info(
        f"Corollary {verdict.verdict} patch - 예상 {verdict.expected_speed:.4f}, "
        f"시뮬레이션 {verdict.fitted_speed:.4f}, 통과={verdict.passed}"
    )
    return verdict


# ============================================================
# 느린 진동
# ============================================================


@dataclass_json
@dataclass
class OscillationReport:
    """구간별 속도"""

    cA1: float
    cA2: float
    switch_times: List[float]
    target_cA1: float  # c*₁ = F(cA1)
    target_cA2: float  # c*₂ = F(cA2) (< c*₁)
    intervals: List[Tuple[float, float]] = field(default_factory=list)
    patch_speeds: List[float] = field(default_factory=list)
    fitted_speeds: List[float] = field(default_factory=list)
    spread: float = 0.0
    required_spread: float = 0.0
    alternates: bool = False
    passed: bool = False

    def rows(self) -> List[list]:
        return [
            [a, b, cA, self._target(cA), speed]
            for (a, b), cA, speed in zip(self.intervals, self.patch_speeds, self.fitted_speeds)
        ]

    def _target(self, cA: float) -> float:
        return self.target_cA1 if cA == self.cA1 else self.target_cA2


def oscillation_experiment(
    params: GrowthParams,
    cA1: float,
    cA2: float,
    switch_times: Sequence[float] = ScenarioDefaults.SWITCH_TIMES,
    settings: Optional[SimSettings] = None,
) -> OscillationReport:
    """
    [t_{2n}, t_{2n+1}) 에서 cA1, [t_{2n+1}, t_{2n+2}) 에서 cA2 로 움직이는 patch

    시뮬레이션은 마지막 switch 시각까지, 각 구간 뒤쪽 절반에서 속도 fit.
    첫 구간을 제외한 구간 속도의 max - min 이 0.5 (F(cA1) - F(cA2)) 이상이고
    각 구간 속도가 자기 목표값에 더 가까우면 통과.

    Raises:
        ValidationError: λ₁ = -r1 이거나 2√(-λ₁) < cA1 ≤ cA2 < 2√r1 + 2√(-λ₁-r1) 위반
    """

    settings = settings or SimSettings()
    lam1 = lambda1_analytic(params.require_two_interface()).lambda1
    if not pulling_possible(params, lam1):
        raise ValidationError(f"λ₁ = -r1 인 경우 비국소 끌림이 없습니다 (λ₁={lam1})")

    _, t_lock, t_fast = thresholds_for(params.r1, params.r3, lam1)
    if not t_lock < cA1 <= cA2 < t_fast:
        raise ValidationError(
            f"2√(-λ₁) < cA1 ≤ cA2 < 2√r1 + 2√(-λ₁-r1) 가 필요합니다: "
            f"({t_lock:.4f}, {t_fast:.4f}), cA1={cA1}, cA2={cA2}"
        )

    times = [float(t) for t in switch_times]
    if len(times) < 2:
        raise ValidationError(f"switch 시각은 2개 이상 필요합니다: {times}")

    if cA1 < cA2:
        traj = Trajectory.slow_oscillation(cA1, cA2, times)
    else:
        slopes = [cA1] * (len(times) + 1)
        traj = Trajectory.piecewise_linear(times, slopes)

    target1, target2 = F(cA1, params.r1, lam1), F(cA2, params.r1, lam1)
    report = OscillationReport(cA1, cA2, times, target1, target2)
    report.required_spread = ScenarioDefaults.SPLIT_FRACTION * (target1 - target2)

    horizon = times[-1]
    logger.info("=" * 50)
    logger.info(f"진동 patch 실험 - cA1={cA1}, cA2={cA2}, switch={times}, T={horizon}")
    logger.info(f"  목표 F(cA1)={target1:.5f}, F(cA2)={target2:.5f}")
    logger.info("=" * 50)

    trace = _simulate((params, traj, settings, horizon))

    starts = [0.0] + times[:-1]
    for k, (a, b) in enumerate(zip(starts, times)):
        tail_start = b - ScenarioDefaults.TAIL_FRACTION * (b - a)
        speed, _ = fit_speed(trace, tail_start, b)
        report.intervals.append((a, b))
        report.patch_speeds.append(traj.slopes[k])
        report.fitted_speeds.append(speed)
        logger.info(f"  [{a:.0f}, {b:.0f}) cA={traj.slopes[k]}: 속도 {speed:.5f}")

    late = report.fitted_speeds[1:]
    report.spread = max(late) - min(late)
    report.alternates = all(
        abs(speed - report._target(cA)) <= abs(speed - _other(report, cA))
        for cA, speed in zip(report.patch_speeds[1:], late)
    )
    report.passed = report.spread >= report.required_spread and report.alternates

    logger.info(
        f"진동 실험 완료 - spread {report.spread:.4f} (필요 {report.required_spread:.4f}), "
        f"교대={report.alternates}, 통과={report.passed}"
    )
    return report


def _other(report: OscillationReport, cA: float) -> float:
    return report.target_cA2 if cA == report.cA1 else report.target_cA1


def sweep_summary(table: SweepTable) -> Dict[str, float]:
    """CLI JSON 요약"""
    return {
        "lambda1": table.lambda1,
        "T": table.T,
        "points": len(table.points),
        "max_relative_error": table.max_relative_error,
    }
