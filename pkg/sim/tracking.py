"""
전선(front) 추적 및 속도 추정
=====================================
- front 위치: u ≥ θ 인 가장 오른쪽 node, 다음 node 와 선형 보간
- fitted speed: [T/2, T] 구간 최소제곱 기울기
- persistence floor: t ∈ [T/2, T] 샘플에서 min_{0 ≤ x ≤ c t} u
  (moving frame: window 밖으로 밀려난 node 는 마지막 샘플 값으로 포함)

사용법:
    trace = run(grid, params, traj, theta=0.01)
    trace.fitted_speed
    persistence_floor(trace, 1.0)
"""

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from config.constants import SimulationDefaults
from model.growth import GrowthParams, KppReaction, Trajectory
from sim.solver import Grid, InitialBump, State, check_step_bounds, init, step
from utils.errors import BoundaryContaminationError, LabRuntimeError, ValidationError
from utils.logger import get_logger


logger = get_logger(__name__)

# persistence floor 용 누적 최솟값 저장 최대 점 수
FLOOR_POINTS = 4096
OVERSHOOT = 1e-12


@dataclass
class FrontTrace:
    """front 추적 기록"""

    theta: float
    T: float
    times: List[float] = field(default_factory=list)
    fronts: List[float] = field(default_factory=list)
    fitted_speed: float = math.nan
    fit_residual: float = math.nan
    fit_window: Tuple[float, float] = (math.nan, math.nan)

    # persistence floor: 샘플별 (x ≥ 0 인 node 위치, 누적 최솟값), [T/2, T] 만 저장
    floor_times: List[float] = field(default_factory=list, repr=False)
    floor_x: List[np.ndarray] = field(default_factory=list, repr=False)
    floor_min: List[np.ndarray] = field(default_factory=list, repr=False)

    # profile snapshot (선택): (t, x, u)
    profiles: List[Tuple[float, np.ndarray, np.ndarray]] = field(default_factory=list, repr=False)

    max_u: float = 0.0
    elapsed_seconds: float = 0.0

    def rows(self):
        """CSV 행 (t, front_x)"""
        return list(zip(self.times, self.fronts))


# ============================================================
# front 위치 / 속도 fit
# ============================================================


def front_position(x: np.ndarray, u: np.ndarray, theta: float) -> float:
    """u ≥ θ 인 가장 오른쪽 node 와 다음 node 사이 선형 보간 (없으면 nan)"""

    above = np.nonzero(u >= theta)[0]
    if above.size == 0:
        return math.nan

    i = int(above[-1])
    if i + 1 >= u.size:
        return float(x[i])

    u_i, u_next = u[i], u[i + 1]
    return float(x[i] + (u_i - theta) / (u_i - u_next) * (x[i + 1] - x[i]))


def fit_speed(trace: FrontTrace, t_start: float, t_end: float) -> Tuple[float, float]:
    """
    [t_start, t_end] 최소제곱 기울기

    Returns:
        (기울기, RMS 잔차)
    """

    t = np.asarray(trace.times)
    xf = np.asarray(trace.fronts)
    mask = (t >= t_start - 1e-9) & (t <= t_end + 1e-9) & np.isfinite(xf)
    if np.count_nonzero(mask) < 2:
        raise LabRuntimeError(f"[{t_start}, {t_end}] 구간에 front 샘플이 부족합니다")

    slope, intercept = np.polyfit(t[mask], xf[mask], 1)
    residual = xf[mask] - (slope * t[mask] + intercept)
    return float(slope), float(np.sqrt(np.mean(residual ** 2)))


def persistence_floor(trace: FrontTrace, c_probe: float) -> float:
    """min_{t ∈ [T/2, T]} min_{0 ≤ x ≤ c t} u(t, x) (유한 시간 대리값)"""

    if not c_probe > 0:
        raise ValidationError(f"c_probe 는 양수여야 합니다: {c_probe}")
    if not trace.floor_times:
        raise ValidationError("persistence floor 기록이 없는 trace 입니다")

    floor = math.inf
    for t, xs, running_min in zip(trace.floor_times, trace.floor_x, trace.floor_min):
        if xs.size == 0:
            continue
        idx = int(np.searchsorted(xs, c_probe * t, side="right")) - 1
        if idx < 0:
            continue
        floor = min(floor, float(running_min[idx]))
    return floor


def _trusted_start(state: State, grid: Grid) -> float:
    """floor 에 쓰는 구간의 왼쪽 끝 (window 이동 후에도 Dirichlet 경계와의 거리 유지)"""
    return max(0.0, state.origin - grid.x_min)


def _record_floor(
    trace: FrontTrace,
    t: float,
    x: np.ndarray,
    u: np.ndarray,
    x_start: float = 0.0,
    frozen: Tuple[np.ndarray, np.ndarray] = (np.empty(0), np.empty(0)),
) -> None:
    # node 0 은 Dirichlet 경계 (u = 0)
    start = max(1, int(np.searchsorted(x, x_start, side="left")))
    xs = np.concatenate((frozen[0], x[start:]))
    us = np.concatenate((frozen[1], u[start:]))
    if xs.size == 0:
        trace.floor_times.append(t)
        trace.floor_x.append(xs)
        trace.floor_min.append(us)
        return

    running = np.minimum.accumulate(us)
    stride = max(1, math.ceil(xs.size / FLOOR_POINTS))
    trace.floor_times.append(t)
    trace.floor_x.append(xs[::stride].copy())
    trace.floor_min.append(running[::stride].astype(np.float32))


# ============================================================
# 실행
# ============================================================


def run(
    grid: Grid,
    params: GrowthParams,
    traj: Trajectory,
    reaction: Optional[KppReaction] = None,
    theta: float = SimulationDefaults.THETA,
    u0: Optional[InitialBump] = None,
    sample_every: float = SimulationDefaults.SAMPLE_EVERY,
    scheme: str = "imex",
    moving_frame: bool = False,
    profile_every: Optional[int] = None,
) -> FrontTrace:
    """
    시간 T 까지 전진하며 front 추적

    Args:
        grid: 격자
        params, traj: 성장률 필드
        reaction: KPP 반응항 (기본 M = sup r)
        theta: front level
        u0: 초기값 (기본 [-1, 1] bump)
        sample_every: 샘플 간격 (시간)
        scheme: "imex" / "explicit"
        moving_frame: front 가 window 3/4 를 넘으면 window 이동
        profile_every: N 샘플마다 profile snapshot 저장

    Returns:
        FrontTrace
    """

    if not 0 < theta < 1:
        raise ValidationError(f"θ 는 (0, 1) 이어야 합니다: {theta}")
    check_step_bounds(grid, params, scheme)

    reaction = reaction or KppReaction.for_params(params)
    state = init(grid, u0)

    sample_stride = max(1, int(round(sample_every / grid.dt)))
    n_steps = grid.steps
    width = grid.x_max - grid.x_min
    guard = SimulationDefaults.BOUNDARY_GUARD

    trace = FrontTrace(theta=theta, T=n_steps * grid.dt)
    start_time = time.time()
    logger.info(
        f"시뮬레이션 시작 - nodes={grid.nodes}, steps={n_steps}, dx={grid.dx}, dt={grid.dt}, θ={theta}"
    )

    # window 밖으로 밀려난 node 의 마지막 값 (x 오름차순)
    frozen: Tuple[np.ndarray, np.ndarray] = (np.empty(0), np.empty(0))
    sample_count = 0
    for k in range(n_steps + 1):
        if k > 0:
            state = step(state, grid, params, traj, reaction, scheme)

            boundary_value = float(state.u[-2])
            if boundary_value >= guard:
                raise BoundaryContaminationError(state.t, boundary_value, guard)

        if k % sample_stride != 0 and k != n_steps:
            continue

        x = state.x(grid)
        u_max, u_min = float(state.u.max()), float(state.u.min())
        if u_max > 1.0 + OVERSHOOT or u_min < 0.0:
            raise LabRuntimeError(f"t={state.t} 에서 0 ≤ u ≤ 1 위반: min={u_min}, max={u_max}")
        trace.max_u = max(trace.max_u, u_max)

        front = front_position(x, state.u, theta)
        trace.times.append(state.t)
        trace.fronts.append(front)

        if state.t >= 0.5 * trace.T - 1e-9:
            _record_floor(trace, state.t, x, state.u, _trusted_start(state, grid), frozen)
        if profile_every and sample_count % profile_every == 0:
            trace.profiles.append((state.t, x.copy(), state.u.copy()))
        sample_count += 1

        if moving_frame and math.isfinite(front):
            old_start, u_sample = _trusted_start(state, grid), state.u
            state = _shift_window(state, grid, front, width)
            dropped = (x >= old_start) & (x < _trusted_start(state, grid))
            dropped[0] = False
            if dropped.any():
                frozen = (
                    np.concatenate((frozen[0], x[dropped])),
                    np.concatenate((frozen[1], u_sample[dropped])),
                )

    trace.fit_window = (0.5 * trace.T, trace.T)
    trace.fitted_speed, trace.fit_residual = fit_speed(trace, *trace.fit_window)
    trace.elapsed_seconds = time.time() - start_time

    logger.info(
        f"시뮬레이션 완료 - 속도 {trace.fitted_speed:.5f} (잔차 {trace.fit_residual:.2e}), "
        f"{trace.elapsed_seconds:.1f}초"
    )
    return trace


def _shift_window(state: State, grid: Grid, front: float, width: float) -> State:
    """front 가 window 의 3/4 를 넘으면 front 가 중앙에 오도록 node 단위 이동"""

    if front < state.origin + SimulationDefaults.FRAME_SHIFT_FRACTION * width:
        return state

    shift = int((front - state.origin - 0.5 * width) / grid.dx)
    if shift <= 0:
        return state

    u = np.concatenate((state.u[shift:], np.zeros(shift)))
    u[0] = 0.0
    logger.debug(f"moving frame 이동: {shift} nodes (t={state.t:.2f})")
    return State(state.t, u, state.origin + shift * grid.dx)
