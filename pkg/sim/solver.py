"""
Fisher-KPP 유한차분 솔버
=====================================
∂t u = ∂xx u + r(t,x) u (1 - u),  양끝 u = 0 (Dirichlet)

IMEX 1 step:
    (I - dt D2) u^{n+1} = u^n + dt · r(t + dt/2, x) u^n (1 - u^n)
    D2: 2차 중심차분, 삼중대각 solve (scipy.linalg.solve_banded)

explicit 참조 scheme (dt ≤ dx²/2):
    u^{n+1} = u^n + dt (D2 u^n + r u^n (1 - u^n))

사용법:
    grid = Grid.for_scenario(params, traj, T=200.0)
    state = init(grid)
    state = step(state, grid, params, traj)
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, solve_banded

from config.constants import SimulationDefaults
from model.growth import GrowthParams, KppReaction, Trajectory
from utils.errors import LabRuntimeError, ValidationError


# ============================================================
# 격자 / 상태
# ============================================================


@dataclass(frozen=True)
class Grid:
    """공간/시간 격자 (node 수 = round((x_max - x_min)/dx) + 1)"""

    x_min: float
    x_max: float
    dx: float
    dt: float
    T: float

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValidationError(f"x_min < x_max 가 필요합니다: {self.x_min}, {self.x_max}")
        for name in ("dx", "dt", "T"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} 는 양수여야 합니다: {getattr(self, name)}")
        if self.nodes < 5:
            raise ValidationError(f"격자 node 가 너무 적습니다: {self.nodes}")

    @classmethod
    def for_scenario(
        cls,
        params: GrowthParams,
        traj: Trajectory,
        T: float,
        dx: float = SimulationDefaults.DX,
        dt: float = SimulationDefaults.DT,
        left_margin: float = SimulationDefaults.LEFT_MARGIN,
        right_margin: float = SimulationDefaults.RIGHT_MARGIN,
    ) -> "Grid":
        """최대 전파 거리 2√(sup r)·T 와 patch 앞끝 A(T)+L 을 덮는 영역"""
        reach = max(2.0 * math.sqrt(params.sup_rate) * T, traj.position(T) + params.L)
        return cls(-left_margin, reach + right_margin, dx, dt, T)

    @property
    def nodes(self) -> int:
        return int(round((self.x_max - self.x_min) / self.dx)) + 1

    @property
    def steps(self) -> int:
        return int(round(self.T / self.dt))

    def coordinates(self, origin: Optional[float] = None) -> np.ndarray:
        start = self.x_min if origin is None else origin
        return start + self.dx * np.arange(self.nodes)


@dataclass
class State:
    """시각 t 의 해 (origin: 첫 node 위치, moving frame 에서 이동)"""

    t: float
    u: np.ndarray
    origin: float

    def x(self, grid: Grid) -> np.ndarray:
        return grid.coordinates(self.origin)


@dataclass(frozen=True)
class InitialBump:
    """초기값: [center - half_width, center + half_width] 에서 height, 그 외 0"""

    center: float = 0.0
    half_width: float = SimulationDefaults.BUMP_HALF_WIDTH
    height: float = SimulationDefaults.BUMP_HEIGHT

    def __post_init__(self):
        if not 0 < self.height <= 1:
            raise ValidationError(f"초기값 높이는 (0, 1] 이어야 합니다 (u0 ≢ 0, u0 ≤ 1): {self.height}")
        if not self.half_width > 0:
            raise ValidationError(f"half_width 는 양수여야 합니다: {self.half_width}")

    def sample(self, x: np.ndarray, dx: float) -> np.ndarray:
        inside = np.abs(x - self.center) <= self.half_width + 1e-9 * dx
        return np.where(inside, self.height, 0.0)


def init(grid: Grid, u0_spec: Optional[InitialBump] = None) -> State:
    """
    초기 상태 (node 샘플링)

    지지 구간이 영역 내부 (양끝 Dirichlet node 제외) 에 있어야 함
    """

    spec = u0_spec or InitialBump()
    if not isinstance(spec, InitialBump):
        raise ValidationError(f"지원하지 않는 초기값 형식: {type(spec).__name__}")

    lo, hi = spec.center - spec.half_width, spec.center + spec.half_width
    if not (grid.x_min + grid.dx <= lo and hi <= grid.x_max - grid.dx):
        raise ValidationError(
            f"초기값 지지 [{lo}, {hi}] 가 영역 ({grid.x_min}, {grid.x_max}) 내부에 있어야 합니다"
        )

    x = grid.coordinates()
    u = spec.sample(x, grid.dx)
    if not np.any(u > 0):
        raise ValidationError("초기값이 격자에서 0 입니다 (half_width 가 dx 보다 작음)")

    return State(0.0, u, grid.x_min)


# ============================================================
# 성장률 / 확산 행렬
# ============================================================


def rate_on_grid(params: GrowthParams, traj: Trajectory, t: float, x: np.ndarray) -> np.ndarray:
    """r(t, x) (x 정렬 가정, searchsorted 로 두 점프 위치 계산)"""
    a = traj.position(t)
    i_a, i_b = np.searchsorted(x, [a, a + params.L], side="left")
    r = np.full(x.shape, params.r3)
    r[:i_a] = params.r1
    r[i_a:i_b] = params.r2
    return r


@lru_cache(maxsize=8)
def _implicit_band(nodes: int, dx: float, dt: float) -> np.ndarray:
    """I - dt D2 (내부 node) 의 banded 형식 (3, nodes - 2)"""
    inner = nodes - 2
    coef = dt / (dx * dx)
    ab = np.empty((3, inner))
    ab[0, :] = -coef
    ab[1, :] = 1.0 + 2.0 * coef
    ab[2, :] = -coef
    ab[0, 0] = 0.0
    ab[2, -1] = 0.0
    ab.setflags(write=False)
    return ab


def check_step_bounds(grid: Grid, params: GrowthParams, scheme: str) -> None:
    """순서 보존/상한 조건: dt · sup r ≤ 1, explicit 은 dt ≤ dx²/2 추가"""

    if grid.dt * params.sup_rate > 1.0:
        raise ValidationError(
            f"dt · sup r ≤ 1 이 필요합니다 (반응항 단조성): dt={grid.dt}, sup r={params.sup_rate}"
        )
    if scheme == "explicit" and grid.dt > 0.5 * grid.dx ** 2:
        raise ValidationError(f"explicit scheme 은 dt ≤ dx²/2 가 필요합니다: dt={grid.dt}, dx={grid.dx}")
    if scheme not in ("imex", "explicit"):
        raise ValidationError(f"알 수 없는 scheme: {scheme}")


# ============================================================
# 시간 전진
# ============================================================


def step(
    state: State,
    grid: Grid,
    params: GrowthParams,
    traj: Trajectory,
    reaction: Optional[KppReaction] = None,
    scheme: str = "imex",
) -> State:
    """한 step 전진 (양끝 0)"""

    if state.u.shape != (grid.nodes,):
        raise ValidationError(f"상태 크기 {state.u.shape} 가 격자 node 수 {grid.nodes} 와 다릅니다")

    reaction = reaction or KppReaction.for_params(params)
    x = state.x(grid)
    u = state.u
    dt = grid.dt

    r = rate_on_grid(params, traj, state.t + 0.5 * dt, x[1:-1])
    growth = reaction.rate(r, u[1:-1])

    new_u = np.zeros_like(u)
    if scheme == "imex":
        rhs = u[1:-1] + dt * growth
        try:
            inner = solve_banded(
                (1, 1),
                _implicit_band(grid.nodes, grid.dx, dt),
                rhs,
                overwrite_b=True,
                check_finite=False,
            )
        except (LinAlgError, ValueError) as e:
            raise LabRuntimeError(f"삼중대각 solve 실패 (내부 오류): {e}")
        new_u[1:-1] = np.maximum(inner, 0.0)
    elif scheme == "explicit":
        lap = (u[:-2] - 2.0 * u[1:-1] + u[2:]) / (grid.dx * grid.dx)
        new_u[1:-1] = u[1:-1] + dt * (lap + growth)
    else:
        raise ValidationError(f"알 수 없는 scheme: {scheme}")

    return State(state.t + dt, new_u, state.origin)
