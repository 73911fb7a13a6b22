"""
성장률 필드 / patch 궤적 / KPP 반응항
=====================================
모든 모듈이 점별로 평가하는 문제 데이터

- GrowthParams: r1 (patch 뒤), r2 (patch 안), r3 (patch 앞), patch 길이 L
- Trajectory: patch 왼쪽 끝 A(t) (Linear / SlowOscillation / PiecewiseLinear)
- StepProfile: 계단형 성장률 m(y) (고유값 문제용, y 단위)
- KppReaction: 로지스틱 f(t,x,u) = r(t,x)·u·(1-u), M = sup r

사용법:
    params = GrowthParams(1.0, 9.0, 4.0, 1.0)
    traj = Trajectory.linear(2.0)
    eval_r(params, traj, 1.0, 2.5)   # 9.0 (patch [2, 3) 내부)
"""

from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

import numpy as np

from utils.errors import ValidationError


ArrayLike = Union[float, np.ndarray]


# ============================================================
# 성장률 파라미터
# ============================================================


@dataclass(frozen=True)
class GrowthParams:
    """두 경계(two-interface) 성장률 파라미터"""

    r1: float
    r2: float
    r3: float
    L: float

    def __post_init__(self):
        for name in ("r1", "r2", "r3", "L"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ValidationError(f"{name} 는 양수여야 합니다: {value}")

    @property
    def r_max_outer(self) -> float:
        """max(r1, r3)"""
        return max(self.r1, self.r3)

    @property
    def sup_rate(self) -> float:
        """M = sup r"""
        return max(self.r1, self.r2, self.r3)

    def require_two_interface(self) -> "GrowthParams":
        """two-interface 이론의 표준 가정 r2 > max(r1, r3) 확인"""
        if not self.r2 > self.r_max_outer:
            raise ValidationError(
                f"r2 > max(r1, r3) 가 필요합니다: r2={self.r2}, max={self.r_max_outer}"
            )
        return self

    def swapped(self) -> "GrowthParams":
        """r1 <-> r3 교환"""
        return GrowthParams(self.r3, self.r2, self.r1, self.L)

    def with_length(self, L: float) -> "GrowthParams":
        return GrowthParams(self.r1, self.r2, self.r3, L)

    def profile(self) -> "StepProfile":
        """y 단위 계단 프로파일 m(y) = r1 1{y<0} + r2 1{0≤y<1} + r3 1{y≥1}"""
        return StepProfile((0.0, 1.0), (self.r1, self.r2, self.r3))


# ============================================================
# patch 궤적 A(t)
# ============================================================


@dataclass(frozen=True)
class Trajectory:
    """
    patch 왼쪽 끝 궤적 A(t)

    구간별 선형: switch_times[k-1] ≤ t < switch_times[k] 에서 기울기 slopes[k]
    (마지막 기울기는 마지막 switch 이후 계속 유지), A(0) = 0
    """

    kind: str
    slopes: Tuple[float, ...]
    switch_times: Tuple[float, ...] = ()
    _knots: Tuple[float, ...] = field(default=(), repr=False, compare=False)

    LINEAR = "Linear"
    SLOW_OSCILLATION = "SlowOscillation"
    PIECEWISE_LINEAR = "PiecewiseLinear"

    def __post_init__(self):
        if self.kind not in (self.LINEAR, self.SLOW_OSCILLATION, self.PIECEWISE_LINEAR):
            raise ValidationError(f"알 수 없는 궤적 종류: {self.kind}")
        if len(self.slopes) != len(self.switch_times) + 1:
            raise ValidationError("slopes 개수는 switch_times 개수 + 1 이어야 합니다")
        if any(not np.isfinite(s) or s < 0 for s in self.slopes):
            raise ValidationError(f"기울기는 0 이상이어야 합니다 (A 비감소): {self.slopes}")
        times = (0.0,) + tuple(self.switch_times)
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValidationError(f"switch_times 는 0 보다 크고 순증가해야 합니다: {self.switch_times}")

        # 각 switch 시점의 A 값 (연속 누적)
        knots = [0.0]
        for k, t_k in enumerate(self.switch_times):
            knots.append(knots[-1] + self.slopes[k] * (t_k - times[k]))
        object.__setattr__(self, "_knots", tuple(knots))

    # ------------------------------------------------------------
    # 생성자
    # ------------------------------------------------------------

    @classmethod
    def linear(cls, cA: float) -> "Trajectory":
        if not cA > 0:
            raise ValidationError(f"cA 는 양수여야 합니다: {cA}")
        return cls(cls.LINEAR, (float(cA),))

    @classmethod
    def slow_oscillation(cls, cA1: float, cA2: float, switch_times: Sequence[float]) -> "Trajectory":
        """[t2n, t2n+1) 에서 cA1, [t2n+1, t2n+2) 에서 cA2 (t0 = 0 은 목록에서 생략)"""
        if not 0 < cA1 < cA2:
            raise ValidationError(f"0 < cA1 < cA2 가 필요합니다: cA1={cA1}, cA2={cA2}")
        times = tuple(float(t) for t in switch_times)
        slopes = tuple(float(cA1) if k % 2 == 0 else float(cA2) for k in range(len(times) + 1))
        return cls(cls.SLOW_OSCILLATION, slopes, times)

    @classmethod
    def piecewise_linear(cls, switch_times: Sequence[float], slopes: Sequence[float]) -> "Trajectory":
        return cls(
            cls.PIECEWISE_LINEAR,
            tuple(float(s) for s in slopes),
            tuple(float(t) for t in switch_times),
        )

    # ------------------------------------------------------------
    # 조회
    # ------------------------------------------------------------

    @property
    def cA(self) -> float:
        """Linear 궤적 속도"""
        if self.kind != self.LINEAR:
            raise ValidationError(f"{self.kind} 궤적에는 단일 cA 가 없습니다")
        return self.slopes[0]

    @property
    def cA1(self) -> float:
        return self.slopes[0]

    @property
    def cA2(self) -> float:
        return self.slopes[1] if len(self.slopes) > 1 else self.slopes[0]

    @property
    def max_slope(self) -> float:
        return max(self.slopes)

    def position(self, t: ArrayLike) -> ArrayLike:
        """A(t) (배열 입력 지원)"""
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < 0):
            raise ValidationError(f"t 는 0 이상이어야 합니다: {t}")

        times = np.concatenate(([0.0], np.asarray(self.switch_times, dtype=float)))
        idx = np.searchsorted(times, t_arr, side="right") - 1
        knots = np.asarray(self._knots)
        slopes = np.asarray(self.slopes)
        value = knots[idx] + slopes[idx] * (t_arr - times[idx])
        return float(value) if value.ndim == 0 else value

    def to_dict(self) -> dict:
        data = {"type": self.kind}
        if self.kind == self.LINEAR:
            data["cA"] = self.cA
        elif self.kind == self.SLOW_OSCILLATION:
            data.update(cA1=self.cA1, cA2=self.cA2, switch_times=list(self.switch_times))
        else:
            data.update(switch_times=list(self.switch_times), slopes=list(self.slopes))
        return data


# ============================================================
# 계단형 성장률 m(y)
# ============================================================


@dataclass(frozen=True)
class StepProfile:
    """
    구간별 상수 성장률

    values[0] (y < b0), values[i] (b_{i-1} ≤ y < b_i), values[-1] (y ≥ b_last)
    """

    breakpoints: Tuple[float, ...]
    values: Tuple[float, ...]

    def __post_init__(self):
        b = tuple(float(v) for v in self.breakpoints)
        v = tuple(float(x) for x in self.values)
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "values", v)

        if len(v) != len(b) + 1:
            raise ValidationError("values 개수는 breakpoints 개수 + 1 이어야 합니다")
        if any(y <= x for x, y in zip(b, b[1:])):
            raise ValidationError(f"breakpoints 는 순증가해야 합니다: {b}")
        if any(not np.isfinite(x) or x <= 0 for x in v):
            raise ValidationError(f"성장률 값은 양의 유한값이어야 합니다: {v}")

    @classmethod
    def constant(cls, r: float) -> "StepProfile":
        return cls((), (r,))

    @classmethod
    def heaviside(cls, r_left: float, r_right: float, at: float = 0.0) -> "StepProfile":
        return cls((at,), (r_left, r_right))

    @property
    def left_value(self) -> float:
        """m(-∞)"""
        return self.values[0]

    @property
    def right_value(self) -> float:
        """m(+∞)"""
        return self.values[-1]

    @property
    def sup(self) -> float:
        return max(self.values)

    @property
    def extent(self) -> float:
        """max |breakpoint| (상수 프로파일이면 0)"""
        return max((abs(x) for x in self.breakpoints), default=0.0)

    def shifted(self, c: float) -> "StepProfile":
        """m + c"""
        return StepProfile(self.breakpoints, tuple(v + c for v in self.values))

    def __call__(self, y: ArrayLike) -> ArrayLike:
        """점별 값 (반열린 구간 규칙)"""
        y_arr = np.asarray(y, dtype=float)
        idx = np.searchsorted(np.asarray(self.breakpoints), y_arr, side="right")
        value = np.asarray(self.values)[idx]
        return float(value) if value.ndim == 0 else value

    def cell_average(self, y: np.ndarray, h: float) -> np.ndarray:
        """[y - h/2, y + h/2] 구간 평균 (점프를 포함하는 셀은 길이 비율로 혼합)"""
        y_arr = np.asarray(y, dtype=float)
        avg = np.full_like(y_arr, self.values[0])
        for b, jump in zip(self.breakpoints, np.diff(self.values)):
            avg += jump * np.clip((y_arr + 0.5 * h - b) / h, 0.0, 1.0)
        return avg


# ============================================================
# KPP 반응항
# ============================================================


@dataclass(frozen=True)
class KppReaction:
    """로지스틱 반응항 r·u·(1-u) (K ≡ 1), M 은 검증 허용오차용 상수"""

    M: float

    def __post_init__(self):
        if not self.M > 0:
            raise ValidationError(f"M 은 양수여야 합니다: {self.M}")

    @classmethod
    def for_params(cls, params: GrowthParams) -> "KppReaction":
        return cls(M=params.sup_rate)

    def rate(self, r: ArrayLike, u: ArrayLike) -> ArrayLike:
        return r * u * (1.0 - u)

    def lower_bound(self, r: ArrayLike, u: ArrayLike) -> ArrayLike:
        """r·u - M·u² (f 의 KPP 하한)"""
        return r * u - self.M * u * u


# ============================================================
# 점별 평가 함수
# ============================================================


def eval_A(traj: Trajectory, t: ArrayLike) -> ArrayLike:
    """patch 왼쪽 끝 위치"""
    return traj.position(t)


def eval_r(params: GrowthParams, traj: Trajectory, t: float, x: ArrayLike) -> ArrayLike:
    """r1 (x < A), r2 (A ≤ x < A + L), r3 (그 외)"""
    a = traj.position(t)
    x_arr = np.asarray(x, dtype=float)
    r = np.where(x_arr < a, params.r1, np.where(x_arr < a + params.L, params.r2, params.r3))
    return float(r) if r.ndim == 0 else r


def eval_reaction(reaction: KppReaction, r: ArrayLike, u: ArrayLike) -> ArrayLike:
    """f = r·u·(1-u)"""
    if np.any(np.asarray(u) < 0):
        raise ValidationError("u 는 0 이상이어야 합니다")
    return reaction.rate(r, u)
