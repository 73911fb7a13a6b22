"""
시나리오 설정 (JSON)
=====================================
모델 JSON 파일 파싱

형식:
    {
      "r1": 1, "r2": 9, "r3": 1,
      "L": 0.589463,            # 또는 "lambda1": -4
      "trajectory": {"type": "Linear", "cA": 3}
    }

trajectory.type:
- Linear: cA
- SlowOscillation: cA1, cA2, switch_times (t0 = 0 제외)
- PiecewiseLinear: switch_times, slopes (len(slopes) = len(switch_times) + 1)
"""

import json
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from dataclasses_json import dataclass_json

from model.growth import GrowthParams, KppReaction, Trajectory
from utils.errors import ValidationError


@dataclass_json
@dataclass
class TrajectoryConfig:
    """궤적 설정"""

    type: str = Trajectory.LINEAR
    cA: Optional[float] = None
    cA1: Optional[float] = None
    cA2: Optional[float] = None
    switch_times: List[float] = field(default_factory=list)
    slopes: List[float] = field(default_factory=list)

    def build(self) -> Trajectory:
        if self.type == Trajectory.LINEAR:
            if self.cA is None:
                raise ValidationError("Linear 궤적에는 cA 가 필요합니다")
            return Trajectory.linear(self.cA)

        if self.type == Trajectory.SLOW_OSCILLATION:
            if self.cA1 is None or self.cA2 is None:
                raise ValidationError("SlowOscillation 궤적에는 cA1, cA2 가 필요합니다")
            return Trajectory.slow_oscillation(self.cA1, self.cA2, self.switch_times)

        if self.type == Trajectory.PIECEWISE_LINEAR:
            return Trajectory.piecewise_linear(self.switch_times, self.slopes)

        raise ValidationError(f"알 수 없는 궤적 종류: {self.type}")


@dataclass_json
@dataclass
class ScenarioConfig:
    """모델 시나리오 설정"""

    r1: float
    r2: float
    r3: float
    trajectory: TrajectoryConfig
    L: Optional[float] = None
    lambda1: Optional[float] = None

    @classmethod
    def load(cls, path: str) -> "ScenarioConfig":
        """JSON 파일 로드 (I/O, 형식 오류는 ValidationError)"""

        try:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise ValidationError(f"설정 파일을 읽을 수 없습니다: {path} ({e.strerror})")

        return cls.parse(text)

    @classmethod
    def parse(cls, text: str) -> "ScenarioConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValidationError(f"설정 JSON 형식 오류: {e}")

        if not isinstance(data, dict):
            raise ValidationError("설정 JSON 최상위는 객체여야 합니다")

        missing = [k for k in ("r1", "r2", "r3", "trajectory") if k not in data]
        if missing:
            raise ValidationError(f"필수 설정 키가 없습니다: {missing}")

        try:
            return cls.from_dict(data)
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"설정 값 오류: {e}")

    def build(self) -> Tuple[GrowthParams, Trajectory, KppReaction]:
        """(GrowthParams, Trajectory, KppReaction) 생성"""

        if (self.L is None) == (self.lambda1 is None):
            raise ValidationError("L 과 lambda1 중 정확히 하나를 지정해야 합니다")

        if self.L is not None:
            params = GrowthParams(self.r1, self.r2, self.r3, self.L)
        else:
            from eigen.analytic import resolve_length

            L = resolve_length(self.r1, self.r2, self.r3, lambda1=self.lambda1)
            params = GrowthParams(self.r1, self.r2, self.r3, L)

        traj = self.trajectory.build()
        return params, traj, KppReaction.for_params(params)
