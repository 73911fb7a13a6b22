# Model Module
# 성장률 필드, patch 궤적, KPP 반응항

from .growth import (
    GrowthParams,
    Trajectory,
    StepProfile,
    KppReaction,
    eval_A,
    eval_r,
    eval_reaction,
)
from .scenario import ScenarioConfig, TrajectoryConfig

__all__ = [
    "GrowthParams",
    "Trajectory",
    "StepProfile",
    "KppReaction",
    "eval_A",
    "eval_r",
    "eval_reaction",
    "ScenarioConfig",
    "TrajectoryConfig",
]
