# Config Module
# 수치 상수 및 실행 설정 관리

from .constants import (
    EigenTolerances,
    SimulationDefaults,
    ScenarioDefaults,
    SubSolutionRecipe,
    OptimizerDefaults,
    Regime,
    EigenCase,
    SystemConfig,
)
from .settings import LabSettings, get_settings

__all__ = [
    'EigenTolerances',
    'SimulationDefaults',
    'ScenarioDefaults',
    'SubSolutionRecipe',
    'OptimizerDefaults',
    'Regime',
    'EigenCase',
    'SystemConfig',
    'LabSettings',
    'get_settings',
]
