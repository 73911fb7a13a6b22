# Sim Module
# IMEX 유한차분 솔버, front 추적, 속도 추정

from .solver import Grid, State, InitialBump, init, step, rate_on_grid, check_step_bounds
from .tracking import (
    FrontTrace,
    run,
    front_position,
    fit_speed,
    persistence_floor,
)

__all__ = [
    "Grid",
    "State",
    "InitialBump",
    "init",
    "step",
    "rate_on_grid",
    "check_step_bounds",
    "FrontTrace",
    "run",
    "front_position",
    "fit_speed",
    "persistence_floor",
]
