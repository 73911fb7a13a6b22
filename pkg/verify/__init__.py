# Verify Module
# 속도 곡선 / Corollary / 진동 실험, 상위해·하위해 검증

from .scenarios import (
    SimSettings,
    SweepPoint,
    SweepTable,
    CorollaryVerdict,
    OscillationReport,
    sweep_speed_curve,
    sweep_summary,
    corollary_bounds,
    oscillation_experiment,
)
from .supersolution import (
    SuperSolutionSpec,
    SuperSolutionReport,
    build_step1,
    build_step2,
    check_supersolution,
)
from .subsolution import (
    SubSolutionSpec,
    SubSolutionReport,
    InterfaceTrace,
    build_subsolution_spec,
    check_subsolution,
    solve_interface,
)

__all__ = [
    "SimSettings",
    "SweepPoint",
    "SweepTable",
    "CorollaryVerdict",
    "OscillationReport",
    "sweep_speed_curve",
    "sweep_summary",
    "corollary_bounds",
    "oscillation_experiment",
    "SuperSolutionSpec",
    "SuperSolutionReport",
    "build_step1",
    "build_step2",
    "check_supersolution",
    "SubSolutionSpec",
    "SubSolutionReport",
    "InterfaceTrace",
    "build_subsolution_spec",
    "check_subsolution",
    "solve_interface",
]
