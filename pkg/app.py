"""
KPP 이동 patch 전파 속도 실험 CLI
=====================================
이동하는 좋은 환경(patch) 위 Fisher-KPP 전선의 전파 속도 계산 / 시뮬레이션 / 검증

주요 기능:
- eigen: 주 고유값 λ₁ 과 고유함수 φ₁
- predict: regime 및 전파 속도 c* 예측 (cA / λ₁ sweep)
- simulate: IMEX 유한차분 시뮬레이션과 front 속도
- verify: sweep | corollary | oscillate | supersub | interface
- optimize: 높이/질량 예산 아래 bang-bang patch 최적화

사용법:
    python app.py predict --r1 1 --r2 9 --r3 1 --lambda1 -4 --cA 3
    python app.py eigen --r1 1 --r2 9 --r3 4 --L 0.895353 --emit-eigenfunction
    python app.py simulate --config scenario.json --T 300 --emit-trace

환경 변수 (.env.example 참고):
    - LAB_JOBS, LAB_OUT_DIR, LAB_LOG_LEVEL, LAB_LOG_FILE

종료 코드: 0 성공 / 1 입력 오류 / 2 계산 실패
"""

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.constants import ScenarioDefaults, SimulationDefaults, SubSolutionRecipe, SystemConfig
from config.settings import LabSettings, get_settings
from eigen.analytic import lambda1_analytic, resolve_length
from eigen.eigenfunction import eigenfunction
from eigen.truncated import lambda1_numeric
from model.growth import GrowthParams, Trajectory
from model.scenario import ScenarioConfig
from optimize.bang_bang import Budget, brute_force_optimum, is_contiguous, local_search
from sim.solver import Grid
from sim.tracking import run
from speed.predictor import (
    predict_single_transition,
    predict_two_interface,
    sweep_cA,
    sweep_lambda1,
)
from utils.errors import LabError, LabRuntimeError, ValidationError
from utils.logger import configure_logging, get_logger
from utils.run_manifest import OutputWriter, render_json
from verify.scenarios import (
    SimSettings,
    corollary_bounds,
    oscillation_experiment,
    sweep_speed_curve,
    sweep_summary,
)
from verify.subsolution import build_subsolution_spec, check_subsolution, solve_interface
from verify.supersolution import build_step1, build_step2, check_supersolution


logger = get_logger("kpp_patch_lab")

VERIFY_MODES = ("sweep", "corollary", "oscillate", "supersub", "interface")


# ============================================================
# 인자 파서
# ============================================================


class LabArgumentParser(argparse.ArgumentParser):
    """usage 출력 후 ValidationError (종료 코드 1)"""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ValidationError(f"{self.prog}: {message}")


def _range_spec(text: str) -> Tuple[float, float, int]:
    """"lo:hi:n" 형식"""
    try:
        lo, hi, n = text.split(":")
        return float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"lo:hi:n 형식이어야 합니다: {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"쉼표로 구분된 숫자 목록이어야 합니다: {text!r}")


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r1", type=float, help="patch 뒤쪽 성장률")
    parser.add_argument("--r2", type=float, help="patch 안 성장률")
    parser.add_argument("--r3", type=float, help="patch 앞쪽 성장률")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--L", type=float, help="patch 길이")
    group.add_argument("--lambda1", type=float, help="목표 λ₁ (L 을 역산)")


def _add_sim(parser: argparse.ArgumentParser, default_T: float) -> None:
    parser.add_argument("--T", type=float, default=default_T, help="시뮬레이션 시간")
    parser.add_argument("--dx", type=float, default=SimulationDefaults.DX)
    parser.add_argument("--dt", type=float, default=SimulationDefaults.DT)
    parser.add_argument("--theta", type=float, default=SimulationDefaults.THETA, help="front level")
    parser.add_argument("--scheme", choices=("imex", "explicit"), default="imex")


def build_parser() -> argparse.ArgumentParser:
    parser = LabArgumentParser(prog="app.py", description="KPP 이동 patch 전파 속도 실험")
    parser.add_argument("--out-dir", default=None, help="출력 디렉토리 (기본 LAB_OUT_DIR)")
    parser.add_argument("--jobs", type=int, default=None, help="동시 실행 수 (기본 LAB_JOBS)")
    parser.add_argument("--log-level", default=None, help="로그 레벨 (기본 LAB_LOG_LEVEL)")
    parser.add_argument("--log-file", default=None, help="로그 파일 (기본 LAB_LOG_FILE)")

    sub = parser.add_subparsers(dest="command", parser_class=LabArgumentParser)
    sub.required = True

    # eigen
    p = sub.add_parser("eigen", help="주 고유값 λ₁")
    _add_params(p)
    p.add_argument("--numeric", action="store_true", help="절단 Dirichlet R-ladder 로 계산")
    p.add_argument("--emit-eigenfunction", action="store_true", help="eigenfunction.csv 기록")

    # predict
    p = sub.add_parser("predict", help="regime 과 c* 예측")
    _add_params(p)
    p.add_argument("--cA", type=float, help="patch 속도")
    p.add_argument("--single-transition", action="store_true", help="r1 | r3 단일 전이 (r2, L 불필요)")
    p.add_argument("--sweep", type=_range_spec, help="cA 범위 lo:hi:n")
    p.add_argument("--sweep-lambda1", type=_range_spec, help="λ₁ 범위 lo:hi:n (고정 cA)")

    # simulate
    p = sub.add_parser("simulate", help="PDE 시뮬레이션")
    _add_params(p)
    p.add_argument("--config", help="시나리오 JSON")
    p.add_argument("--cA", type=float, help="Linear 궤적 속도 (--config 없을 때)")
    _add_sim(p, 200.0)
    p.add_argument("--moving-frame", action="store_true")
    p.add_argument("--emit-trace", action="store_true", help="trace.csv 기록")
    p.add_argument("--emit-profile-every", type=int, default=None, help="N 샘플마다 profiles.csv 기록")

    # verify
    p = sub.add_parser("verify", help="검증 시나리오")
    p.add_argument("mode", choices=VERIFY_MODES)
    _add_params(p)
    p.add_argument("--config", help="시나리오 JSON (corollary)")
    p.add_argument("--cA", type=float, help="patch 속도")
    p.add_argument("--c", type=float, default=None, help="상위해/하위해 속도 c (기본 레시피)")
    p.add_argument("--cA-grid", type=_float_list, default=[1.0, 3.0, 5.0, 6.0], help="sweep cA 목록")
    p.add_argument("--predictions-only", action="store_true", help="sweep 에서 시뮬레이션 생략")
    p.add_argument("--cA1", type=float)
    p.add_argument("--cA2", type=float)
    p.add_argument("--switch-times", type=_float_list, default=list(ScenarioDefaults.SWITCH_TIMES))
    p.add_argument("--iota", type=float, default=1.0)
    p.add_argument("--gamma-scale", type=float, default=1.0)
    p.add_argument("--t-max", type=float, default=SubSolutionRecipe.TIME_HORIZON)
    p.add_argument("--t-samples", type=int, default=SubSolutionRecipe.TIME_SAMPLES)
    _add_sim(p, ScenarioDefaults.HORIZON)

    # optimize
    p = sub.add_parser("optimize", help="bang-bang patch 최적화")
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--h", type=float, required=True, help="높이 상한 (L∞)")
    p.add_argument("--A", type=float, required=True, help="질량 상한 (L¹)")
    p.add_argument("--W", type=float, required=True, help="window 폭")
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--method", choices=("brute", "local", "relaxed"), default="brute")
    p.add_argument("--seed", type=int, default=0)

    return parser


# ============================================================
# 공통 도우미
# ============================================================


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise ValidationError(f"{args.command}: 필수 인자 누락 {', '.join(missing)}")


def _params(args: argparse.Namespace) -> GrowthParams:
    _require(args, "r1", "r2", "r3")
    if args.L is None and args.lambda1 is None:
        raise ValidationError(f"{args.command}: --L 또는 --lambda1 이 필요합니다")
    L = resolve_length(args.r1, args.r2, args.r3, L=args.L, lambda1=args.lambda1)
    return GrowthParams(args.r1, args.r2, args.r3, L)


def _params_config(params: GrowthParams, args: argparse.Namespace) -> Dict[str, Any]:
    config = {"r1": params.r1, "r2": params.r2, "r3": params.r3, "L": params.L}
    if getattr(args, "lambda1", None) is not None:
        config["lambda1_target"] = args.lambda1
    return config


def _sim_settings(args: argparse.Namespace, jobs: int) -> SimSettings:
    return SimSettings(T=args.T, dx=args.dx, dt=args.dt, theta=args.theta, scheme=args.scheme, jobs=jobs)


def _scenario(args: argparse.Namespace) -> Tuple[GrowthParams, Trajectory, Dict[str, Any]]:
    """--config 또는 명령행 인자에서 (params, 궤적, 설정)"""

    if args.config:
        scenario = ScenarioConfig.load(args.config)
        params, traj, _ = scenario.build()
        config = scenario.to_dict()
        config["L"] = params.L
        return params, traj, config

    params = _params(args)
    _require(args, "cA")
    traj = Trajectory.linear(args.cA)
    config = _params_config(params, args)
    config["trajectory"] = traj.to_dict()
    return params, traj, config


# ============================================================
# 명령 처리
# ============================================================


def cmd_eigen(args: argparse.Namespace, settings: LabSettings) -> Tuple[OutputWriter, Dict[str, Any]]:
    params = _params(args)
    result = lambda1_numeric(params) if args.numeric else lambda1_analytic(params)
    payload = result.to_dict()

    writer = OutputWriter(settings.out_dir, "eigen", {**_params_config(params, args), "numeric": args.numeric})
    if result.method == "analytic":
        phi = eigenfunction(params, result)
        payload["matching_errors"] = phi.matching_errors()
        if args.emit_eigenfunction:
            y = np.linspace(-2.0, 3.0, 501)
            writer.add_csv("eigenfunction.csv", ["y", "phi", "dphi"], zip(y, phi.value(y), phi.derivative(y)))
    elif args.emit_eigenfunction:
        raise ValidationError("--emit-eigenfunction 은 해석적 경로에서만 가능합니다 (--numeric 제외)")

    writer.add_json("eigen.json", payload)
    return writer, payload


def cmd_predict(args: argparse.Namespace, settings: LabSettings) -> Tuple[OutputWriter, Dict[str, Any]]:
    if args.sweep_lambda1 is not None:
        _require(args, "r1", "r2", "r3", "cA")
        lo, hi, n = args.sweep_lambda1
        rows = sweep_lambda1(args.r1, args.r2, args.r3, args.cA, lo, hi, n)
        config = {"r1": args.r1, "r2": args.r2, "r3": args.r3, "cA": args.cA, "sweep_lambda1": [lo, hi, n]}
        writer = OutputWriter(settings.out_dir, "predict", config)
        writer.add_csv(
            "predict_sweep_lambda1.csv",
            ["lambda1", "regime", "c_star"],
            [[p.lambda1, p.regime.value, p.c_star] for p in rows],
        )
        payload = {"points": len(rows), "cA": args.cA}
        writer.add_json("predict.json", payload)
        return writer, payload

    if args.single_transition:
        _require(args, "r1", "r3", "cA")
        prediction = predict_single_transition(args.r1, args.r3, args.cA)
        writer = OutputWriter(settings.out_dir, "predict", {"r1": args.r1, "r3": args.r3, "cA": args.cA})
        payload = prediction.to_dict()
        writer.add_json("predict.json", payload)
        return writer, payload

    params = _params(args)
    config = _params_config(params, args)
    lam1 = lambda1_analytic(params.require_two_interface()).lambda1

    if args.sweep is not None:
        lo, hi, n = args.sweep
        rows = sweep_cA(params, lo, hi, n, lam1)
        writer = OutputWriter(settings.out_dir, "predict", {**config, "sweep": [lo, hi, n]})
        writer.add_csv("predict_sweep.csv", ["cA", "regime", "c_star"], [[p.cA, p.regime.value, p.c_star] for p in rows])
        payload = {"lambda1": lam1, "points": len(rows), "thresholds": list(rows[0].thresholds)}
        writer.add_json("predict.json", payload)
        return writer, payload

    _require(args, "cA")
    payload = predict_two_interface(params, args.cA, lam1).to_dict()
    writer = OutputWriter(settings.out_dir, "predict", {**config, "cA": args.cA})
    writer.add_json("predict.json", payload)
    return writer, payload


def cmd_simulate(args: argparse.Namespace, settings: LabSettings) -> Tuple[OutputWriter, Dict[str, Any]]:
    params, traj, config = _scenario(args)
    grid = Grid.for_scenario(params, traj, args.T, args.dx, args.dt)
    config.update(T=args.T, dx=args.dx, dt=args.dt, theta=args.theta, scheme=args.scheme,
                  moving_frame=args.moving_frame)

    trace = run(
        grid,
        params,
        traj,
        theta=args.theta,
        scheme=args.scheme,
        moving_frame=args.moving_frame,
        profile_every=args.emit_profile_every,
    )

    payload: Dict[str, Any] = {
        "fitted_speed": trace.fitted_speed,
        "fit_residual": trace.fit_residual,
        "fit_window": list(trace.fit_window),
        "samples": len(trace.times),
        "max_u": trace.max_u,
    }
    # 예측 비교는 two-interface 파라미터 (r2 > max(r1, r3)) 에서만
    if traj.kind == Trajectory.LINEAR and params.r2 > params.r_max_outer:
        prediction = predict_two_interface(params, traj.cA)
        payload["prediction"] = prediction.to_dict()
        payload["relative_error"] = abs(trace.fitted_speed - prediction.c_star) / prediction.c_star

    writer = OutputWriter(settings.out_dir, "simulate", config)
    writer.add_json("simulate.json", payload)
    if args.emit_trace:
        writer.add_csv("trace.csv", ["t", "front"], trace.rows())
    if args.emit_profile_every:
        rows = [[t, xi, ui] for t, x, u in trace.profiles for xi, ui in zip(x, u)]
        writer.add_csv("profiles.csv", ["t", "x", "u"], rows)
    return writer, payload


def cmd_verify(args: argparse.Namespace, settings: LabSettings) -> Tuple[OutputWriter, Dict[str, Any]]:
    handler = {
        "sweep": _verify_sweep,
        "corollary": _verify_corollary,
        "oscillate": _verify_oscillate,
        "supersub": _verify_supersub,
        "interface": _verify_interface,
    }[args.mode]
    return handler(args, settings)


def _verify_sweep(args, settings):
    params = _params(args)
    sim = _sim_settings(args, settings.jobs)
    table = sweep_speed_curve(params, args.cA_grid, sim, simulate=not args.predictions_only)

    config = {**_params_config(params, args), "cA_grid": args.cA_grid, "T": args.T, "dx": args.dx, "dt": args.dt,
              "simulate": not args.predictions_only}
    writer = OutputWriter(settings.out_dir, "verify sweep", config)
    payload = sweep_summary(table)
    payload["passed"] = bool(
        args.predictions_only or table.max_relative_error <= SimulationDefaults.SPEED_REL_TOL
    )
    writer.add_json("verify_sweep.json", payload)
    writer.add_csv(
        "verify_sweep.csv",
        ["cA", "regime", "c_star", "fitted_speed", "fit_residual", "relative_error"],
        table.rows(),
    )
    return writer, payload


def _verify_corollary(args, settings):
    params, traj, config = _scenario(args)
    config.update(T=args.T, dx=args.dx, dt=args.dt)
    verdict = corollary_bounds(params, traj, _sim_settings(args, settings.jobs))

    writer = OutputWriter(settings.out_dir, "verify corollary", config)
    payload = verdict.to_dict()
    writer.add_json("verify_corollary.json", payload)
    writer.add_csv(
        "verify_corollary.csv",
        ["verdict", "hypothesis_value", "expected_speed", "fitted_speed", "relative_error"],
        [[verdict.verdict, verdict.hypothesis_value, verdict.expected_speed, verdict.fitted_speed,
          verdict.relative_error]],
    )
    return writer, payload


def _verify_oscillate(args, settings):
    params = _params(args)
    _require(args, "cA1", "cA2")
    report = oscillation_experiment(
        params, args.cA1, args.cA2, args.switch_times, _sim_settings(args, settings.jobs)
    )

    config = {**_params_config(params, args), "cA1": args.cA1, "cA2": args.cA2,
              "switch_times": args.switch_times, "dx": args.dx, "dt": args.dt}
    writer = OutputWriter(settings.out_dir, "verify oscillate", config)
    payload = report.to_dict()
    writer.add_json("verify_oscillate.json", payload)
    writer.add_csv("verify_oscillate.csv", ["t_start", "t_end", "cA", "target", "fitted_speed"], report.rows())
    return writer, payload


def _verify_supersub(args, settings):
    params = _params(args)
    _require(args, "cA")

    reports = {}
    rows = []
    step1 = check_supersolution(build_step1(params, args.cA))
    reports["step1"] = step1
    rows.append(["step1", step1.passed, step1.min_residual, len(step1.violations)])

    step2_spec = None
    try:
        step2_spec = build_step2(params, args.cA, args.c)
    except ValidationError as e:
        logger.warning(f"Step2 상위해 적용 불가: {e}")
    if step2_spec is not None:
        step2 = check_supersolution(step2_spec)
        reports["step2"] = step2
        rows.append(["step2", step2.passed, step2.min_residual, len(step2.violations)])

    sub_spec = None
    try:
        sub_spec = build_subsolution_spec(params, args.cA, iota=args.iota, gamma_scale=args.gamma_scale)
    except ValidationError as e:
        logger.warning(f"Step4 하위해 적용 불가: {e}")
    if sub_spec is not None:
        sub = check_subsolution(sub_spec, t_samples=args.t_samples, horizon=args.t_max)
        reports["subsolution"] = sub
        rows.append(["subsolution", sub.passed, sub.max_relative_residual, len(sub.violations)])

    payload = {
        name: {
            "passed": r.passed,
            "violations": len(r.violations),
            "angle_margin": getattr(r, "angle_margin", None),
        }
        for name, r in reports.items()
    }
    payload["passed"] = all(r.passed for r in reports.values())

    config = {**_params_config(params, args), "cA": args.cA, "c": args.c, "iota": args.iota,
              "gamma_scale": args.gamma_scale, "t_max": args.t_max, "t_samples": args.t_samples}
    writer = OutputWriter(settings.out_dir, "verify supersub", config)
    writer.add_json("verify_supersub.json", payload)
    writer.add_csv("verify_supersub.csv", ["check", "passed", "extreme_residual", "violations"], rows)
    return writer, payload


def _verify_interface(args, settings):
    params = _params(args)
    _require(args, "cA")
    spec = build_subsolution_spec(params, args.cA, c=args.c, iota=args.iota, gamma_scale=args.gamma_scale)
    trace = solve_interface(spec, np.linspace(0.0, args.t_max, args.t_samples))

    payload = {
        "admissible": trace.admissible,
        "properties": trace.properties,
        "violations": trace.violations,
        "max_speed_deviation": trace.max_speed_deviation,
        "RL": spec.patch_reach,
        "rL": spec.r * params.L,
        "x0": spec.x0,
        "gamma": spec.gamma,
        "passed": trace.passed,
    }
    config = {**_params_config(params, args), "cA": args.cA, "c": spec.c, "iota": args.iota,
              "gamma_scale": args.gamma_scale, "t_max": args.t_max, "t_samples": args.t_samples}
    writer = OutputWriter(settings.out_dir, "verify interface", config)
    writer.add_json("verify_interface.json", payload)
    writer.add_csv("verify_interface.csv", ["t", "X", "offset", "left_slope", "right_slope"], trace.rows())
    return writer, payload


def cmd_optimize(args: argparse.Namespace, settings: LabSettings) -> Tuple[OutputWriter, Dict[str, Any]]:
    budget = Budget(args.r1, args.h, args.A, args.W, args.cells)
    if args.method == "brute":
        candidate = brute_force_optimum(budget, jobs=settings.jobs)
    else:
        candidate = local_search(budget, relaxed=args.method == "relaxed", seed=args.seed, jobs=settings.jobs)

    payload = {
        "lambda1": candidate.lambda1,
        "raised_cells": list(candidate.raised),
        "contiguous": candidate.contiguous,
        "bang_bang": candidate.is_bang_bang,
        "tie_count": len(candidate.ties),
        "ties_contiguous": all(is_contiguous(t) for t in candidate.ties),
        "evaluations": candidate.evaluations,
        "accepted_moves": candidate.accepted_moves,
    }
    config = {**budget.to_dict(), "method": args.method, "seed": args.seed}
    writer = OutputWriter(settings.out_dir, "optimize", config)
    writer.add_json("optimize.json", payload)
    writer.add_csv("optimize_profile.csv", ["cell", "increment"], candidate.rows())
    return writer, payload


COMMANDS = {
    "eigen": cmd_eigen,
    "predict": cmd_predict,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "optimize": cmd_optimize,
}


# ============================================================
# 진입점
# ============================================================


def _load_settings(args: argparse.Namespace) -> LabSettings:
    """환경 설정 + CLI 덮어쓰기 (설정 오류는 ValidationError)"""
    try:
        return get_settings().with_overrides(
            out_dir=args.out_dir,
            jobs=args.jobs,
            log_level=args.log_level.upper() if args.log_level else None,
            log_file=args.log_file,
        )
    except ValidationError:
        raise
    except ValueError as e:
        raise ValidationError(str(e))


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    명령 실행

    Returns:
        0 성공 / 1 입력 오류 / 2 계산 실패
    """

    try:
        args = build_parser().parse_args(argv)
        settings = _load_settings(args)
        configure_logging(settings.level, settings.log_file)

        logger.info("=" * 60)
        logger.info(f"{SystemConfig.TOOL_NAME} {SystemConfig.TOOL_VERSION} - {args.command}")
        logger.info("=" * 60)

        writer, payload = COMMANDS[args.command](args, settings)
        writer.commit()
        sys.stdout.write(render_json(payload))
        return SystemConfig.EXIT_OK

    except ValidationError as e:
        logger.error(f"입력 오류: {e}")
        return SystemConfig.EXIT_VALIDATION
    except LabRuntimeError as e:
        logger.error(f"계산 실패: {e}")
        return SystemConfig.EXIT_RUNTIME
    except LabError as e:
        logger.error(f"오류: {e}")
        return SystemConfig.EXIT_RUNTIME
    except Exception as e:
        logger.error(f"예상하지 못한 오류: {type(e).__name__}: {e}", exc_info=True)
        return SystemConfig.EXIT_RUNTIME


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
