"""
Figure 데이터 일괄 생성
==================================
예측 곡선을 CSV 로 기록 (그림은 CSV 에서 별도로 그림)

- 속도-cA 곡선: 파라미터 세트 a ~ e (λ₁ 고정으로 L 역산)
- 단일 전이 곡선: (r1, r3) = (4, 1), (1, 4)
- c*-λ₁ 곡선: r = (1, 16, 4), cA = 7

실행: python -m jobs.reproduce_figures
또는: python jobs/reproduce_figures.py
"""

import sys
import os
import time
from typing import Dict, Any, List

import numpy as np

# 프로젝트 루트를 Python 경로에 추가
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import get_settings
from eigen.analytic import resolve_length
from model.growth import GrowthParams
from speed.predictor import predict_single_transition, sweep_cA, sweep_lambda1
from utils.errors import LabError
from utils.logger import configure_logging, get_logger
from utils.run_manifest import OutputWriter


# 로거 설정
logger = get_logger("jobs.reproduce_figures")

# (이름, r1, r2, r3, λ₁)
PARAMETER_SETS = [
    ("a", 1.0, 9.0, 1.0, -4.0),
    ("b", 4.0, 9.0, 1.0, -8.0),
    ("c", 4.0, 9.0, 1.0, -4.0),
    ("d", 1.0, 9.0, 4.0, -8.0),
    ("e", 1.0, 9.0, 4.0, -4.0),
]
SINGLE_TRANSITIONS = [(4.0, 1.0), (1.0, 4.0)]
LAMBDA_CURVE = {"r1": 1.0, "r2": 16.0, "r3": 4.0, "cA": 7.0}

CA_RANGE = (0.05, 10.0)
CURVE_POINTS = 400


class FigureReproducer:
    """
    예측 곡선 생성기

    모든 곡선은 결정적 (같은 설정이면 같은 파일)
    """

    def __init__(self, out_dir: str, points: int = CURVE_POINTS):
        self.out_dir = out_dir
        self.points = points
        self.writer = OutputWriter(
            out_dir,
            "jobs.reproduce_figures",
            {
                "parameter_sets": PARAMETER_SETS,
                "single_transitions": SINGLE_TRANSITIONS,
                "lambda_curve": LAMBDA_CURVE,
                "cA_range": CA_RANGE,
                "points": points,
            },
        )
        logger.info(f"FigureReproducer 초기화 완료 - {out_dir}")

    def speed_curves(self) -> Dict[str, float]:
        """세트 a ~ e 의 속도-cA 곡선, 세트별 L 반환"""

        lengths = {}
        for name, r1, r2, r3, lam in PARAMETER_SETS:
            L = resolve_length(r1, r2, r3, lambda1=lam)
            params = GrowthParams(r1, r2, r3, L)
            rows = sweep_cA(params, *CA_RANGE, self.points, lam)
            self.writer.add_csv(
                f"speed_curve_{name}.csv",
                ["cA", "regime", "c_star"],
                [[p.cA, p.regime.value, p.c_star] for p in rows],
            )
            lengths[name] = L
            logger.info(f"  세트 ({name}) r=({r1}, {r2}, {r3}), λ₁={lam}, L={L:.6f}")
        return lengths

    def single_transition_curves(self) -> None:
        for r1, r3 in SINGLE_TRANSITIONS:
            grid = np.linspace(0.0, CA_RANGE[1], self.points)
            rows = [predict_single_transition(r1, r3, float(cA)) for cA in grid]
            self.writer.add_csv(
                f"single_transition_r1_{r1:g}_r3_{r3:g}.csv",
                ["cA", "regime", "c_star"],
                [[p.cA, p.regime.value, p.c_star] for p in rows],
            )

    def lambda_curve(self) -> None:
        c = LAMBDA_CURVE
        rows = sweep_lambda1(c["r1"], c["r2"], c["r3"], c["cA"], -c["r2"], -max(c["r1"], c["r3"]), self.points)
        self.writer.add_csv(
            "c_star_vs_lambda1.csv",
            ["minus_lambda1", "regime", "c_star"],
            [[-p.lambda1, p.regime.value, p.c_star] for p in rows],
        )

    def run(self) -> Dict[str, Any]:
        lengths = self.speed_curves()
        self.single_transition_curves()
        self.lambda_curve()
        self.writer.add_json("figures.json", {"lengths": lengths, "files": self.writer.names})
        written = self.writer.commit()
        return {"files": written, "lengths": lengths}


def run_reproduce_figures() -> Dict[str, Any]:
    """
    Figure 데이터 생성 실행

    Returns:
        실행 결과
    """

    start_time = time.time()
    settings = get_settings()
    configure_logging(settings.level, settings.log_file)
    out_dir = os.path.join(settings.out_dir, "figures")

    logger.info("=" * 60)
    logger.info("Figure 데이터 생성 시작")
    logger.info("=" * 60)

    result = FigureReproducer(out_dir).run()
    duration = time.time() - start_time

    logger.info(f"생성 파일: {len(result['files'])}개")
    logger.info(f"실행 시간: {duration:.1f}초")
    logger.info("=" * 60)

    result["duration"] = duration
    return result


def main():
    """메인 진입점"""
    try:
        run_reproduce_figures()
        sys.exit(0)

    except LabError as e:
        logger.error(f"Figure 데이터 생성 실패: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
