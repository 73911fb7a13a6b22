"""
시스템 상수 및 설정값
=====================================
고유값 허용오차, 시뮬레이션 기본값, 하위해(sub-solution) 구성 규칙,
최적화 기본값, 전파 속도 regime 등 관리
"""

from enum import Enum


# ============================================================
# 고유값 계산 허용오차
# ============================================================


class EigenTolerances:
    """주 고유값 λ₁ 계산 기준"""

    # 해석적 λ₁: cot 방정식 bisection
    BISECTION_XTOL = 1e-14  # 1e-12 보다 엄격
    BRACKET_NUDGE = 1e-13  # (r2 - max) 배율로 구간 안쪽 이동

    # 절단 영역 (-R, R) Dirichlet 문제
    STURM_TOL = 1e-12  # stebz 절대 허용오차
    NODE_SPACING = 5e-4  # x 단위 격자 간격 (y 간격 = NODE_SPACING / L)
    LADDER_DECAY_LENGTH = 10.0  # R₀ = max|b| + 10 / L
    LADDER_TOL = 1e-6  # 연속 rung 차이 기준
    LADDER_MAX_RUNGS = 7
    MAX_NODES = 4_000_000  # 메모리 보호
    MONOTONE_SLACK = 1e-10  # R 증가 시 λ 비증가 검사 여유

    # 고유함수 검증
    MATCHING_TOL = 1e-10  # y = 0, 1 에서 C¹ 접합
    RESIDUAL_TOL = 1e-8


# ============================================================
# 시뮬레이션 기본값
# ============================================================


class SimulationDefaults:
    """IMEX 시뮬레이터 기본 설정"""

    DX = 0.05
    DT = 0.01
    THETA = 0.01  # front level set
    SAMPLE_EVERY = 1.0  # 샘플 간격 (시간)
    LEFT_MARGIN = 20.0  # x_min = -LEFT_MARGIN
    RIGHT_MARGIN = 40.0  # x_max = 최대 전파 거리 + RIGHT_MARGIN
    BOUNDARY_GUARD = 1e-8  # 오른쪽 경계 오염 기준
    BUMP_HALF_WIDTH = 1.0
    BUMP_HEIGHT = 1.0
    FRAME_SHIFT_FRACTION = 0.75  # moving frame: window 3/4 지점 통과 시 이동
    SPEED_REL_TOL = 0.10  # corollary / sweep 판정 (10%)


# ============================================================
# 검증 시나리오
# ============================================================


class ScenarioDefaults:
    """sweep / corollary / oscillation 실험 기본값"""

    HORIZON = 300.0  # sweep, corollary 시뮬레이션 T
    SWITCH_TIMES = (40.0, 200.0, 1000.0)  # t_{n+1}/t_n 증가
    HYPOTHESIS_T_MIN = 1.0  # corollary 가정은 t ∈ [1, T] 샘플에서 확인
    HYPOTHESIS_SAMPLES = 2000
    TAIL_FRACTION = 0.5  # 구간 뒤쪽 절반에서 속도 fit
    SPLIT_FRACTION = 0.5  # spread ≥ 0.5 (F(cA1) - F(cA2))


# ============================================================
# Step 4 하위해 구성 규칙
# ============================================================


class SubSolutionRecipe:
    """하위해 상수 선택 규칙 (고정 레시피)"""

    SPEED_OFFSET = 0.05  # c = c* - 0.05
    ETA_FRACTION = 0.5  # η = 0.5 · min(λ(c), √(c² - 4 r1))
    S_FACTOR = 2.0  # S = 2 · max(1, M / (η(√(c²-4r1) - η)))
    SIGMA_FRACTION = 0.5  # σ = 0.5 · (2 max P)
    LOWER_BOUND_MARGIN = 0.75  # M σ ≤ ¾ (r1 - π²/(4R'²))
    GAMMA_FRACTION = 0.5  # 작음 조건 대비 1/2 여유
    X0_FACTOR = 2.0  # x0 = 2 × (x0 상한)
    INITIAL_HALF_WIDTH = 2.0  # R ladder 시작 (y 단위)
    MAX_HALF_WIDTH = 512.0
    EIGEN_SPACING = 2e-3  # y 단위 격자 간격
    RESIDUAL_TOL = 1e-10
    TIME_HORIZON = 100.0
    TIME_SAMPLES = 40
    SPACE_SAMPLES = 250


# ============================================================
# bang-bang 최적화 기본값
# ============================================================


class OptimizerDefaults:
    """patch 배치 최적화 설정"""

    TIE_TOL = 1e-9  # 최적값 동률 판정
    IMPROVE_TOL = 1e-12  # local search 개선 판정
    HALF_MARGIN = 20.0  # 절단 영역 = window/2 + HALF_MARGIN
    NODES_PER_CELL = 64
    MAX_BRUTE_FORCE = 200_000  # 조합 수 상한
    MAX_BRUTE_FORCE_CELLS = 16
    MAX_SWEEPS = 500


# ============================================================
# 전파 regime / 고유함수 case
# ============================================================


class Regime(Enum):
    """전파 속도 regime"""

    SLOW = "Slow"  # c* = 2√r3
    LOCKED = "Locked"  # c* = cA
    NONLOCALLY_PULLED = "NonlocallyPulled"  # c* = F(cA)
    FAST = "Fast"  # c* = 2√r1


class EigenCase(Enum):
    """주 고유함수 형태"""

    INTERIOR = "Interior"  # L > L̄
    LEFT_CRITICAL = "LeftCritical"  # r1 > r3, L ≤ L̄, λ₁ = -r1
    RIGHT_CRITICAL = "RightCritical"  # r1 < r3, L ≤ L̄, λ₁ = -r3


# ============================================================
# 시스템 설정
# ============================================================


class SystemConfig:
    """시스템 전역 설정"""

    TOOL_NAME = "kpp-patch-lab"
    TOOL_VERSION = "1.0.0"

    # 로깅
    LOG_LEVEL = "INFO"
    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"

    # 출력
    DEFAULT_OUT_DIR = "out"
    MANIFEST_NAME = "manifest.json"

    # CLI 종료 코드
    EXIT_OK = 0
    EXIT_VALIDATION = 1
    EXIT_RUNTIME = 2
