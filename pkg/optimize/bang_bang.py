"""
patch 형태 최적화 (bang-bang)
=====================================
m = r1 + (셀별 증가분), 0 ≤ 증가분 ≤ h (L∞), Σ 증가분 × w ≤ A (L¹) 조건에서
λ₁(m) 최소화 (= 유도 속도 최대화).

- brute_force_optimum: k = floor(A/(h w)) 개 셀을 h 로 올리는 모든 조합 열거
- local_search: 셀 교환(bang-bang) / 질량 이동(relaxed) 최선 개선 하강

λ₁ 평가는 모든 후보에 같은 절단 schedule 사용:
    window [-W/2, W/2], L = 1, R₀ = W/2 + 20, 격자 간격 w/64
→ 셀 경계가 격자 node 와 일치, 평행이동 후보는 절단 오차 수준에서 동률.
"""

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from dataclasses_json import dataclass_json

from config.constants import OptimizerDefaults
from eigen.truncated import lambda1_general
from model.growth import StepProfile
from utils.errors import ValidationError
from utils.logger import get_logger


logger = get_logger(__name__)


@dataclass_json
@dataclass(frozen=True)
class Budget:
    """높이 상한 h, 질량 상한 A, window 폭 W, 셀 개수"""

    r1: float
    height: float
    mass: float
    width: float
    cells: int

    def __post_init__(self):
        if not self.r1 > 0:
            raise ValidationError(f"r1 은 양수여야 합니다: {self.r1}")
        if not self.height > 0:
            raise ValidationError(f"h 는 양수여야 합니다: {self.height}")
        if not self.mass > 0:
            raise ValidationError(f"A 는 양수여야 합니다: {self.mass}")
        if not self.width > 0 or self.cells < 1:
            raise ValidationError(f"W > 0, cells ≥ 1 이 필요합니다: W={self.width}, cells={self.cells}")
        if self.mass > self.height * self.width * (1 + 1e-12):
            raise ValidationError(f"A ≤ h·W 가 필요합니다: A={self.mass}, h·W={self.height * self.width}")

    @property
    def cell_width(self) -> float:
        return self.width / self.cells

    @property
    def raised_cells(self) -> int:
        """bang-bang 공간의 올린 셀 수 (질량은 셀 단위로 내림)"""
        return min(self.cells, int(math.floor(self.mass / (self.height * self.cell_width) + 1e-12)))

    def edges(self) -> np.ndarray:
        return -0.5 * self.width + self.cell_width * np.arange(self.cells + 1)

    def profile(self, increments: Sequence[float]) -> StepProfile:
        if len(increments) != self.cells:
            raise ValidationError(f"증가분 개수는 {self.cells} 이어야 합니다: {len(increments)}")
        values = (self.r1,) + tuple(self.r1 + float(a) for a in increments) + (self.r1,)
        return StepProfile(tuple(self.edges()), values)

    def bang_bang(self, raised: Sequence[int]) -> Tuple[float, ...]:
        chosen = set(raised)
        return tuple(self.height if i in chosen else 0.0 for i in range(self.cells))

    def check(self, increments: Sequence[float]) -> None:
        inc = np.asarray(increments, dtype=float)
        if np.any(inc < -1e-12) or np.any(inc > self.height * (1 + 1e-12)):
            raise ValidationError(f"증가분은 [0, h] 범위여야 합니다: {increments}")
        if inc.sum() * self.cell_width > self.mass * (1 + 1e-9):
            raise ValidationError(f"질량 상한 초과: {inc.sum() * self.cell_width} > {self.mass}")


@dataclass_json
@dataclass
class ProfileCandidate:
    """증가분 프로파일과 λ₁"""

    increments: Tuple[float, ...]
    lambda1: float
    evaluations: int = 0
    accepted_moves: int = 0
    history: List[float] = field(default_factory=list)
    ties: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def raised(self) -> Tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.increments) if a > 1e-12)

    @property
    def contiguous(self) -> bool:
        return is_contiguous(self.raised)

    @property
    def is_bang_bang(self) -> bool:
        top = max(self.increments, default=0.0)
        return all(a <= 1e-9 or abs(a - top) <= 1e-9 * max(1.0, top) for a in self.increments)

    def rows(self) -> List[list]:
        return [[i, a] for i, a in enumerate(self.increments)]


def is_contiguous(cells: Sequence[int]) -> bool:
    """셀 번호가 하나의 연속 구간인지"""
    cells = sorted(cells)
    return not cells or cells[-1] - cells[0] == len(cells) - 1


# ============================================================
# λ₁ 평가
# ============================================================


def evaluate(budget: Budget, increments: Sequence[float]) -> float:
    """고정 schedule 로 λ₁(r1 + 증가분)"""

    return lambda1_general(
        budget.profile(increments),
        1.0,
        base_half_width=0.5 * budget.width + OptimizerDefaults.HALF_MARGIN,
        spacing=budget.cell_width / OptimizerDefaults.NODES_PER_CELL,
    )


def _evaluate_task(task: Tuple[Budget, Tuple[float, ...]]) -> float:
    return evaluate(*task)


def _evaluate_many(budget: Budget, candidates: List[Tuple[float, ...]], jobs: int) -> List[float]:
    tasks = [(budget, inc) for inc in candidates]
    if jobs <= 1 or len(tasks) <= 1:
        return [_evaluate_task(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        chunk = max(1, len(tasks) // (4 * jobs))
        return list(executor.map(_evaluate_task, tasks, chunksize=chunk))


# ============================================================
# 전수 탐색
# ============================================================


def brute_force_optimum(budget: Budget, jobs: int = 1) -> ProfileCandidate:
    """
    k = floor(A/(h w)) 개 셀을 올리는 모든 C(n, k) 조합 중 λ₁ 최소

    TIE_TOL 이내 후보는 ties 로 함께 반환 (정규 순서 = itertools.combinations 순서).

    Raises:
        ValidationError: n > 16 또는 조합 수 초과
    """

    n, k = budget.cells, budget.raised_cells
    if n > OptimizerDefaults.MAX_BRUTE_FORCE_CELLS:
        raise ValidationError(f"전수 탐색은 cells ≤ {OptimizerDefaults.MAX_BRUTE_FORCE_CELLS} 에서만 가능합니다: {n}")
    total = math.comb(n, k)
    if total > OptimizerDefaults.MAX_BRUTE_FORCE:
        raise ValidationError(f"조합 수가 너무 많습니다: C({n}, {k}) = {total}")

    logger.info("=" * 50)
    logger.info(f"bang-bang 전수 탐색 - n={n}, k={k}, 후보 {total}개")
    logger.info("=" * 50)

    combos = list(itertools.combinations(range(n), k))
    values = _evaluate_many(budget, [budget.bang_bang(c) for c in combos], jobs)

    best_index = int(np.argmin(values))
    best = values[best_index]
    assert all(best <= v for v in values)

    ties = [combo for combo, v in zip(combos, values) if v <= best + OptimizerDefaults.TIE_TOL]
    candidate = ProfileCandidate(
        budget.bang_bang(combos[best_index]),
        best,
        evaluations=total,
        ties=ties,
    )

    logger.info(
        f"전수 탐색 완료 - λ₁={best:.10f}, 최적 셀 {combos[best_index]}, 동률 {len(ties)}개, "
        f"모두 연속={all(is_contiguous(t) for t in ties)}"
    )
    return candidate


# ============================================================
# 국소 탐색
# ============================================================


def local_search(
    budget: Budget,
    relaxed: bool = False,
    seed: int = 0,
    start: Optional[Sequence[float]] = None,
    jobs: int = 1,
) -> ProfileCandidate:
    """
    최선 개선 하강 (수용된 이동마다 λ₁ 단조 비증가)

    - bang-bang: 올린 셀 하나와 내린 셀 하나 교환, 시작은 seed 로 고른 k 개 셀
    - relaxed: 두 셀 사이 질량 이동 (한쪽이 0 또는 h 가 될 때까지),
      시작은 모든 셀 A/(n w) (내부점)

    개선이 IMPROVE_TOL 이하가 되면 종료 (국소 최적).
    """

    if start is None:
        current = _relaxed_start(budget) if relaxed else _random_start(budget, seed)
    else:
        current = tuple(float(a) for a in start)
    budget.check(current)

    value = evaluate(budget, current)
    result = ProfileCandidate(current, value, evaluations=1, history=[value])
    mode = "relaxed" if relaxed else "bang-bang"
    logger.info(f"국소 탐색 시작 ({mode}) - λ₁={value:.10f}")

    for sweep in range(OptimizerDefaults.MAX_SWEEPS):
        moves = _transfer_moves(budget, current) if relaxed else _swap_moves(budget, current)
        if not moves:
            break
        values = _evaluate_many(budget, moves, jobs)
        result.evaluations += len(moves)

        best_index = int(np.argmin(values))
        if not values[best_index] < value - OptimizerDefaults.IMPROVE_TOL:
            break

        current, value = moves[best_index], values[best_index]
        result.accepted_moves += 1
        result.history.append(value)
        logger.debug(f"  이동 {result.accepted_moves}: λ₁={value:.10f}")

    result.increments, result.lambda1 = current, value
    logger.info(
        f"국소 탐색 완료 ({mode}) - λ₁={value:.10f}, 이동 {result.accepted_moves}회, "
        f"평가 {result.evaluations}회, 연속={result.contiguous}"
    )
    return result


def _random_start(budget: Budget, seed: int) -> Tuple[float, ...]:
    rng = np.random.default_rng(seed)
    raised = rng.choice(budget.cells, size=budget.raised_cells, replace=False)
    return budget.bang_bang(int(i) for i in raised)


def _relaxed_start(budget: Budget) -> Tuple[float, ...]:
    level = budget.mass / (budget.cells * budget.cell_width)
    return tuple(min(level, budget.height) for _ in range(budget.cells))


def _swap_moves(budget: Budget, current: Tuple[float, ...]) -> List[Tuple[float, ...]]:
    on = [i for i, a in enumerate(current) if a > 0]
    off = [i for i, a in enumerate(current) if a == 0]
    moves = []
    for i in on:
        for j in off:
            inc = list(current)
            inc[i], inc[j] = 0.0, budget.height
            moves.append(tuple(inc))
    return moves


def _transfer_moves(budget: Budget, current: Tuple[float, ...]) -> List[Tuple[float, ...]]:
    """j → i 최대 질량 이동 (λ₁ 은 m 에 대해 오목이므로 선분의 끝점만 후보)"""

    h = budget.height
    moves = []
    for i, j in itertools.permutations(range(budget.cells), 2):
        amount = min(h - current[i], current[j])
        if amount <= 1e-12:
            continue
        inc = list(current)
        inc[i] = h if h - current[i] <= current[j] else current[i] + amount
        inc[j] = current[j] - amount if h - current[i] <= current[j] else 0.0
        moves.append(tuple(inc))
    return moves
