"""
하위해(sub-solution) 구성 및 검증
=====================================
r1 < ... 인 pulled 영역 (2√r1 < c < cA) 의 하한 구성:

    u̲ = 0                        x < x_L
      = ι O(x)                   x_L ≤ x < x_L + 5R'/3
      = ι σ/2                    ... < x < x_P(t)
      = ι P(t, x)                x_P(t) ≤ x < X(t)
      = ι Q(t, x)                X(t) ≤ x < cA t + R L
      = 0                        그 이후

    x_L    = ln S/η + x0 - 2R'
    x_P(t) = ln S/η + x0 + ct + x1
    O      = σ sin(π/(2R') (x - x_L))
    P      = e^{-λ s} - S e^{-(λ+η) s},  s = x - ct - x0
    Q      = γ e^{-λ(c)(cA-c)t} e^{-cA ξ/2} φᴿ(ξ/L),  ξ = x - cA t
    X(t)   : P = Q 의 해 (cA t - RL, cA t - (R-r)L) 안

φᴿ 는 (-R, R) Dirichlet 절단 문제의 격자 고유벡터 (노드 샘플링, φᴿ(0) = 1).
X(t) 는 왼쪽 끝에 지수적으로 가깝기 때문에 offset d = X - (cA t - RL) 로 직접 풀고,
양변을 공통 인자 e^{-λ(c)(cA-c)t} 로 나눠 계산.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy import optimize

from config.constants import EigenTolerances, Regime, SubSolutionRecipe
from eigen.analytic import lambda1_analytic
from eigen.truncated import TruncatedEigenpair, truncated_eigenpair
from model.growth import GrowthParams, KppReaction, StepProfile, Trajectory, eval_r
from speed.predictor import decay_rate, predict_two_interface, thresholds_for
from utils.errors import ValidationError
from utils.logger import get_logger


logger = get_logger(__name__)


# ============================================================
# 파라미터
# ============================================================


@dataclass
class SubSolutionSpec:
    """하위해 구성 파라미터 (build_subsolution_spec 으로 생성)"""

    params: GrowthParams
    cA: float
    c: float
    lambda1: float
    decay: float  # λ(c)
    eta: float
    S: float
    M: float
    outer_half_width: float  # R'
    sigma: float
    x1: float
    R: float
    r: float
    gamma: float
    x0: float
    iota: float
    eigen: TruncatedEigenpair = field(repr=False)
    max_phi: float = 0.0

    @property
    def mu(self) -> float:
        return self.decay + self.eta

    @property
    def spread(self) -> float:
        """√(c² - 4 r1)"""
        return math.sqrt(self.c * self.c - 4.0 * self.params.r1)

    @property
    def beta(self) -> float:
        return self.decay * (self.cA - self.c)

    @property
    def kappa(self) -> float:
        """λᴿ - β + cA²/4 (Q 조각의 선형 계수)"""
        return self.eigen.lambda1 - self.beta + self.cA ** 2 / 4.0

    @property
    def kappa_limit(self) -> float:
        """λ₁ - β + cA²/4"""
        return self.lambda1 - self.beta + self.cA ** 2 / 4.0

    @property
    def delta(self) -> float:
        return 0.5 * abs(self.kappa_limit)

    @property
    def shift(self) -> float:
        """ln S / η"""
        return math.log(self.S) / self.eta

    @property
    def left_edge(self) -> float:
        """x_L"""
        return self.shift + self.x0 - 2.0 * self.outer_half_width

    @property
    def patch_reach(self) -> float:
        """R L"""
        return self.R * self.params.L

    @property
    def start_offset(self) -> float:
        """t = 0, d = 0 일 때의 s = x - ct - x0"""
        return -self.patch_reach - self.x0

    # ============================================================
    # 닫힌 형태 조각
    # ============================================================

    def P(self, s):
        return np.exp(-self.decay * s) - self.S * np.exp(-self.mu * s)

    def P_slope(self, s):
        """∂x P = dP/ds"""
        return -self.decay * np.exp(-self.decay * s) + self.S * self.mu * np.exp(-self.mu * s)

    def O(self, x):
        omega = math.pi / (2.0 * self.outer_half_width)
        return self.sigma * np.sin(omega * (x - self.left_edge))

    def max_P(self) -> float:
        s_peak = math.log(self.S * self.mu / self.decay) / self.eta
        return float(self.P(s_peak))

    def scaled_P(self, t: float, offset):
        """P(t, cA t - RL + d) / e^{-βt}"""
        s = self.start_offset + offset
        tail = math.exp(-self.eta * (self.cA - self.c) * t)
        return np.exp(-self.decay * s) - self.S * tail * np.exp(-self.mu * s)

    def scaled_Q(self, offset):
        """Q(t, cA t - RL + d) / e^{-βt}"""
        L = self.params.L
        envelope = self.gamma * np.exp(self.cA * (self.patch_reach - offset) / 2.0)
        return envelope * self.eigen.value_from_left(np.asarray(offset) / L)

    def scaled_Q_slope(self, offset):
        L = self.params.L
        envelope = self.gamma * np.exp(self.cA * (self.patch_reach - offset) / 2.0)
        y_off = np.asarray(offset) / L
        return envelope * (
            self.eigen.slope_from_left(y_off) / L - self.cA / 2.0 * self.eigen.value_from_left(y_off)
        )

    # ============================================================
    # 검증
    # ============================================================

    def validate(self) -> "SubSolutionSpec":
        """구성 조건 확인, 위반 시 ValidationError"""

        r1 = self.params.r1
        if not 0 < self.iota <= 1:
            raise ValidationError(f"ι 는 (0, 1] 범위여야 합니다: {self.iota}")
        if not 2.0 * math.sqrt(r1) < self.c < self.cA:
            raise ValidationError(f"c 는 (2√r1, cA) = ({2 * math.sqrt(r1)}, {self.cA}) 범위여야 합니다: {self.c}")
        if not self.kappa_limit < 0:
            raise ValidationError(
                f"λ₁ - λ(c)(cA - c) + cA²/4 = {self.kappa_limit} ≥ 0: c 가 너무 큽니다 (c={self.c})"
            )
        bound = min(self.decay, self.spread)
        if not 0 < self.eta < bound:
            raise ValidationError(f"η 는 (0, min(λ(c), √(c²-4r1))) = (0, {bound}) 범위여야 합니다: {self.eta}")
        need_S = max(1.0, self.M / (self.eta * (self.spread - self.eta)))
        if not self.S > 1 or self.S < need_S:
            raise ValidationError(f"S 는 {need_S} 이상이어야 합니다: {self.S}")

        omega_sq = (math.pi / (2.0 * self.outer_half_width)) ** 2
        if not omega_sq < r1:
            raise ValidationError(f"R' 가 너무 작습니다: π²/(4R'²) = {omega_sq} ≥ r1 = {r1}")
        if not 0 < self.sigma < 2.0 * self.max_P():
            raise ValidationError(f"σ 는 (0, 2 max P) = (0, {2 * self.max_P()}) 범위여야 합니다: {self.sigma}")
        if self.M * self.sigma > r1 - omega_sq:
            raise ValidationError(f"M σ = {self.M * self.sigma} > r1 - π²/(4R'²) = {r1 - omega_sq}")

        if not self.kappa < -self.delta:
            raise ValidationError(f"λᴿ 가 λ₁ 에 충분히 가깝지 않습니다: κ = {self.kappa}, δ = {self.delta}")
        if not 0 < self.r < self.R:
            raise ValidationError(f"r 은 (0, R) 범위여야 합니다: r={self.r}, R={self.R}")

        q_peak = self.gamma * math.exp(self.cA * self.patch_reach / 2.0) * self.max_phi
        if q_peak > -self.kappa / self.M:
            raise ValidationError(f"γ 가 너무 큽니다: max Q 상한 {q_peak} > -κ/M = {-self.kappa / self.M}")

        if not self.x0 < x0_upper_bound(self):
            raise ValidationError(f"x0 = {self.x0} 가 허용 상한 {x0_upper_bound(self)} 이상입니다")
        if not self.x0 < x0_anchor_bound(self):
            raise ValidationError(f"x0 = {self.x0} 가 X(0) 위치 조건 상한 {x0_anchor_bound(self)} 이상입니다")
        if not self.left_edge + 5.0 * self.outer_half_width / 3.0 < 0:
            raise ValidationError("평탄 구간이 x < 0 영역 안에 있지 않습니다")

        return self


def x0_upper_bound(spec: SubSolutionSpec) -> float:
    """x0 < -RL - (1/η) ln(S(λ+η)/λ)"""
    return -spec.patch_reach - math.log(spec.S * spec.mu / spec.decay) / spec.eta


def x0_anchor_bound(spec: SubSolutionSpec) -> float:
    """e^{λ((R-r)L + x0)} < γ e^{cA(R-r)L/2} φᴿ(-R+r)"""
    L = spec.params.L
    gap = (spec.R - spec.r) * L
    phi = spec.eigen.value_from_left(spec.r)
    return (math.log(spec.gamma) + spec.cA * gap / 2.0 + math.log(phi)) / spec.decay - gap


# ============================================================
# 구성
# ============================================================


def build_subsolution_spec(
    params: GrowthParams,
    cA: float,
    c: Optional[float] = None,
    iota: float = 1.0,
    gamma_scale: float = 1.0,
    eta: Optional[float] = None,
) -> SubSolutionSpec:
    """
    고정 레시피로 하위해 파라미터 구성

    - c = c* - 0.05 (2√r1 이하가 되면 2√r1 과 c* 의 중점)
    - η = ½ min(λ(c), √(c² - 4r1)),  S = 2 max(1, M/(η(√(c²-4r1) - η)))
    - R' = π/√r1,  σ = min(max P, ¾ (r1 - π²/(4R'²))/M)
    - R = 2, 4, 8, ... : |λᴿ - λ₁| < δ/2 인 첫 값
    - γ = ½ (-κ/M) / (e^{cA R L/2} max φᴿ) × gamma_scale
    - x0 = 2 × min(두 상한)

    Raises:
        ValidationError: 영역 밖 cA 또는 조건 위반 (예: η 상한 초과)
    """

    params.require_two_interface()
    r1 = params.r1
    lam1 = lambda1_analytic(params).lambda1
    reaction = KppReaction.for_params(params)

    _, _, t3 = thresholds_for(r1, params.r3, lam1)
    if not 2.0 * math.sqrt(r1) < cA < t3:
        raise ValidationError(
            f"하위해 구성은 2√r1 < cA < {t3} (pulled 상한) 에서만 가능합니다: cA={cA}"
        )

    prediction = predict_two_interface(params, cA, lam1)
    if prediction.regime == Regime.FAST:
        raise ValidationError(f"Fast 영역에서는 구성할 수 없습니다: cA={cA}")

    if c is None:
        c_star = prediction.c_star
        c = c_star - SubSolutionRecipe.SPEED_OFFSET
        if c <= 2.0 * math.sqrt(r1):
            c = 0.5 * (2.0 * math.sqrt(r1) + c_star)
    if not 2.0 * math.sqrt(r1) < c < cA:
        raise ValidationError(f"c 는 (2√r1, cA) 범위여야 합니다: {c}")

    lam = decay_rate(r1, c)
    spread = math.sqrt(c * c - 4.0 * r1)
    if eta is None:
        eta = SubSolutionRecipe.ETA_FRACTION * min(lam, spread)
    if not 0 < eta < min(lam, spread):
        raise ValidationError(f"η 는 (0, {min(lam, spread)}) 범위여야 합니다: {eta}")

    M = reaction.M
    S = SubSolutionRecipe.S_FACTOR * max(1.0, M / (eta * (spread - eta)))
    outer = math.pi / math.sqrt(r1)
    omega_sq = (math.pi / (2.0 * outer)) ** 2

    mu = lam + eta
    s_peak = math.log(S * mu / lam) / eta
    p_peak = math.exp(-lam * s_peak) - S * math.exp(-mu * s_peak)
    sigma = min(
        SubSolutionRecipe.SIGMA_FRACTION * 2.0 * p_peak,
        SubSolutionRecipe.LOWER_BOUND_MARGIN * (r1 - omega_sq) / M,
    )
    x1 = _plateau_offset(lam, mu, S, sigma)

    beta = lam * (cA - c)
    kappa_limit = lam1 - beta + cA * cA / 4.0
    if not kappa_limit < 0:
        raise ValidationError(f"λ₁ - λ(c)(cA - c) + cA²/4 = {kappa_limit} ≥ 0: c 가 너무 큽니다 (c={c})")
    delta = 0.5 * abs(kappa_limit)

    pair = _converged_eigenpair(params, lam1, delta)
    R = pair.R
    max_phi = float(pair.phi.max())
    kappa = pair.lambda1 - beta + cA * cA / 4.0
    r = 0.5 * min(_increasing_reach(pair, cA), R)

    gamma = (
        SubSolutionRecipe.GAMMA_FRACTION
        * gamma_scale
        * (-kappa / M)
        / (math.exp(cA * R * params.L / 2.0) * max_phi)
    )

    spec = SubSolutionSpec(
        params=params,
        cA=cA,
        c=c,
        lambda1=lam1,
        decay=lam,
        eta=eta,
        S=S,
        M=M,
        outer_half_width=outer,
        sigma=sigma,
        x1=x1,
        R=R,
        r=r,
        gamma=gamma,
        x0=0.0,
        iota=iota,
        eigen=pair,
        max_phi=max_phi,
    )
    spec.x0 = SubSolutionRecipe.X0_FACTOR * min(x0_upper_bound(spec), x0_anchor_bound(spec))

    logger.info(
        f"하위해 구성 - cA={cA}, c={c:.6f}, η={eta:.4g}, S={S:.4g}, σ={sigma:.3e}, "
        f"R={R}, r={r:.4g}, γ={gamma:.3e}, x0={spec.x0:.4f}"
    )
    return spec.validate()


def _plateau_offset(lam: float, mu: float, S: float, sigma: float) -> float:
    """x1: P(ln S/η + x) = σ/2 의 최소 양의 해 (P 증가 구간에서 이분법)"""

    eta = mu - lam
    shift = math.log(S) / eta
    peak = math.log(mu / lam) / eta

    def excess(x: float) -> float:
        s = shift + x
        return math.exp(-lam * s) - S * math.exp(-mu * s) - sigma / 2.0

    if not excess(peak) > 0:
        raise ValidationError(f"σ/2 = {sigma / 2} 가 max P 이상입니다")
    return optimize.bisect(excess, 0.0, peak, xtol=1e-14 * max(1.0, peak), maxiter=500)


def _converged_eigenpair(params: GrowthParams, lambda1: float, delta: float) -> TruncatedEigenpair:
    """R = 2, 4, 8, ... 에서 |λᴿ - λ₁| < δ/2 인 첫 절단 고유쌍 (노드 샘플링)"""

    m = params.profile()
    R = SubSolutionRecipe.INITIAL_HALF_WIDTH
    while R <= SubSolutionRecipe.MAX_HALF_WIDTH:
        n = int(math.ceil(2.0 * R / SubSolutionRecipe.EIGEN_SPACING))
        if n > EigenTolerances.MAX_NODES:
            break
        pair = truncated_eigenpair(m, params.L, R, n, sampling="midpoint")
        gap = abs(pair.lambda1 - lambda1)
        logger.debug(f"  R={R}: λᴿ={pair.lambda1:.10f}, |λᴿ-λ₁|={gap:.3e}")
        if gap < delta / 2.0:
            return pair
        R *= 2.0

    raise ValidationError(f"R ≤ {SubSolutionRecipe.MAX_HALF_WIDTH} 에서 |λᴿ - λ₁| < δ/2 = {delta / 2} 를 만족하지 못했습니다")


def _increasing_reach(pair: TruncatedEigenpair, cA: float) -> float:
    """y ↦ e^{-cA L y/2} φᴿ(y) 가 -R 부터 증가하는 구간의 길이"""

    weight = np.exp(-cA * pair.L * pair.y / 2.0) * pair.phi
    steps = np.diff(weight)
    stop = int(np.argmax(steps <= 0)) if np.any(steps <= 0) else len(steps)
    return float(pair.y[stop] + pair.R)


# ============================================================
# X(t)
# ============================================================


@dataclass
class InterfaceTrace:
    """P = Q 경계 X(t) 추적 결과"""

    times: np.ndarray
    X: np.ndarray
    offsets: np.ndarray  # X - (cA t - RL)
    left_slopes: np.ndarray  # ι ∂x P (X⁻)
    right_slopes: np.ndarray  # ι ∂x Q (X⁺)
    properties: Dict[str, bool] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)
    max_speed_deviation: float = 0.0
    admissible: bool = True

    @property
    def passed(self) -> bool:
        return self.admissible and all(self.properties.values())

    def rows(self) -> List[List[float]]:
        return [
            [float(t), float(x), float(d), float(a), float(b)]
            for t, x, d, a, b in zip(self.times, self.X, self.offsets, self.left_slopes, self.right_slopes)
        ]


def _interface_offset(spec: SubSolutionSpec, t: float) -> Optional[float]:
    """(0, rL) 에서 P̃ - Q̃ = 0 의 해, 부호 변화 없으면 None"""

    L = spec.params.L
    upper = spec.r * L

    def gap(d: float) -> float:
        return float(spec.scaled_P(t, d) - spec.scaled_Q(d))

    if not (gap(0.0) > 0 and gap(upper) < 0):
        return None
    # offset 이 지수적으로 작으므로 상대 정밀도로 종료
    return optimize.bisect(gap, 0.0, upper, xtol=np.finfo(float).tiny, rtol=4 * np.finfo(float).eps, maxiter=5000)


def solve_interface(spec: SubSolutionSpec, times) -> InterfaceTrace:
    """
    각 t 에서 X(t) 를 풀고 성질 확인

    (a) ∂x P(X) < 0, (b) ∂x Q(X) > 0, (c) cA t - RL < X < cA t,
    (d) ln S/η < inf (X - ct - x0), (e) 횡단성 ∂x(P - Q) < 0,
    (f) |X - cA t| ≤ RL
    """

    times = np.asarray(times, dtype=float)
    RL = spec.patch_reach
    offsets = np.full(times.size, np.nan)
    left = np.full(times.size, np.nan)
    right = np.full(times.size, np.nan)
    trace = InterfaceTrace(times=times, X=np.full(times.size, np.nan), offsets=offsets,
                           left_slopes=left, right_slopes=right)

    for i, t in enumerate(times):
        d = _interface_offset(spec, t)
        if d is None:
            trace.admissible = False
            trace.violations.append(f"t={t}: (cA t - RL, cA t - (R-r)L) 에서 P - Q 부호 변화 없음")
            continue
        g = math.exp(-spec.beta * t)
        offsets[i] = d
        trace.X[i] = spec.cA * t - RL + d
        left[i] = spec.iota * g * spec.P_slope(spec.start_offset + (spec.cA - spec.c) * t + d)
        right[i] = spec.iota * g * spec.scaled_Q_slope(d)

    if not trace.admissible:
        trace.properties = {key: False for key in "abcdef"}
        logger.warning(f"X(t) 추적 실패 - {len(trace.violations)}개 시각에서 해 없음")
        return trace

    s_at_X = spec.start_offset + (spec.cA - spec.c) * times + offsets
    trace.properties = {
        "a": bool(np.all(left < 0)),
        "b": bool(np.all(right > 0)),
        "c": bool(np.all((offsets > 0) & (offsets < RL))),
        "d": bool(spec.shift < s_at_X.min()),
        "e": bool(np.all(left - right < 0)),
        "f": bool(np.all(np.abs(trace.X - spec.cA * times) <= RL)),
    }
    for key, ok in trace.properties.items():
        if not ok:
            trace.violations.append(f"성질 ({key}) 위반")

    if times.size > 1:
        speeds = np.diff(trace.X) / np.diff(times)
        trace.max_speed_deviation = float(np.max(np.abs(speeds - spec.cA)))

    logger.info(
        f"X(t) 추적 - {times.size}개 시각, offset 범위 [{offsets.min():.3e}, {offsets.max():.3e}], "
        f"성질 통과={trace.passed}"
    )
    return trace


# ============================================================
# 하위해 검증
# ============================================================


@dataclass
class SubSolutionReport:
    """조각별 상대 잔차 N/u ≤ tol 및 경계 기울기 조건"""

    samples: int
    max_relative_residual: float
    max_residual: float
    violations: List[Dict[str, float]] = field(default_factory=list)
    interfaces: List[Dict[str, float]] = field(default_factory=list)
    ordering_ok: bool = True
    interface_trace: Optional[InterfaceTrace] = None
    passed: bool = False


def check_subsolution(
    spec: SubSolutionSpec,
    t_samples: int = SubSolutionRecipe.TIME_SAMPLES,
    x_samples: int = SubSolutionRecipe.SPACE_SAMPLES,
    horizon: float = SubSolutionRecipe.TIME_HORIZON,
    tol: float = SubSolutionRecipe.RESIDUAL_TOL,
) -> SubSolutionReport:
    """
    N[u̲] = ∂t u̲ - ∂xx u̲ - (r u̲ - M u̲²) ≤ 0 를 조각별 닫힌 형태로 확인

    Q 조각은 φᴿ 격자 노드에서 이산 2계 차분으로 평가 (격자 고유관계가 정확히 성립하는 점).
    """

    spec.validate()
    times = np.linspace(0.0, horizon, t_samples)
    trace = solve_interface(spec, times)
    report = SubSolutionReport(samples=0, max_relative_residual=-math.inf, max_residual=-math.inf,
                               interface_trace=trace)
    if not trace.admissible:
        report.violations.append({"piece": "interface", "t": math.nan, "x": math.nan, "relative": math.inf})
        logger.warning("하위해 검증 실패 - X(t) 를 구할 수 없음")
        return report

    traj = Trajectory.linear(spec.cA)
    per_piece = max(x_samples // 4, 2)
    m = spec.params.profile()

    for i, t in enumerate(times):
        X, d = float(trace.X[i]), float(trace.offsets[i])
        x_P = spec.shift + spec.x0 + spec.c * t + spec.x1
        if not x_P < X:
            report.ordering_ok = False

        pieces = [
            ("O", *_outer_piece(spec, traj, t, per_piece)),
            ("plateau", *_plateau_piece(spec, traj, t, x_P, per_piece)),
            ("P", *_front_piece(spec, traj, t, d, per_piece)),
            ("Q", *_patch_piece(spec, m, t, d, per_piece)),
        ]
        for name, x, u, rel in pieces:
            report.samples += x.size
            absolute = rel * u
            report.max_relative_residual = max(report.max_relative_residual, float(rel.max()))
            report.max_residual = max(report.max_residual, float(absolute.max()))
            for xi, ri in zip(x[rel > tol], rel[rel > tol]):
                report.violations.append({"piece": name, "t": float(t), "x": float(xi), "relative": float(ri)})

        report.interfaces.extend(_interface_slopes(spec, t, x_P, X, trace.left_slopes[i], trace.right_slopes[i]))

    slopes_ok = all(item["ok"] for item in report.interfaces)
    report.passed = not report.violations and slopes_ok and report.ordering_ok and trace.passed

    logger.info(
        f"하위해 검증 - 샘플 {report.samples}, max N/u={report.max_relative_residual:.3e}, "
        f"위반 {len(report.violations)}, 통과={report.passed}"
    )
    return report


def _outer_piece(spec: SubSolutionSpec, traj: Trajectory, t: float, count: int):
    omega_sq = (math.pi / (2.0 * spec.outer_half_width)) ** 2
    start = spec.left_edge
    stop = start + 5.0 * spec.outer_half_width / 3.0
    x = np.linspace(start, stop, count + 2)[1:-1]
    u = spec.iota * spec.O(x)
    r = eval_r(spec.params, traj, t, x)
    return x, u, omega_sq - r + spec.M * u


def _plateau_piece(spec: SubSolutionSpec, traj: Trajectory, t: float, x_P: float, count: int):
    start = spec.left_edge + 5.0 * spec.outer_half_width / 3.0
    x = np.linspace(start, x_P, count)
    u = np.full_like(x, spec.iota * spec.sigma / 2.0)
    r = eval_r(spec.params, traj, t, x)
    return x, u, -r + spec.M * u


def _front_piece(spec: SubSolutionSpec, traj: Trajectory, t: float, offset: float, count: int):
    # s 좌표로 샘플링 (x0 가 크므로 x - ct - x0 의 상쇄 방지)
    s_start = spec.shift + spec.x1
    s_stop = spec.start_offset + (spec.cA - spec.c) * t + offset
    s = np.linspace(s_start, s_stop, count + 1)[:-1]
    x = spec.x0 + spec.c * t + s
    r = eval_r(spec.params, traj, t, x)

    lam, mu, c = spec.decay, spec.mu, spec.c
    # (∂t - ∂xx - r) e^{-a s} = (c a - a² - r) e^{-a s}
    first = (c * lam - lam * lam - r) * np.exp(-lam * s)
    second = (c * mu - mu * mu - r) * spec.S * np.exp(-mu * s)
    P = spec.P(s)
    u = spec.iota * P
    return x, u, (first - second) / P + spec.M * u


def _patch_piece(spec: SubSolutionSpec, m: StepProfile, t: float, d: float, count: int):
    pair, L, cA = spec.eigen, spec.params.L, spec.cA
    h = pair.y[1] - pair.y[0]
    n = len(pair.y) - 1

    nodes = np.unique(np.linspace(1, n - 1, count).astype(int))
    nodes = nodes[(nodes * h * L >= d) & (pair.phi[nodes] > 0)]
    y = pair.y[nodes]
    phi = pair.phi[nodes]
    laplacian = (pair.phi[nodes + 1] - 2.0 * phi + pair.phi[nodes - 1]) / (h * h)

    xi = L * y
    g = math.exp(-spec.beta * t)
    u = spec.iota * spec.gamma * g * np.exp(-cA * xi / 2.0) * phi
    # 이동 좌표계에서 r(t, cA t + ξ) = m(ξ/L)
    rel = (-spec.beta + cA * cA / 4.0) - laplacian / (L * L * phi) - m(y) + spec.M * u
    return cA * t + xi, u, rel


def _interface_slopes(spec: SubSolutionSpec, t: float, x_P: float, X: float, left_X: float, right_X: float):
    """하위해 꺾임점: 왼쪽 기울기 ≤ 오른쪽 기울기"""

    omega = math.pi / (2.0 * spec.outer_half_width)
    iota, sigma = spec.iota, spec.sigma
    g = math.exp(-spec.beta * t)
    s_P = spec.shift + spec.x1
    support_end = spec.iota * g * spec.scaled_Q_slope(2.0 * spec.patch_reach)

    items = [
        ("left_edge", spec.left_edge, 0.0, iota * sigma * omega),
        ("plateau_start", spec.left_edge + 5.0 * spec.outer_half_width / 3.0,
         iota * sigma * omega * math.cos(5.0 * math.pi / 6.0), 0.0),
        ("plateau_end", x_P, 0.0, iota * float(spec.P_slope(s_P))),
        ("patch_interface", X, float(left_X), float(right_X)),
        ("support_end", spec.cA * t + spec.patch_reach, float(support_end), 0.0),
    ]
    out = []
    for name, x, left, right in items:
        ok = left < 0 < right if name == "patch_interface" else left <= right
        out.append({"t": float(t), "name": name, "x": float(x), "left_slope": left, "right_slope": right, "ok": bool(ok)})
    return out
