"""
Tests for the spreading-speed predictors
"""

import pytest
import sys
import os
import math

import numpy as np

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.constants import Regime
from eigen.analytic import critical_length, length_for_lambda1
from model.growth import GrowthParams, StepProfile
from speed.predictor import (
    F,
    classify,
    decay_rate,
    predict_general_profile,
    predict_single_transition,
    predict_two_interface,
    pulling_possible,
    sweep_cA,
    sweep_lambda1,
    threshold_gaps,
)
from utils.errors import ValidationError


SQRT3 = math.sqrt(3.0)
F5 = (5.0 - 2.0 * SQRT3) / 2.0 + 2.0 / (5.0 - 2.0 * SQRT3)


@pytest.fixture(scope="module")
def set_a():
    """r = (1, 9, 1) with λ₁ = -4"""
    return GrowthParams(1.0, 9.0, 1.0, length_for_lambda1(1.0, 9.0, 1.0, -4.0))


class TestDecayRate:
    """Smaller root of λ² - cλ + r"""

    @pytest.mark.parametrize("r, c, expected", [(1.0, 2.0, 1.0), (1.0, 2.5, 0.5), (4.0, 5.0, 1.0)])
    def test_examples(self, r, c, expected):
        assert decay_rate(r, c) == pytest.approx(expected, abs=1e-14)

    def test_root_identity(self):
        for c in np.linspace(2.0, 30.0, 50):
            lam = decay_rate(1.0, float(c))
            assert lam * (c - lam) == pytest.approx(1.0, rel=1e-12)

    def test_below_minimal_speed(self):
        with pytest.raises(ValidationError):
            decay_rate(1.0, 1.9)


class TestPullingFunction:
    """Nonlocal pulling speed F"""

    def test_fixed_point(self):
        """F(2√(-λ₁)) = 2√(-λ₁)"""
        assert F(4.0, 1.0, -4.0) == pytest.approx(4.0, abs=1e-12)

    def test_right_end(self):
        """F(2√r1 + 2√(-λ₁-r1)) = 2√r1"""
        assert F(2.0 + 2.0 * SQRT3, 1.0, -4.0) == pytest.approx(2.0, abs=1e-12)

    def test_value(self):
        assert F(5.0, 1.0, -4.0) == pytest.approx(F5, abs=1e-12)
        assert F5 == pytest.approx(2.070119, abs=1e-6)

    def test_decreasing_and_bounded(self):
        """2√r1 ≤ F(c) < c on the pulling interval"""
        grid = np.linspace(4.0 + 1e-6, 2.0 + 2.0 * SQRT3, 100)
        values = [F(float(c), 1.0, -4.0) for c in grid]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert all(2.0 - 1e-12 <= v < c for v, c in zip(values, grid))

    def test_domain(self):
        with pytest.raises(ValidationError):
            F(2.0 * SQRT3, 1.0, -4.0)
        with pytest.raises(ValidationError):
            F(5.0, 1.0, -0.5)


class TestTwoInterface:
    """Four-regime formula for the moving patch"""

    @pytest.mark.parametrize(
        "cA, regime, c_star",
        [
            (1.0, Regime.SLOW, 2.0),
            (3.0, Regime.LOCKED, 3.0),
            (5.0, Regime.NONLOCALLY_PULLED, F5),
            (6.0, Regime.FAST, 2.0),
        ],
    )
    def test_parameter_set_a(self, set_a, cA, regime, c_star):
        pred = predict_two_interface(set_a, cA)
        assert pred.regime == regime
        assert pred.c_star == pytest.approx(c_star, abs=1e-8)
        assert pred.lambda1 == pytest.approx(-4.0, abs=1e-9)

    def test_locked_endpoints(self):
        """Locked includes both 2√r3 and 2√(-λ₁)"""
        assert classify(1.0, 1.0, -4.0, 2.0).regime == Regime.LOCKED
        assert classify(1.0, 1.0, -4.0, 4.0).regime == Regime.LOCKED
        assert classify(1.0, 1.0, -4.0, 2.0 + 2.0 * SQRT3).regime == Regime.FAST

    def test_speed_bounds(self, set_a):
        """2√min(r1, r3) ≤ c* ≤ 2√r2"""
        for pred in sweep_cA(set_a, 0.1, 12.0, 300):
            assert 2.0 - 1e-12 <= pred.c_star <= 6.0

    def test_continuity_at_thresholds(self):
        for lam in (-4.0, -6.5, -8.9):
            assert max(threshold_gaps(1.0, 1.0, lam)) < 1e-6
            assert max(threshold_gaps(1.0, 4.0, min(lam, -4.0))) < 1e-6

    def test_critical_matches_single_transition(self):
        """L ≤ L̄ reduces to the single transition"""
        for r1, r3 in ((1.0, 4.0), (4.0, 1.0)):
            params = GrowthParams(r1, 9.0, r3, 0.9 * critical_length(r1, 9.0, r3))
            for cA in np.linspace(0.05, 10.0, 100):
                two = predict_two_interface(params, float(cA))
                one = predict_single_transition(r1, r3, float(cA))
                assert two.c_star == pytest.approx(one.c_star, abs=1e-12)

    def test_intervals_never_both_empty(self):
        """Locking and pulling intervals cannot vanish together"""
        for r1, r3 in ((1.0, 4.0), (4.0, 1.0), (1.0, 1.0)):
            for lam in np.linspace(-16.0, -max(r1, r3), 20):
                t_slow, t_lock, t_fast = classify(r1, r3, float(lam), 1.0).thresholds
                assert t_lock > t_slow or t_fast > t_lock

    def test_requires_positive_speed(self, set_a):
        with pytest.raises(ValidationError):
            predict_two_interface(set_a, 0.0)

    def test_requires_two_interface(self):
        with pytest.raises(ValidationError):
            predict_two_interface(GrowthParams(1.0, 1.0, 1.0, 1.0), 3.0)

    def test_pulling_possible(self, set_a):
        assert pulling_possible(set_a)
        assert not pulling_possible(GrowthParams(4.0, 9.0, 1.0, 0.2))


class TestSingleTransition:
    """Six-case single transition formula"""

    def test_locked(self):
        pred = predict_single_transition(4.0, 1.0, 3.0)
        assert pred.regime == Regime.LOCKED
        assert pred.c_star == 3.0

    def test_pulled(self):
        pred = predict_single_transition(1.0, 4.0, 5.0)
        assert pred.regime == Regime.NONLOCALLY_PULLED
        assert pred.c_star == pytest.approx(F5, abs=1e-12)

    def test_slow(self):
        pred = predict_single_transition(1.0, 4.0, 1.0)
        assert pred.regime == Regime.SLOW
        assert pred.c_star == 4.0

    def test_fast(self):
        assert predict_single_transition(4.0, 1.0, 5.0).c_star == 4.0
        assert predict_single_transition(1.0, 4.0, 6.0).c_star == 2.0

    def test_zero_speed_allowed(self):
        assert predict_single_transition(1.0, 4.0, 0.0).c_star == 4.0

    def test_equal_rates(self):
        for cA in (0.5, 2.0, 7.0):
            assert predict_single_transition(1.0, 1.0, cA).c_star == 2.0


class TestSweeps:
    """Grid evaluations"""

    def test_sweep_cA_grid(self, set_a):
        rows = sweep_cA(set_a, 1.0, 6.0, 11, -4.0)
        assert [p.cA for p in rows] == pytest.approx(list(np.linspace(1.0, 6.0, 11)))

    def test_sweep_lambda1_monotone(self):
        """More negative λ₁ never lowers c* at fixed cA"""
        rows = sweep_lambda1(1.0, 16.0, 4.0, 7.0, -16.0, -4.0, 60)
        speeds = [p.c_star for p in rows]
        assert all(a >= b - 1e-12 for a, b in zip(speeds, speeds[1:]))

    def test_sweep_bad_range(self, set_a):
        with pytest.raises(ValidationError):
            sweep_cA(set_a, 3.0, 1.0, 5)
        with pytest.raises(ValidationError):
            sweep_lambda1(1.0, 16.0, 4.0, 7.0, -20.0, -4.0, 10)

    def test_general_profile(self):
        """Numeric λ₁ reproduces the two-interface prediction"""
        params = GrowthParams(1.0, 9.0, 1.0, length_for_lambda1(1.0, 9.0, 1.0, -4.0))
        pred = predict_general_profile(params.profile(), 5.0, params.L)
        assert pred.regime == Regime.NONLOCALLY_PULLED
        assert pred.c_star == pytest.approx(F5, abs=1e-3)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
