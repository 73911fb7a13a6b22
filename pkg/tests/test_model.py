"""
Tests for growth fields, patch trajectories and the KPP reaction
"""

import pytest
import sys
import os

import numpy as np

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from model.growth import (
    GrowthParams,
    KppReaction,
    StepProfile,
    Trajectory,
    eval_A,
    eval_r,
    eval_reaction,
)
from model.scenario import ScenarioConfig
from utils.errors import ValidationError


class TestTrajectory:
    """Patch left-end trajectories"""

    def test_linear_position(self):
        """Linear trajectory moves at constant speed"""
        assert eval_A(Trajectory.linear(2.0), 3.0) == pytest.approx(6.0)

    def test_slow_oscillation_positions(self):
        """Slow oscillation accumulates position piece by piece"""
        traj = Trajectory.slow_oscillation(1.0, 2.0, [10.0, 100.0])
        assert eval_A(traj, 10.0) == pytest.approx(10.0)
        assert eval_A(traj, 100.0) == pytest.approx(190.0)
        assert eval_A(traj, 110.0) == pytest.approx(200.0)

    def test_slow_oscillation_bounds(self):
        """cA1 t <= A(t) < cA2 t for sampled t > 0"""
        traj = Trajectory.slow_oscillation(1.0, 2.0, [10.0, 100.0, 1000.0])
        t = np.linspace(0.5, 2000.0, 400)
        a = eval_A(traj, t)
        assert np.all(1.0 * t <= a + 1e-9)
        assert np.all(a < 2.0 * t)

    def test_position_accepts_arrays(self):
        """Vector input returns an array"""
        a = eval_A(Trajectory.linear(3.0), np.array([0.0, 1.0, 2.0]))
        assert np.allclose(a, [0.0, 3.0, 6.0])

    def test_invalid_trajectories(self):
        """Bad speeds and switch times are rejected"""
        with pytest.raises(ValidationError):
            Trajectory.linear(0.0)
        with pytest.raises(ValidationError):
            Trajectory.slow_oscillation(2.0, 1.0, [10.0])
        with pytest.raises(ValidationError):
            Trajectory.piecewise_linear([10.0, 5.0], [1.0, 2.0, 3.0])
        with pytest.raises(ValidationError):
            Trajectory.piecewise_linear([10.0], [1.0])

    def test_negative_time_rejected(self):
        with pytest.raises(ValidationError):
            eval_A(Trajectory.linear(1.0), -1.0)


class TestGrowthRate:
    """Piecewise constant growth field"""

    def setup_method(self):
        self.params = GrowthParams(1.0, 9.0, 4.0, 1.0)
        self.traj = Trajectory.linear(2.0)

    def test_three_regions(self):
        """Behind, inside and ahead of the patch"""
        assert eval_r(self.params, self.traj, 1.0, 1.5) == 1.0
        assert eval_r(self.params, self.traj, 1.0, 2.5) == 9.0
        assert eval_r(self.params, self.traj, 1.0, 3.5) == 4.0

    def test_half_open_interval(self):
        """Patch is [A, A + L)"""
        assert eval_r(self.params, self.traj, 1.0, 2.0) == 9.0
        assert eval_r(self.params, self.traj, 1.0, 3.0) == 4.0

    def test_exactly_two_jumps(self):
        """Rate has two jumps at A(t) and A(t) + L"""
        for t in (0.0, 1.3, 7.0):
            x = np.linspace(-5.0, 30.0, 3501)
            r = eval_r(self.params, self.traj, t, x)
            jumps = np.nonzero(np.diff(r))[0]
            assert len(jumps) == 2

    def test_invalid_params(self):
        with pytest.raises(ValidationError):
            GrowthParams(1.0, 9.0, 4.0, 0.0)
        with pytest.raises(ValidationError):
            GrowthParams(-1.0, 9.0, 4.0, 1.0)

    def test_two_interface_requirement(self):
        """r2 must exceed both outer rates"""
        with pytest.raises(ValidationError):
            GrowthParams(1.0, 3.0, 4.0, 1.0).require_two_interface()

    def test_profile_matches_field(self):
        """Patch-frame profile evaluates the same three rates"""
        m = self.params.profile()
        assert m(-0.5) == 1.0
        assert m(0.0) == 9.0
        assert m(1.0) == 4.0


class TestReaction:
    """Logistic reaction and its KPP bounds"""

    def test_kpp_bounds(self):
        """r u - M u^2 <= f <= r u on [0, 2]"""
        reaction = KppReaction(M=9.0)
        u = np.linspace(0.0, 2.0, 201)
        for r in (1.0, 4.0, 9.0):
            f = eval_reaction(reaction, r, u)
            assert np.all(f <= r * u + 1e-12)
            assert np.all(f >= reaction.lower_bound(r, u) - 1e-12)

    def test_negative_density_rejected(self):
        with pytest.raises(ValidationError):
            eval_reaction(KppReaction(M=1.0), 1.0, np.array([-0.1]))

    def test_cell_average(self):
        """Cell straddling the jump mixes both values"""
        m = StepProfile.heaviside(1.0, 3.0)
        avg = m.cell_average(np.array([-1.0, 0.0, 1.0]), 0.5)
        assert np.allclose(avg, [1.0, 2.0, 3.0])


class TestScenarioConfig:
    """JSON scenario files"""

    def test_parse_linear(self):
        config = ScenarioConfig.parse(
            '{"r1": 1, "r2": 9, "r3": 4, "L": 1.0, "trajectory": {"type": "Linear", "cA": 3}}'
        )
        params, traj, reaction = config.build()
        assert params == GrowthParams(1.0, 9.0, 4.0, 1.0)
        assert traj.cA == 3.0
        assert reaction.M == 9.0

    def test_parse_lambda1(self):
        """lambda1 is turned into a patch length"""
        config = ScenarioConfig.parse(
            '{"r1": 1, "r2": 9, "r3": 1, "lambda1": -4,'
            ' "trajectory": {"type": "SlowOscillation", "cA1": 4.5, "cA2": 5, "switch_times": [40, 200]}}'
        )
        params, traj, _ = config.build()
        assert params.L == pytest.approx(0.589479, abs=1e-5)
        assert traj.kind == Trajectory.SLOW_OSCILLATION

    def test_missing_key(self):
        with pytest.raises(ValidationError):
            ScenarioConfig.parse('{"r1": 1, "r2": 9, "trajectory": {"type": "Linear", "cA": 3}}')

    def test_malformed_json(self):
        with pytest.raises(ValidationError):
            ScenarioConfig.parse("{not json")

    def test_both_length_and_lambda(self):
        config = ScenarioConfig.parse(
            '{"r1": 1, "r2": 9, "r3": 4, "L": 1, "lambda1": -5,'
            ' "trajectory": {"type": "Linear", "cA": 3}}'
        )
        with pytest.raises(ValidationError):
            config.build()

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError):
            ScenarioConfig.load(str(tmp_path / "missing.json"))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
