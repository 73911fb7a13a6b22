"""
Tests for the principal eigenvalue and eigenfunction
"""

import pytest
import sys
import os
import math

import numpy as np

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.constants import EigenCase
from eigen.analytic import (
    critical_length,
    critical_r2,
    lambda1_analytic,
    length_for_lambda1,
    resolve_length,
)
from eigen import truncated
from eigen.eigenfunction import eigenfunction
from eigen.truncated import (
    lambda1_general,
    lambda1_numeric,
    lambda1_truncated,
    run_ladder,
    truncated_eigenpair,
)
from model.growth import GrowthParams, StepProfile
from utils.errors import ValidationError


# (1, 9, 4) 에서 λ₁ = -77/13 이 되는 길이
PARTICULAR_L = 0.5 * math.pi * math.sqrt(13.0 / 40.0)


def _interior_samples(n=200):
    """Points strictly inside each of the three pieces"""
    return np.concatenate(
        (
            np.linspace(-4.0, -1e-3, n),
            np.linspace(1e-3, 1.0 - 1e-3, n),
            np.linspace(1.0 + 1e-3, 5.0, n),
        )
    )


class TestCriticalLength:
    """Critical patch length"""

    def test_closed_form(self):
        expected = (0.5 * math.pi - math.atan(math.sqrt(5.0 / 3.0))) / math.sqrt(5.0)
        assert critical_length(1.0, 9.0, 4.0) == pytest.approx(expected, abs=1e-14)
        assert critical_length(1.0, 9.0, 4.0) == pytest.approx(0.29474, abs=1e-5)

    def test_symmetric_outer_rates(self):
        """Equal outer rates have no critical length"""
        assert critical_length(1.0, 9.0, 1.0) == 0.0

    def test_requires_two_interface(self):
        with pytest.raises(ValidationError):
            critical_length(1.0, 3.0, 4.0)

    def test_critical_r2_inverts_length(self):
        """L̄(r̲2) = L"""
        r2 = critical_r2(1.0, 4.0, 0.3)
        assert r2 > 4.0
        assert critical_length(1.0, r2, 4.0) == pytest.approx(0.3, rel=1e-9)


class TestAnalyticEigenvalue:
    """Closed-form principal eigenvalue"""

    def test_particular_value(self):
        """Known exact eigenvalue -77/13"""
        result = lambda1_analytic(GrowthParams(1.0, 9.0, 4.0, PARTICULAR_L))
        assert result.lambda1 == pytest.approx(-77.0 / 13.0, abs=1e-10)
        assert result.case == EigenCase.INTERIOR

    def test_short_patch_is_critical(self):
        """L below L̄ leaves λ₁ at -max(r1, r3)"""
        result = lambda1_analytic(GrowthParams(1.0, 9.0, 4.0, 0.2))
        assert result.lambda1 == -4.0
        assert result.case == EigenCase.RIGHT_CRITICAL

        mirrored = lambda1_analytic(GrowthParams(4.0, 9.0, 1.0, 0.2))
        assert mirrored.lambda1 == -4.0
        assert mirrored.case == EigenCase.LEFT_CRITICAL

    def test_boundary_length_is_critical(self):
        """L = L̄ belongs to the critical branch"""
        L_bar = critical_length(1.0, 9.0, 4.0)
        result = lambda1_analytic(GrowthParams(1.0, 9.0, 4.0, L_bar))
        assert result.case == EigenCase.RIGHT_CRITICAL
        assert result.C4 == pytest.approx(0.0, abs=1e-10)

    def test_symmetry(self):
        """Swapping r1 and r3 leaves λ₁ unchanged"""
        for L in (0.1, 0.5, 1.3, 4.0):
            a = lambda1_analytic(GrowthParams(1.0, 9.0, 4.0, L)).lambda1
            b = lambda1_analytic(GrowthParams(4.0, 9.0, 1.0, L)).lambda1
            assert a == pytest.approx(b, abs=1e-12)

    def test_monotone_in_length(self):
        """Constant up to L̄, then strictly decreasing toward -r2"""
        L_bar = critical_length(1.0, 9.0, 4.0)
        lengths = np.linspace(L_bar * 1.01, 6.0, 40)
        values = [lambda1_analytic(GrowthParams(1.0, 9.0, 4.0, float(L))).lambda1 for L in lengths]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert values[-1] > -9.0
        assert lambda1_analytic(GrowthParams(1.0, 9.0, 4.0, 40.0)).lambda1 == pytest.approx(-9.0, abs=1e-2)

    def test_monotone_in_r2(self):
        """Strictly decreasing past the critical r2"""
        r2_min = critical_r2(1.0, 4.0, 0.5)
        grid = np.linspace(r2_min + 0.1, r2_min + 20.0, 30)
        values = [lambda1_analytic(GrowthParams(1.0, float(r2), 4.0, 0.5)).lambda1 for r2 in grid]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_requires_two_interface(self):
        with pytest.raises(ValidationError):
            lambda1_analytic(GrowthParams(1.0, 4.0, 4.0, 1.0))


class TestInverseLength:
    """Length from a prescribed eigenvalue"""

    def test_symmetric_closed_form(self):
        """(1, 9, 1, -4): ζ = 1/√15"""
        expected = (0.5 * math.pi - math.atan(1.0 / math.sqrt(15.0))) / math.sqrt(5.0)
        assert length_for_lambda1(1.0, 9.0, 1.0, -4.0) == pytest.approx(expected, abs=1e-14)
        assert expected == pytest.approx(0.589479, abs=1e-6)

    def test_particular_length(self):
        assert length_for_lambda1(1.0, 9.0, 4.0, -77.0 / 13.0) == pytest.approx(PARTICULAR_L, abs=1e-12)

    def test_round_trip(self):
        """λ₁(L(λ)) = λ for random admissible λ"""
        rng = np.random.default_rng(7)
        for lam in rng.uniform(-8.999, -4.001, 50):
            L = length_for_lambda1(1.0, 9.0, 4.0, float(lam))
            assert lambda1_analytic(GrowthParams(1.0, 9.0, 4.0, L)).lambda1 == pytest.approx(lam, abs=1e-9)

    def test_out_of_range(self):
        with pytest.raises(ValidationError):
            length_for_lambda1(1.0, 9.0, 4.0, -3.0)
        with pytest.raises(ValidationError):
            length_for_lambda1(1.0, 9.0, 4.0, -9.0)

    def test_resolve_length(self):
        """Critical λ₁ maps to L̄, explicit L passes through"""
        assert resolve_length(1.0, 9.0, 4.0, L=0.7) == 0.7
        assert resolve_length(1.0, 9.0, 4.0, lambda1=-4.0) == critical_length(1.0, 9.0, 4.0)
        with pytest.raises(ValidationError):
            resolve_length(1.0, 9.0, 1.0, lambda1=-1.0)
        with pytest.raises(ValidationError):
            resolve_length(1.0, 9.0, 4.0)


class TestEigenfunction:
    """Piecewise closed-form eigenfunction"""

    @pytest.mark.parametrize(
        "params",
        [
            GrowthParams(1.0, 9.0, 4.0, PARTICULAR_L),
            GrowthParams(1.0, 9.0, 4.0, 0.2),
            GrowthParams(4.0, 9.0, 1.0, 0.2),
            GrowthParams(1.0, 9.0, 1.0, 0.589479),
        ],
    )
    def test_residual_and_matching(self, params):
        """Eigen equation holds per piece with C¹ matching at 0 and 1"""
        phi = eigenfunction(params, lambda1_analytic(params))
        y = _interior_samples()
        values = phi.value(y)
        residual = np.abs(phi.residual(y))
        assert np.all(residual < 1e-9 * np.maximum(1.0, values))

        for name, error in phi.matching_errors().items():
            assert error < 1e-10, name

    @pytest.mark.parametrize("r1, r3", [(1.0, 4.0), (4.0, 1.0)])
    def test_normalized_and_positive(self, r1, r3):
        for L in (0.2, 1.0):
            params = GrowthParams(r1, 9.0, r3, L)
            phi = eigenfunction(params, lambda1_analytic(params))
            assert phi.value(0.0) == pytest.approx(1.0, abs=1e-12)
            assert np.all(phi.value(np.linspace(-6.0, 7.0, 500)) > 0)

    def test_mismatched_params(self):
        params = GrowthParams(1.0, 9.0, 4.0, 1.0)
        with pytest.raises(ValidationError):
            eigenfunction(params.with_length(2.0), lambda1_analytic(params))

    def test_numeric_result_has_no_eigenfunction(self):
        params = GrowthParams(1.0, 9.0, 4.0, PARTICULAR_L)
        with pytest.raises(ValidationError):
            eigenfunction(params, lambda1_numeric(params))


class TestTruncatedEigenvalue:
    """Dirichlet eigenvalue on (-R, R)"""

    def test_matches_particular_value(self):
        m = GrowthParams(1.0, 9.0, 4.0, PARTICULAR_L).profile()
        lam = lambda1_truncated(m, PARTICULAR_L, 40.0, 16000)
        assert lam == pytest.approx(-77.0 / 13.0, abs=1e-3)

    def test_constant_profile(self):
        """-r + (π / 2R)² on a uniform potential"""
        lam = lambda1_truncated(StepProfile.constant(1.0), 1.0, 5.0, 2000)
        assert lam == pytest.approx(-1.0 + (math.pi / 10.0) ** 2, abs=1e-4)

    def test_monotone_in_half_width(self):
        """Nested grids give non-increasing values"""
        m = GrowthParams(1.0, 9.0, 4.0, 1.0).profile()
        small = lambda1_truncated(m, 1.0, 5.0, 1000)
        large = lambda1_truncated(m, 1.0, 10.0, 2000)
        assert large <= small + 1e-10

    def test_midpoint_sampling(self):
        m = GrowthParams(1.0, 9.0, 4.0, PARTICULAR_L).profile()
        lam = lambda1_truncated(m, PARTICULAR_L, 40.0, 16000, sampling="midpoint")
        assert lam == pytest.approx(-77.0 / 13.0, abs=5e-2)

    def test_eigenpair_normalized(self):
        m = GrowthParams(1.0, 9.0, 4.0, PARTICULAR_L).profile()
        pair = truncated_eigenpair(m, PARTICULAR_L, 20.0, 8000)
        assert pair.value(0.0) == pytest.approx(1.0)
        assert pair.phi[0] == 0.0 and pair.phi[-1] == 0.0
        assert np.all(pair.phi >= 0.0)
        assert pair.value_from_left(20.0) == pytest.approx(1.0)

    def test_invalid_inputs(self):
        m = StepProfile.constant(1.0)
        with pytest.raises(ValidationError):
            lambda1_truncated(m, 1.0, 5.0, 2)
        with pytest.raises(ValidationError):
            lambda1_truncated(m, 1.0, -5.0, 100)
        with pytest.raises(ValidationError):
            lambda1_truncated(m, 1.0, 5.0, 100, sampling="bogus")


def _random_interior_sets(count=25, seed=20240611):
    """(r1, r2, r3, L) with λ₁ kept away from both ends of (-r2, -max(r1, r3))"""
    rng = np.random.default_rng(seed)
    sets = []
    for _ in range(count):
        r1, r3 = rng.uniform(0.5, 5.0, size=2)
        top = max(r1, r3)
        r2 = top + rng.uniform(1.0, 10.0)
        gap = r2 - top
        lam = rng.uniform(-r2 + 0.1 * gap, -top - 0.1 * gap)
        sets.append((float(r1), float(r2), float(r3), length_for_lambda1(r1, r2, r3, lam)))
    return sets


RANDOM_SETS = _random_interior_sets()


class TestLadder:
    """R-ladder limit"""

    def test_matches_analytic(self):
        params = GrowthParams(1.0, 9.0, 4.0, PARTICULAR_L)
        assert lambda1_numeric(params).lambda1 == pytest.approx(-77.0 / 13.0, abs=1e-3)

    @pytest.mark.parametrize("r1, r2, r3, L", RANDOM_SETS)
    def test_random_sets_match_analytic(self, r1, r2, r3, L):
        params = GrowthParams(r1, r2, r3, L)
        numeric = lambda1_numeric(params).lambda1
        analytic = lambda1_analytic(params).lambda1
        assert abs(numeric - analytic) < 1e-4

    @pytest.mark.parametrize("sampling", ["average", "midpoint"])
    @pytest.mark.parametrize("shift", [2.5, -0.5])
    def test_potential_shift(self, sampling, shift):
        """Adding a constant to m moves every truncated eigenvalue by minus that constant"""
        m = StepProfile((0.0, 1.0), (1.0, 9.0, 4.0))
        shifted = m.shifted(shift)
        base = lambda1_truncated(m, PARTICULAR_L, 10.0, 4000, sampling)
        assert lambda1_truncated(shifted, PARTICULAR_L, 10.0, 4000, sampling) == pytest.approx(base - shift, abs=1e-9)

    def test_default_sampling_is_cell_average(self):
        m = StepProfile((0.0, 1.0), (1.0, 9.0, 4.0))
        assert lambda1_truncated(m, 1.0, 8.0, 1001) == lambda1_truncated(m, 1.0, 8.0, 1001, "average")

    def test_constant_profile_extrapolates(self):
        """1/R² tail is removed by the Richardson estimate"""
        result = run_ladder(StepProfile.constant(1.0), 1.0)
        assert result.extrapolated
        assert result.estimate == pytest.approx(-1.0, abs=1e-5)
        assert all(b <= a + 1e-10 for a, b in zip(result.values, result.values[1:]))

    def test_extrapolation_is_logged_as_warning(self, monkeypatch):
        messages = []
        monkeypatch.setattr(truncated.logger, "warning", lambda msg, *a, **kw: messages.append(msg))
        run_ladder(StepProfile.constant(1.0), 1.0)
        assert any("Richardson" in msg for msg in messages)

    def test_heaviside_step(self):
        """Single step reaches -max(r1, r3)"""
        lam = lambda1_general(StepProfile.heaviside(1.0, 4.0), 1.0, tol=1e-4)
        assert lam == pytest.approx(-4.0, abs=1e-3)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
