"""
Tests for the bang-bang patch optimizer
"""

import pytest
import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from optimize.bang_bang import (
    Budget,
    ProfileCandidate,
    brute_force_optimum,
    evaluate,
    is_contiguous,
    local_search,
)
from utils.errors import ValidationError


@pytest.fixture(scope="module")
def small_budget():
    """Six cells of width 0.5, two of them raised by h = 4"""
    return Budget(r1=1.0, height=4.0, mass=4.0, width=3.0, cells=6)


class TestBudget:
    """Height / mass budget"""

    def test_raised_cells(self):
        assert Budget(1.0, 8.0, 8.0, 3.0, 12).raised_cells == 4

    def test_small_budget(self, small_budget):
        assert small_budget.cell_width == pytest.approx(0.5)
        assert small_budget.raised_cells == 2
        assert list(small_budget.edges()) == pytest.approx([-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5])

    def test_bang_bang_vector(self, small_budget):
        assert small_budget.bang_bang([1, 4]) == (0.0, 4.0, 0.0, 0.0, 4.0, 0.0)

    def test_profile_values(self, small_budget):
        profile = small_budget.profile(small_budget.bang_bang([0]))
        assert profile.values[0] == 1.0
        assert profile.values[1] == 5.0
        assert profile.values[-1] == 1.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(r1=0.0, height=1.0, mass=1.0, width=2.0, cells=4),
            dict(r1=1.0, height=0.0, mass=1.0, width=2.0, cells=4),
            dict(r1=1.0, height=1.0, mass=0.0, width=2.0, cells=4),
            dict(r1=1.0, height=1.0, mass=1.0, width=2.0, cells=0),
            dict(r1=1.0, height=1.0, mass=3.0, width=2.0, cells=4),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            Budget(**kwargs)

    def test_check_bounds(self, small_budget):
        with pytest.raises(ValidationError):
            small_budget.check([5.0, 0, 0, 0, 0, 0])
        with pytest.raises(ValidationError):
            small_budget.check([4.0, 4.0, 4.0, 0, 0, 0])
        with pytest.raises(ValidationError):
            small_budget.profile([1.0, 1.0])


class TestContiguity:
    def test_contiguous(self):
        assert is_contiguous([2, 3, 4])
        assert is_contiguous([4, 2, 3])
        assert is_contiguous([])
        assert not is_contiguous([1, 3])


class TestEvaluate:
    """λ₁ of candidate profiles"""

    def test_raising_lowers_lambda1(self, small_budget):
        flat = evaluate(small_budget, (0.0,) * 6)
        raised = evaluate(small_budget, small_budget.bang_bang([2, 3]))
        assert raised < flat

    def test_translation_invariance(self, small_budget):
        left = evaluate(small_budget, small_budget.bang_bang([0, 1]))
        right = evaluate(small_budget, small_budget.bang_bang([3, 4]))
        assert left == pytest.approx(right, abs=1e-9)


class TestBruteForce:
    def test_optimum_is_contiguous(self, small_budget):
        best = brute_force_optimum(small_budget)
        assert best.evaluations == 15
        assert best.contiguous
        assert best.is_bang_bang
        assert len(best.raised) == 2
        assert best.ties
        assert all(is_contiguous(t) for t in best.ties)

    def test_too_many_cells(self):
        with pytest.raises(ValidationError):
            brute_force_optimum(Budget(1.0, 1.0, 1.0, 17.0, 17))

    def test_more_mass_lowers_optimum(self):
        """Optimal λ₁ strictly decreases as the mass budget A grows"""
        optima = [brute_force_optimum(Budget(1.0, 4.0, mass, 3.0, 6)).lambda1 for mass in (2.0, 4.0, 6.0)]
        assert optima[0] > optima[1] > optima[2]


class TestLocalSearch:
    def test_swap_search_monotone(self, small_budget):
        result = local_search(small_budget, seed=3)
        assert all(b <= a for a, b in zip(result.history, result.history[1:]))
        assert result.lambda1 == result.history[-1]
        assert result.contiguous
        assert len(result.raised) == 2

    def test_swap_search_reaches_brute_force(self, small_budget):
        best = brute_force_optimum(small_budget)
        result = local_search(small_budget, seed=1)
        assert result.lambda1 == pytest.approx(best.lambda1, abs=1e-8)

    def test_relaxed_search_ends_bang_bang(self, small_budget):
        result = local_search(small_budget, relaxed=True)
        assert result.history[0] > result.lambda1
        assert all(b <= a for a, b in zip(result.history, result.history[1:]))
        assert result.is_bang_bang
        small_budget.check(result.increments)

    def test_start_is_validated(self, small_budget):
        with pytest.raises(ValidationError):
            local_search(small_budget, start=[4.0, 4.0, 4.0, 0.0, 0.0, 0.0])

    def test_optimum_start_is_stationary(self, small_budget):
        best = brute_force_optimum(small_budget)
        result = local_search(small_budget, start=best.increments)
        assert result.accepted_moves == 0
        assert result.lambda1 == best.lambda1
        assert result.history == [best.lambda1]


@pytest.mark.slow
class TestTwelveCells:
    """n = 12 cells, k = 4 raised"""

    @pytest.fixture(scope="class")
    def budget(self):
        return Budget(1.0, 8.0, 8.0, 3.0, 12)

    @pytest.fixture(scope="class")
    def best(self, budget):
        return brute_force_optimum(budget)

    def test_ties_are_contiguous(self, budget, best):
        assert best.evaluations == 495
        assert len(best.raised) == 4
        assert best.ties
        assert all(is_contiguous(t) for t in best.ties)

    def test_random_starts_reach_optimum(self, budget, best):
        for seed in range(20):
            result = local_search(budget, seed=seed)
            assert result.lambda1 == pytest.approx(best.lambda1, abs=1e-8), f"seed {seed}"


class TestProfileCandidate:
    def test_rows_and_raised(self):
        candidate = ProfileCandidate((0.0, 2.0, 2.0), -3.0)
        assert candidate.raised == (1, 2)
        assert candidate.is_bang_bang
        assert candidate.rows() == [[0, 0.0], [1, 2.0], [2, 2.0]]

    def test_not_bang_bang(self):
        assert not ProfileCandidate((0.5, 2.0, 0.0), -3.0).is_bang_bang


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
