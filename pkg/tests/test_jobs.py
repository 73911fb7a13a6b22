"""
Tests for the figure data batch job
"""

import pytest
import sys
import os
import json

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from jobs.reproduce_figures import PARAMETER_SETS, FigureReproducer


class TestFigureReproducer:
    """Prediction curves written as CSV"""

    @pytest.fixture
    def result(self, tmp_path):
        return FigureReproducer(str(tmp_path), points=25).run()

    def test_files_written(self, tmp_path, result):
        names = sorted(os.listdir(tmp_path))
        for name, *_ in PARAMETER_SETS:
            assert f"speed_curve_{name}.csv" in names
        assert "single_transition_r1_4_r3_1.csv" in names
        assert "single_transition_r1_1_r3_4.csv" in names
        assert "c_star_vs_lambda1.csv" in names
        assert "manifest.json" in names
        assert len(result["files"]) == len(names)

    def test_curve_rows(self, tmp_path, result):
        with open(tmp_path / "speed_curve_a.csv", encoding="utf-8") as f:
            lines = f.read().splitlines()
        assert lines[0] == "cA,regime,c_star"
        assert len(lines) == 26
        regimes = {line.split(",")[1] for line in lines[1:]}
        assert regimes == {"Slow", "Locked", "NonlocallyPulled", "Fast"}

    def test_critical_sets_share_length(self, tmp_path, result):
        with open(tmp_path / "figures.json", encoding="utf-8") as f:
            summary = json.load(f)
        # λ₁ = -4 = -max(r1, r3) puts sets c and e at their critical lengths
        assert summary["lengths"]["e"] == pytest.approx(0.2947397, abs=1e-6)
        assert summary["lengths"]["a"] == pytest.approx(0.5894794, abs=1e-6)

    def test_deterministic(self, tmp_path):
        first = FigureReproducer(str(tmp_path / "one"), points=10).run()
        second = FigureReproducer(str(tmp_path / "two"), points=10).run()
        for a, b in zip(sorted(first["files"]), sorted(second["files"])):
            if a.endswith("manifest.json"):
                continue
            with open(a, encoding="utf-8") as fa, open(b, encoding="utf-8") as fb:
                assert fa.read() == fb.read()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
