"""
Basic health check tests for CI/CD pipeline
"""

import pytest
import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


class TestHealthCheck:
    """Basic health check tests"""

    def test_imports(self):
        """Test that config modules can be imported"""
        from config import constants
        from config import settings
        assert constants.SystemConfig.TOOL_NAME
        assert settings.LabSettings

    def test_utils_import(self):
        """Test utility modules import"""
        from utils import errors
        from utils import logger
        from utils import run_manifest
        assert issubclass(errors.ValidationError, errors.LabError)
        assert logger.get_logger("health").name == "health"
        assert run_manifest.OutputWriter

    def test_numeric_modules_import(self):
        """Test eigenvalue / speed / simulation modules import"""
        from model import growth, scenario
        from eigen import analytic, eigenfunction, truncated
        from speed import predictor
        from sim import solver, tracking
        assert predictor.F

    def test_verify_modules_import(self):
        """Test verification and optimizer modules import"""
        from verify import scenarios, subsolution, supersolution
        from optimize import bang_bang
        from jobs import reproduce_figures
        assert reproduce_figures.FigureReproducer

    def test_cli_import(self):
        """Test CLI parser builds"""
        import app
        parser = app.build_parser()
        assert parser.prog == "app.py"


class TestConfiguration:
    """Configuration tests"""

    def test_env_example_exists(self):
        """Test .env.example file exists"""
        assert os.path.exists(os.path.join(ROOT, ".env.example")), ".env.example file should exist"

    def test_requirements_exists(self):
        """Test requirements.txt exists"""
        assert os.path.exists(os.path.join(ROOT, "requirements.txt")), "requirements.txt file should exist"

    def test_pytest_ini_skips_slow(self):
        """Test slow desk-scale runs are opt-in"""
        with open(os.path.join(ROOT, "pytest.ini"), encoding="utf-8") as f:
            assert 'not slow' in f.read()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
