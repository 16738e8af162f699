"""
Tests for environment configuration and run options.
"""
from fractions import Fraction

import pytest
from pydantic import ValidationError

from app.core.config import get_default_family, get_epsilon, get_log_level, get_max_iterations
from app.core.exceptions import ConfigurationError
from app.schemas.run_config import RunConfig


class TestEnvironment:
    """Test FLP_* variables"""

    def test_defaults(self, monkeypatch):
        """Test values used when nothing is set"""
        for name in ("FLP_MAX_ITERATIONS", "FLP_EPSILON", "FLP_DEFAULT_FAMILY", "FLP_LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)
        assert get_max_iterations() == 100_000
        assert get_epsilon() == Fraction(1, 10 ** 9)
        assert get_default_family() == "G"
        assert get_log_level() == "WARNING"

    def test_invalid_values(self, monkeypatch):
        """Test malformed variables raise ConfigurationError"""
        monkeypatch.setenv("FLP_MAX_ITERATIONS", "-3")
        with pytest.raises(ConfigurationError):
            get_max_iterations()
        monkeypatch.setenv("FLP_EPSILON", "tiny")
        with pytest.raises(ConfigurationError):
            get_epsilon()
        monkeypatch.setenv("FLP_LOG_LEVEL", "loud")
        with pytest.raises(ConfigurationError):
            get_log_level()


class TestRunConfig:
    """Test option validation"""

    def test_grid_notation(self):
        """Test n and 1/n are both accepted"""
        assert RunConfig(command="stable", enumerate=True, grid="1/10").grid == 10
        assert RunConfig(command="stable", enumerate=True, grid="4").grid == 4
        with pytest.raises(ValidationError):
            RunConfig(command="kk", grid="0.1")

    def test_policy(self):
        """Test exact and approximate policies"""
        assert RunConfig(command="wf", max_iters=5).policy().max_iterations == 5
        policy = RunConfig(command="wf", mode="approx", epsilon="1e-3").policy()
        assert policy.epsilon == Fraction(1, 1000)
        assert not policy.is_exact

    def test_rejected_combinations(self):
        """Test inconsistent option sets"""
        with pytest.raises(ValidationError):
            RunConfig(command="kk", epsilon="1e-3")
        with pytest.raises(ValidationError):
            RunConfig(command="stable", witness="p=1", enumerate=True, grid=2)
        with pytest.raises(ValidationError):
            RunConfig(command="ultimate-wf", method="grid")
        with pytest.raises(ValidationError):
            RunConfig(command="wf", epsilon="-1", mode="approx")

    def test_unknown_command(self):
        """Test commands outside the fixed set"""
        with pytest.raises(ValidationError):
            RunConfig(command="solve")
