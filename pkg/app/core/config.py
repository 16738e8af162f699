"""
Application configuration management.

Centralizes environment variables and engine defaults. Per-run options are
validated separately by the RunConfig schema, which takes its defaults from
the getters below.
"""
import os
from fractions import Fraction

from dotenv import load_dotenv

from app.core.exceptions import ConfigurationError

load_dotenv()


DEFAULT_MAX_ITERATIONS = 100_000
DEFAULT_EPSILON = "1e-9"
DEFAULT_ENUMERATION_CAP = 10_000_000
DEFAULT_GRID_CAP = 1_000_000
DEFAULT_FAMILY = "G"
DEFAULT_LOG_LEVEL = "WARNING"


def _get_positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise ConfigurationError(f"{name} must be positive, got {value}")
    return value


def get_max_iterations() -> int:
    """
    Get the per-fixpoint iteration budget.

    Returns:
        Maximum number of operator applications (FLP_MAX_ITERATIONS)

    Raises:
        ConfigurationError: If the variable is not a positive integer
    """
    return _get_positive_int("FLP_MAX_ITERATIONS", DEFAULT_MAX_ITERATIONS)


def get_epsilon() -> Fraction:
    """
    Get the tolerance used by approximate mode.

    Returns:
        Positive rational tolerance (FLP_EPSILON)

    Raises:
        ConfigurationError: If the variable is not a positive number
    """
    raw = os.getenv("FLP_EPSILON") or DEFAULT_EPSILON
    try:
        value = Fraction(raw.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigurationError(f"FLP_EPSILON must be a number, got {raw!r}")
    if value <= 0:
        raise ConfigurationError("FLP_EPSILON must be positive")
    return value


def get_enumeration_cap() -> int:
    """Largest number of grid candidates a stable-model enumeration may visit."""
    return _get_positive_int("FLP_ENUMERATION_CAP", DEFAULT_ENUMERATION_CAP)


def get_grid_cap() -> int:
    """Largest number of grid points the ultimate approximator may visit per head."""
    return _get_positive_int("FLP_GRID_CAP", DEFAULT_GRID_CAP)


def get_default_family() -> str:
    """Family id used for untagged rules and connectives."""
    return (os.getenv("FLP_DEFAULT_FAMILY") or DEFAULT_FAMILY).strip()


def get_log_level() -> str:
    """
    Get the logging level name.

    Raises:
        ConfigurationError: If the level is not a standard logging level
    """
    level = (os.getenv("FLP_LOG_LEVEL") or DEFAULT_LOG_LEVEL).strip().upper()
    if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
        raise ConfigurationError(f"FLP_LOG_LEVEL must be a logging level name, got {level!r}")
    return level
