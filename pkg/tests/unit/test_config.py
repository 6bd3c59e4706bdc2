"""
Tests for environment-driven settings.
"""

import pytest

from src.config import load_settings, resolve_bound, resolve_r_max
from src.constants import DEFAULT_ENUMERATION_BOUND, DEFAULT_R_MAX
from src.errors import ConfigurationError


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("LOGMONOID_BOUND", "LOGMONOID_R_MAX", "LOGMONOID_LOG_FILE", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    """Without variables the built-in limits apply."""
    settings = load_settings()
    assert settings.enumeration_bound == DEFAULT_ENUMERATION_BOUND
    assert settings.r_max == DEFAULT_R_MAX
    assert settings.log_level == "INFO"
    assert settings.log_file is None


def test_environment_overrides(clean_env):
    """Variables are read on every call."""
    clean_env.setenv("LOGMONOID_BOUND", "100")
    clean_env.setenv("LOGMONOID_R_MAX", "12")
    clean_env.setenv("LOG_LEVEL", "debug")
    clean_env.setenv("LOGMONOID_LOG_FILE", "run.log")
    settings = load_settings()
    assert settings.enumeration_bound == 100
    assert settings.r_max == 12
    assert settings.log_level == "DEBUG"
    assert settings.log_file == "run.log"


@pytest.mark.parametrize("value", ["abc", "0", "-4"])
def test_invalid_bound(clean_env, value):
    """Bounds must be positive integers."""
    clean_env.setenv("LOGMONOID_BOUND", value)
    with pytest.raises(ConfigurationError):
        load_settings()


def test_invalid_log_level(clean_env):
    """LOG_LEVEL must name a logging level."""
    clean_env.setenv("LOG_LEVEL", "LOUD")
    with pytest.raises(ConfigurationError):
        load_settings()


def test_explicit_values_win(clean_env):
    """Explicit bounds bypass the environment."""
    clean_env.setenv("LOGMONOID_BOUND", "100")
    clean_env.setenv("LOGMONOID_R_MAX", "9")
    assert resolve_bound(5) == 5
    assert resolve_bound(None) == 100
    assert resolve_r_max(None) == 9
    assert resolve_r_max(3) == 3


@pytest.mark.parametrize("resolve", [resolve_bound, resolve_r_max])
def test_explicit_values_must_be_positive(clean_env, resolve):
    """Zero is not a usable limit."""
    with pytest.raises(ConfigurationError):
        resolve(0)
