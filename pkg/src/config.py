"""
Runtime configuration
Reads bounds and logging options from the environment (and an optional .env file)
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from .constants import DEFAULT_ENUMERATION_BOUND, DEFAULT_R_MAX
from .errors import ConfigurationError

# Load .env file from project directory
project_dir = Path(__file__).parent.parent
load_dotenv(dotenv_path=project_dir / ".env")

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    """Resolved configuration for one call."""

    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND
    r_max: int = DEFAULT_R_MAX
    log_level: str = "INFO"
    log_file: str | None = None


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ConfigurationError(f"{name} must be positive, got {value}")
    return value


def load_settings() -> Settings:
    """
    Read settings from the environment.

    Returns:
        Settings: Fresh settings object (never cached)

    Raises:
        ConfigurationError: If a variable holds an invalid value
    """
    level = os.getenv("LOG_LEVEL", "INFO").upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigurationError(f"LOG_LEVEL must be a logging level name, got {level!r}")

    return Settings(
        enumeration_bound=_positive_int("LOGMONOID_BOUND", DEFAULT_ENUMERATION_BOUND),
        r_max=_positive_int("LOGMONOID_R_MAX", DEFAULT_R_MAX),
        log_level=level,
        log_file=os.getenv("LOGMONOID_LOG_FILE") or None,
    )


def resolve_bound(bound: int | None) -> int:
    """Explicit bound if given, else the configured enumeration bound."""
    if bound is not None:
        if bound <= 0:
            raise ConfigurationError(f"bound must be positive, got {bound}")
        return bound
    return load_settings().enumeration_bound


def resolve_r_max(r_max: int | None) -> int:
    """Explicit r_max if given, else the configured stabilization limit."""
    if r_max is not None:
        if r_max <= 0:
            raise ConfigurationError(f"r_max must be positive, got {r_max}")
        return r_max
    return load_settings().r_max
