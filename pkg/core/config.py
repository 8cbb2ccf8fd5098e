"""
Runtime settings read from the environment (and an optional .env file).
"""

import os
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional

from dotenv import load_dotenv


@dataclass(frozen=True)
class Settings:
    """Numerical and runtime settings."""

    seed: int = 0
    quad_rtol: float = 1e-10
    quad_atol: float = 1e-14
    exclusion_radius: float = 1e-4
    jobs: int = 1
    log_level: str = "WARNING"

    def scaled(self, tol_scale: float) -> "Settings":
        """Return a copy with the quadrature tolerances scaled."""
        return replace(
            self,
            quad_rtol=self.quad_rtol * tol_scale,
            quad_atol=self.quad_atol * tol_scale,
        )


def load_settings(config: Optional[Dict[str, Any]] = None) -> Settings:
    """
    Build settings from environment variables.

    Args:
        config: Optional overrides, keyed by Settings field name

    Returns:
        Settings instance
    """
    load_dotenv()
    default_config = {
        "seed": int(os.getenv("PAIRING_CALC_SEED", "0")),
        "quad_rtol": float(os.getenv("PAIRING_CALC_QUAD_RTOL", "1e-10")),
        "quad_atol": float(os.getenv("PAIRING_CALC_QUAD_ATOL", "1e-14")),
        "exclusion_radius": float(os.getenv("PAIRING_CALC_EXCLUSION_RADIUS", "1e-4")),
        "jobs": int(os.getenv("PAIRING_CALC_JOBS", "1")),
        "log_level": os.getenv("PAIRING_CALC_LOG_LEVEL", "WARNING"),
    }
    if config:
        default_config.update(config)
    return Settings(**default_config)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Process-wide settings, loaded on first use."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def set_settings(settings: Optional[Settings]) -> None:
    """Replace (or reset with None) the process-wide settings."""
    global _settings
    _settings = settings
