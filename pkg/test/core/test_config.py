"""
Tests for runtime settings
"""
import os

import pytest

from core.config import Settings, get_settings, load_settings, set_settings


class TestLoadSettings:
    def test_defaults(self):
        settings = load_settings()
        assert settings == Settings()
        assert settings.exclusion_radius == 1e-4
        assert settings.log_level == "WARNING"

    def test_environment(self):
        os.environ["PAIRING_CALC_SEED"] = "7"
        os.environ["PAIRING_CALC_QUAD_RTOL"] = "1e-8"
        os.environ["PAIRING_CALC_JOBS"] = "3"
        settings = load_settings()
        assert settings.seed == 7
        assert settings.quad_rtol == 1e-8
        assert settings.jobs == 3

    def test_explicit_config_wins(self):
        os.environ["PAIRING_CALC_SEED"] = "7"
        assert load_settings({"seed": 11}).seed == 11

    def test_scaled(self):
        settings = Settings().scaled(100.0)
        assert settings.quad_rtol == pytest.approx(1e-8)
        assert settings.quad_atol == pytest.approx(1e-12)
        assert settings.seed == 0


class TestProcessSettings:
    def test_cached(self):
        assert get_settings() is get_settings()

    def test_replace_and_reset(self):
        custom = Settings(seed=5)
        set_settings(custom)
        assert get_settings() is custom
        set_settings(None)
        assert get_settings().seed == 0
