"""Tests for application settings."""
from pathlib import Path

import pytest
from pydantic import ValidationError

from src.config import Settings, get_settings


class TestSettings:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("CHRONNET_OUTPUT_DIR", raising=False)
        monkeypatch.delenv("CHRONNET_LOG_LEVEL", raising=False)
        settings = Settings(_env_file=None)
        assert settings.threads == 1
        assert settings.min_confidence == 75.0
        assert settings.default_seed == 42
        assert settings.output_dir == Path("artifacts")
        assert settings.log_level == "INFO"

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("CHRONNET_THREADS", "4")
        monkeypatch.setenv("CHRONNET_MIN_CONFIDENCE", "80")
        settings = Settings(_env_file=None)
        assert settings.threads == 4
        assert settings.min_confidence == 80.0

    def test_threads_must_be_positive(self, monkeypatch):
        monkeypatch.setenv("CHRONNET_THREADS", "0")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)

    def test_get_settings_is_cached(self, monkeypatch):
        first = get_settings()
        monkeypatch.setenv("CHRONNET_DEFAULT_SEED", "7")
        assert get_settings() is first
        get_settings.cache_clear()
        assert get_settings().default_seed == 7
