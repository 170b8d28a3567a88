"""
Unit Tests for Settings
"""

import pytest


class TestSettings:
    """Defaults, CWFCHECK_* overrides and .env files"""

    @pytest.mark.unit
    def test_defaults(self, settings):
        assert settings.budget == 1000
        assert settings.max_level == 3
        assert settings.output_format == "text"

    @pytest.mark.unit
    def test_environment_overrides(self, monkeypatch):
        from cwfcheck.config import get_settings

        monkeypatch.setenv("CWFCHECK_BUDGET", "25")
        monkeypatch.setenv("CWFCHECK_OUTPUT_FORMAT", "machine")
        settings = get_settings()
        assert settings.budget == 25
        assert settings.output_format == "machine"

    @pytest.mark.unit
    def test_env_file_is_read(self, monkeypatch, tmp_path):
        from cwfcheck.config import Settings

        monkeypatch.delenv("CWFCHECK_SEED", raising=False)
        monkeypatch.setenv("CWFCHECK_BUDGET", "9")
        env_file = tmp_path / ".env"
        env_file.write_text("CWFCHECK_SEED=7\nCWFCHECK_BUDGET=3\n", encoding="utf-8")
        settings = Settings.from_env(env_file)
        assert settings.seed == 7
        assert settings.budget == 9

    @pytest.mark.unit
    def test_invalid_values_are_rejected(self, monkeypatch):
        from pydantic import ValidationError

        from cwfcheck.config import Settings

        monkeypatch.setenv("CWFCHECK_BUDGET", "0")
        with pytest.raises(ValidationError):
            Settings.from_env(env_file=None)
