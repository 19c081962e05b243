"""
Tests for settings read from the environment.
"""

import pytest

from common import get_bool_env, get_int_env, get_settings


class TestEnvironment:
    """Tests for the typed environment helpers."""

    def test_int_default(self, monkeypatch):
        monkeypatch.delenv('FDHOM_PD_CAP', raising=False)
        assert get_int_env('FDHOM_PD_CAP', 16) == 16

    def test_int_blank_is_default(self, monkeypatch):
        monkeypatch.setenv('FDHOM_PD_CAP', '  ')
        assert get_int_env('FDHOM_PD_CAP', 16) == 16

    def test_int_value(self, monkeypatch):
        monkeypatch.setenv('FDHOM_PD_CAP', '5')
        assert get_int_env('FDHOM_PD_CAP', 16) == 5

    def test_int_rejects_garbage(self, monkeypatch):
        """A malformed value is an error, not a silent fallback."""
        monkeypatch.setenv('FDHOM_SEED', 'x')
        with pytest.raises(ValueError, match="not an integer"):
            get_int_env('FDHOM_SEED', 0)

    def test_bool(self, monkeypatch):
        monkeypatch.setenv('FDHOM_FLAG', 'Yes')
        assert get_bool_env('FDHOM_FLAG', False)
        monkeypatch.setenv('FDHOM_FLAG', 'off')
        assert not get_bool_env('FDHOM_FLAG', True)


class TestSettings:
    """Tests for the process-wide settings snapshot."""

    def test_reads_environment(self, monkeypatch):
        monkeypatch.setenv('FDHOM_SEED', '7')
        monkeypatch.setenv('FDHOM_BAR_CAP', '4')
        settings = get_settings()
        assert settings.seed == 7
        assert settings.bar_cap == 4
        assert get_settings() is settings

    def test_bad_seed(self, monkeypatch):
        monkeypatch.setenv('FDHOM_SEED', 'x')
        with pytest.raises(ValueError, match="FDHOM_SEED"):
            get_settings()
