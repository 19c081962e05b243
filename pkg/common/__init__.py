"""
fdhom Common Utilities

Shared configuration and errors used across all fdhom packages.
"""

__version__ = "0.1.0"

import os
from typing import Optional

from dotenv import load_dotenv

_dotenv_loaded = False


def _ensure_dotenv():
    global _dotenv_loaded
    if not _dotenv_loaded:
        load_dotenv()
        _dotenv_loaded = True


def get_env(key: str, default: Optional[str] = None) -> Optional[str]:
    """Get environment variable with optional default."""
    _ensure_dotenv()
    return os.environ.get(key, default)


def get_int_env(key: str, default: int) -> int:
    """Get an integer environment variable; raises ValueError on non-integers."""
    raw = get_env(key)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Environment variable {key}={raw!r} is not an integer")


def get_bool_env(key: str, default: bool) -> bool:
    """Get a boolean environment variable (1/true/yes/on)."""
    raw = get_env(key)
    if raw is None:
        return default
    return raw.strip().lower() in ('1', 'true', 'yes', 'on')


class Settings:
    """Snapshot of the tunable limits, read from the environment."""

    def __init__(
        self,
        field: str = 'F101',
        path_length_cap: int = 32,
        iso_attempts: int = 64,
        seed: int = 0,
        pd_cap: int = 16,
        gorenstein_bound: int = 10,
        mcm_window: int = 2,
        bar_cap: int = 6,
        log_level: str = 'INFO'
    ):
        self.field = field
        self.path_length_cap = path_length_cap
        self.iso_attempts = iso_attempts
        self.seed = seed
        self.pd_cap = pd_cap
        self.gorenstein_bound = gorenstein_bound
        self.mcm_window = mcm_window
        self.bar_cap = bar_cap
        self.log_level = log_level

    @classmethod
    def from_env(cls) -> 'Settings':
        return cls(
            field=get_env('FDHOM_FIELD', 'F101'),
            path_length_cap=get_int_env('FDHOM_PATH_CAP', 32),
            iso_attempts=get_int_env('FDHOM_ISO_ATTEMPTS', 64),
            seed=get_int_env('FDHOM_SEED', 0),
            pd_cap=get_int_env('FDHOM_PD_CAP', 16),
            gorenstein_bound=get_int_env('FDHOM_GORENSTEIN_BOUND', 10),
            mcm_window=get_int_env('FDHOM_MCM_WINDOW', 2),
            bar_cap=get_int_env('FDHOM_BAR_CAP', 6),
            log_level=get_env('FDHOM_LOG_LEVEL', 'INFO'),
        )

    def __repr__(self):
        return (
            f"<Settings field={self.field} cap={self.path_length_cap} "
            f"seed={self.seed} pd_cap={self.pd_cap}>"
        )


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Return the process-wide settings, reading the environment once."""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def override_settings(**changes) -> Settings:
    """Replace individual settings (used by CLI flags and tests)."""
    current = get_settings()
    for key, value in changes.items():
        if value is None:
            continue
        if not hasattr(current, key):
            raise ValueError(f"Unknown setting '{key}'")
        setattr(current, key, value)
    return current
