"""Reading and writing the user configuration (tolerances and run defaults)."""

import logging
import os
import sys
from collections.abc import Callable, Mapping
from pathlib import Path
from typing import Any

import toml

logger = logging.getLogger(__name__)

CONFIG_FILENAME = 'config.toml'
CONFIG_DIRECTORY_NAME = 'cluster_qis'
ENV_CONFIG_DIR = 'CLUSTER_QIS_CONFIG_DIR'
TOLERANCE_SECTION = 'tolerances'
RUN_SECTION = 'runs'

TOLERANCE_DEFAULTS: dict[str, float] = {'acceptance': 1e-10}
RUN_DEFAULTS: dict[str, int] = {
    'seed': 0,
    'trials': 10,
    'verification_secrets': 20,
    'acceptance_secrets': 100,
}


def get_config_directory() -> Path:
    """Return the directory holding ``config.toml``.

    ``$CLUSTER_QIS_CONFIG_DIR`` wins; otherwise ``%APPDATA%`` on Windows and
    ``$XDG_CONFIG_HOME`` or ``~/.config`` elsewhere.

    Returns
    -------
    Path
        Configuration directory (it may not exist yet).
    """
    if env_dir := os.getenv(ENV_CONFIG_DIR):
        return Path(env_dir).expanduser()

    if sys.platform == 'win32':
        appdata = os.getenv('APPDATA')
        base = Path(appdata) if appdata else Path.home() / 'AppData' / 'Roaming'
        return base / CONFIG_DIRECTORY_NAME

    if xdg_dir := os.getenv('XDG_CONFIG_HOME'):
        return Path(xdg_dir).expanduser() / CONFIG_DIRECTORY_NAME
    return Path.home() / '.config' / CONFIG_DIRECTORY_NAME


def get_config_path() -> Path:
    """Return the path of the configuration file.

    Returns
    -------
    Path
        ``<config directory>/config.toml``.
    """
    return get_config_directory() / CONFIG_FILENAME


def load_config() -> dict[str, Any]:
    """Parse the configuration file.

    Returns
    -------
    dict[str, Any]
        File contents, or an empty mapping when the file is missing or unreadable.
    """
    config_path = get_config_path()
    if not config_path.is_file():
        return {}

    try:
        with config_path.open('r', encoding='utf-8') as file:
            data = toml.load(file)
    except (OSError, toml.TomlDecodeError) as exc:
        logger.error('Unable to read config file at %s: %s', config_path, exc)
        return {}

    if not isinstance(data, dict):
        logger.error('Config file %s did not contain a mapping.', config_path)
        return {}
    return data


def save_config(config: Mapping[str, Any]) -> None:
    """Write ``config`` to the configuration file, creating its directory."""
    config_path = get_config_path()
    config_path.parent.mkdir(parents=True, exist_ok=True)
    logger.debug('Persisting config to %s', config_path)
    try:
        with config_path.open('w', encoding='utf-8') as file:
            toml.dump(dict(config), file)
    except (OSError, TypeError) as exc:
        logger.error('Failed to write config file at %s: %s', config_path, exc)
        raise


def _read_section(name: str, defaults: Mapping[str, Any], cast: Callable[[Any], Any]) -> dict[str, Any]:
    """Return ``defaults`` overlaid with the valid entries of section ``name``.

    Returns
    -------
    dict[str, Any]
        Settings with every default key present.
    """
    settings = dict(defaults)
    section = load_config().get(name, {})
    if not isinstance(section, dict):
        logger.error('Config section [%s] malformed; using defaults.', name)
        return settings

    for key, value in section.items():
        if key not in defaults:
            logger.warning('Ignoring unknown key %r in config section [%s].', key, name)
            continue
        try:
            settings[key] = cast(value)
        except (TypeError, ValueError):
            logger.error('Invalid value %r for %s.%s; using %r.', value, name, key, defaults[key])
    return settings


def _positive_float(value: Any) -> float:
    number = float(value)
    if not number > 0:
        raise ValueError(number)
    return number


def _non_negative_int(value: Any) -> int:
    if isinstance(value, bool) or int(value) != value or value < 0:
        raise ValueError(value)
    return int(value)


def get_tolerance_settings() -> dict[str, float]:
    """Return the ``[tolerances]`` section.

    Returns
    -------
    dict[str, float]
        Mapping with key ``acceptance``.
    """
    return _read_section(TOLERANCE_SECTION, TOLERANCE_DEFAULTS, _positive_float)


def set_tolerance_settings(*, acceptance: float) -> None:
    """Store the acceptance tolerance."""
    config = load_config()
    config[TOLERANCE_SECTION] = {'acceptance': _positive_float(acceptance)}
    save_config(config)


def get_run_settings() -> dict[str, int]:
    """Return the ``[runs]`` section.

    Returns
    -------
    dict[str, int]
        Mapping with keys ``seed``, ``trials``, ``verification_secrets`` and
        ``acceptance_secrets``.
    """
    return _read_section(RUN_SECTION, RUN_DEFAULTS, _non_negative_int)


def set_run_settings(**settings: int) -> None:
    """Update entries of the ``[runs]`` section, keeping the others.

    Raises
    ------
    KeyError
        If a key is not a known run setting.
    """
    unknown = set(settings) - set(RUN_DEFAULTS)
    if unknown:
        raise KeyError(f'Unknown run settings: {sorted(unknown)}')

    logger.info('Persisting run settings %s to config section %s', settings, RUN_SECTION)
    config = load_config()
    current = get_run_settings()
    current.update({key: _non_negative_int(value) for key, value in settings.items()})
    config[RUN_SECTION] = current
    save_config(config)


__all__ = [
    'CONFIG_FILENAME',
    'ENV_CONFIG_DIR',
    'RUN_DEFAULTS',
    'RUN_SECTION',
    'TOLERANCE_DEFAULTS',
    'TOLERANCE_SECTION',
    'get_config_directory',
    'get_config_path',
    'get_run_settings',
    'get_tolerance_settings',
    'load_config',
    'save_config',
    'set_run_settings',
    'set_tolerance_settings',
]
