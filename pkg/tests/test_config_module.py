"""Tests for the cluster_qis configuration file."""

import logging
import sys
from pathlib import Path

import pytest

try:
    from cluster_qis.utils import config_module
except ModuleNotFoundError:
    SRC_PATH = Path(__file__).resolve().parents[1] / 'src'
    if str(SRC_PATH) not in sys.path:
        sys.path.insert(0, str(SRC_PATH))
    from cluster_qis.utils import config_module


def _set_config_dir(monkeypatch: pytest.MonkeyPatch, directory: Path) -> None:
    """Point the configuration helper to a temporary directory."""
    monkeypatch.setenv(config_module.ENV_CONFIG_DIR, str(directory))


def test_defaults_without_config_file(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Missing file yields the built-in defaults."""
    _set_config_dir(monkeypatch, tmp_path / 'absent')

    assert config_module.get_tolerance_settings() == config_module.TOLERANCE_DEFAULTS
    assert config_module.get_run_settings() == config_module.RUN_DEFAULTS


def test_set_and_get_tolerance_settings(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Ensure the acceptance tolerance round-trips via the config file."""
    config_dir = tmp_path / 'config'
    _set_config_dir(monkeypatch, config_dir)

    config_module.set_tolerance_settings(acceptance=1e-8)

    assert config_module.get_tolerance_settings()['acceptance'] == pytest.approx(1e-8)
    config_path = config_dir / config_module.CONFIG_FILENAME
    assert config_path.is_file()
    assert '[tolerances]' in config_path.read_text(encoding='utf-8')


def test_set_run_settings_preserves_other_sections(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Storing run settings keeps the tolerance section and unrelated run keys."""
    _set_config_dir(monkeypatch, tmp_path / 'cfg')

    config_module.set_tolerance_settings(acceptance=1e-9)
    config_module.set_run_settings(seed=42)
    config_module.set_run_settings(trials=3)

    runs = config_module.get_run_settings()
    assert runs['seed'] == 42
    assert runs['trials'] == 3
    assert runs['acceptance_secrets'] == config_module.RUN_DEFAULTS['acceptance_secrets']
    assert config_module.get_tolerance_settings()['acceptance'] == pytest.approx(1e-9)


def test_set_run_settings_rejects_unknown_key(config_dir: Path) -> None:
    """Unknown run keys raise before anything is written."""
    with pytest.raises(KeyError):
        config_module.set_run_settings(shots=5)
    assert not (config_dir / config_module.CONFIG_FILENAME).exists()


def test_set_invalid_values_raise(config_dir: Path) -> None:
    """Negative counts and non-positive tolerances are refused."""
    with pytest.raises(ValueError):
        config_module.set_run_settings(seed=-1)
    with pytest.raises(ValueError):
        config_module.set_tolerance_settings(acceptance=0.0)


def test_unknown_and_invalid_entries_fall_back(config_dir: Path, caplog: pytest.LogCaptureFixture) -> None:
    """Unknown keys are ignored and invalid values revert to defaults with a log entry."""
    config_dir.mkdir(parents=True)
    (config_dir / config_module.CONFIG_FILENAME).write_text(
        '[runs]\nseed = 5\ntrials = "many"\ncolour = "blue"\n',
        encoding='utf-8',
    )

    with caplog.at_level(logging.WARNING):
        runs = config_module.get_run_settings()

    assert runs['seed'] == 5
    assert runs['trials'] == config_module.RUN_DEFAULTS['trials']
    assert 'colour' not in runs
    assert any('colour' in record.getMessage() for record in caplog.records)
    assert any('trials' in record.getMessage() for record in caplog.records)


def test_malformed_section_uses_defaults(config_dir: Path, caplog: pytest.LogCaptureFixture) -> None:
    """A section that is not a table is reported and ignored."""
    config_dir.mkdir(parents=True)
    (config_dir / config_module.CONFIG_FILENAME).write_text('tolerances = 3\n', encoding='utf-8')

    with caplog.at_level(logging.ERROR):
        settings = config_module.get_tolerance_settings()

    assert settings == config_module.TOLERANCE_DEFAULTS
    assert any('malformed' in record.getMessage() for record in caplog.records)


def test_unreadable_file_returns_empty_config(config_dir: Path, caplog: pytest.LogCaptureFixture) -> None:
    """Invalid TOML is logged and treated as an empty file."""
    config_dir.mkdir(parents=True)
    (config_dir / config_module.CONFIG_FILENAME).write_text('[runs\nseed = ', encoding='utf-8')

    with caplog.at_level(logging.ERROR):
        assert config_module.load_config() == {}
    assert any('Unable to read config file' in record.getMessage() for record in caplog.records)


def test_xdg_config_home_is_used(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Without the override variable the XDG directory is used."""
    monkeypatch.delenv(config_module.ENV_CONFIG_DIR, raising=False)
    monkeypatch.setenv('XDG_CONFIG_HOME', str(tmp_path))
    monkeypatch.setattr(config_module.sys, 'platform', 'linux')

    assert config_module.get_config_directory() == tmp_path / 'cluster_qis'
