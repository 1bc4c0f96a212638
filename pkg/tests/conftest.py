"""Shared pytest fixtures for cluster_qis tests."""

import logging
import sys
from collections.abc import Iterator
from pathlib import Path

import numpy as np
import pytest

try:
    from cluster_qis.qcore import PureState, random_state
    from cluster_qis.utils import config_module
except ModuleNotFoundError:
    SRC_PATH = Path(__file__).resolve().parents[1] / 'src'
    if str(SRC_PATH) not in sys.path:
        sys.path.insert(0, str(SRC_PATH))
    from cluster_qis.qcore import PureState, random_state
    from cluster_qis.utils import config_module

GOLDEN_DIR = Path(__file__).resolve().parent / 'golden'


# --- Logging ---------------------------------------------------------------


@pytest.fixture(autouse=True)
def drop_managed_handler() -> Iterator[None]:
    """Remove the console handler a CLI call installs on the root logger.

    Yields
    ------
    None
        Control to the test.
    """
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, 'cluster_qis_managed', False):
            root.removeHandler(handler)
    root.setLevel(logging.WARNING)


# --- Randomness ------------------------------------------------------------


@pytest.fixture
def rng() -> np.random.Generator:
    """Return a generator seeded identically for every test.

    Returns
    -------
    np.random.Generator
        Generator seeded with 0.
    """
    return np.random.default_rng(0)


@pytest.fixture
def random_qubit(rng: np.random.Generator) -> PureState:
    """Return a random one-qubit secret.

    Returns
    -------
    PureState
        Haar-random single-qubit state.
    """
    return random_state(1, rng)


@pytest.fixture
def random_two_qubit(rng: np.random.Generator) -> PureState:
    """Return a random two-qubit secret.

    Returns
    -------
    PureState
        Haar-random two-qubit state.
    """
    return random_state(2, rng)


# --- Configuration helpers -------------------------------------------------


@pytest.fixture
def config_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Point the configuration directory to a temporary location.

    Returns
    -------
    Path
        Temporary directory configured for the cluster_qis config file.
    """
    config_root = tmp_path / 'cluster_qis_config'
    monkeypatch.setenv(config_module.ENV_CONFIG_DIR, str(config_root))
    return config_root


@pytest.fixture
def golden_dir() -> Path:
    """Return the directory of stored reference reports.

    Returns
    -------
    Path
        ``tests/golden``.
    """
    return GOLDEN_DIR
