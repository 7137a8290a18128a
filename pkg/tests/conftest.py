"""Shared fixtures for spinor-lab tests."""

import numpy as np
import pytest

from spinor_lab.kinematics import FourMomentum
from spinor_lab.utils import sample_momenta


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def momenta():
    """Rest momentum plus a spread of boosted ones up to |p|/m = 10."""
    return sample_momenta(8, 1.0, 10.0, seed=7)


@pytest.fixture
def boosted():
    return FourMomentum.on_shell((0.3, -1.2, 2.5), 1.0)


@pytest.fixture(autouse=True)
def clean_config_env(monkeypatch):
    monkeypatch.delenv("SPINOR_LAB_CONFIG", raising=False)
    monkeypatch.delenv("SPINOR_LAB_LOG_LEVEL", raising=False)
