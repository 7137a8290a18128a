"""Utility functions for spinor-lab."""

from __future__ import annotations

import logging
import math
import os
from pathlib import Path

import numpy as np

from .constants import P_OVER_M_MIN
from .kinematics import FourMomentum

logger = logging.getLogger(__name__)


def expand_path(p: str) -> str:
    """Expand ~ and environment variables in path.

    Args:
        p: Path string to expand

    Returns:
        Expanded absolute path
    """
    return str(Path(os.path.expandvars(p)).expanduser().resolve())


def sample_momenta(
    count: int, mass: float, p_over_m_max: float, seed: int | None = None
) -> list[FourMomentum]:
    """Draw on-shell momenta with isotropic directions and log-uniform |p|/m.

    The first momentum is always the rest momentum, so every sampled set also
    exercises the rest-frame limit of the boosts.

    Args:
        count: Number of momenta, at least 1
        mass: Rest mass
        p_over_m_max: Upper edge of |p|/m
        seed: Seed for numpy's default generator

    Returns:
        List of FourMomentum
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if p_over_m_max <= P_OVER_M_MIN:
        raise ValueError(f"p_over_m_max must exceed {P_OVER_M_MIN}")
    rng = np.random.default_rng(seed)
    momenta = [FourMomentum.at_rest(mass)]
    low, high = math.log(P_OVER_M_MIN), math.log(p_over_m_max)
    for _ in range(count - 1):
        direction = rng.standard_normal(3)
        direction /= np.linalg.norm(direction)
        magnitude = mass * math.exp(rng.uniform(low, high))
        momenta.append(FourMomentum.on_shell(magnitude * direction, mass))
    logger.debug("sampled %d momenta with seed %s", len(momenta), seed)
    return momenta


def grid_values(start: float, stop: float, step: float) -> list[float]:
    """Inclusive grid start, start + step, ..., stop.

    Returns:
        List of floats; empty when stop < start
    """
    if step <= 0:
        raise ValueError("grid step must be positive")
    if stop < start:
        return []
    return [float(v) for v in np.arange(start, stop + step / 2, step)]
