"""Configuration management for spinor-lab sweeps."""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from .constants import DEFAULT_TOLERANCE
from .report import FORMATS
from .utils import expand_path, grid_values

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "SPINOR_LAB_CONFIG"
MAX_CONFIG_FILE_SIZE = 1024 * 1024

RANGE_KEYS = ("a", "b", "alpha1", "alpha2", "beta1", "beta2")


class ConfigError(ValueError):
    """Raised for unreadable or invalid configuration."""

    pass


@dataclass(frozen=True)
class ParamRange:
    """Inclusive grid of one parameter; a single value when step is 0."""

    min: float
    max: float
    step: float = 0.0

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.min, self.max, self.step)):
            raise ConfigError("range bounds must be finite")
        if self.step < 0:
            raise ConfigError("range step must not be negative")
        if self.step == 0 and self.min != self.max:
            raise ConfigError("a range with min != max needs a positive step")

    @classmethod
    def single(cls, value: float) -> ParamRange:
        return cls(float(value), float(value), 0.0)

    def values(self) -> list[float]:
        if self.step == 0:
            return [self.min]
        return grid_values(self.min, self.max, self.step)


def _default_ranges() -> dict[str, ParamRange]:
    return {
        "a": ParamRange.single(1.0),
        "b": ParamRange.single(2.0),
        "alpha1": ParamRange.single(math.pi / 2),
        "alpha2": ParamRange.single(0.0),
        "beta1": ParamRange.single(0.6),
        "beta2": ParamRange.single(0.8),
    }


@dataclass(frozen=True)
class SweepConfig:
    """Everything a verify, sweep or dispersion run is parameterized by."""

    ranges: dict[str, ParamRange] = field(default_factory=_default_ranges)
    m: float = 1.0
    count: int = 20
    seed: int = 42
    p_over_m_max: float = 10.0
    tolerance: float = DEFAULT_TOLERANCE
    format: str = "json"
    out: str | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if not math.isfinite(self.m) or self.m <= 0:
            raise ConfigError(f"mass must be positive, got {self.m}")
        if self.count < 1:
            raise ConfigError("count must be at least 1")
        if self.p_over_m_max <= 0:
            raise ConfigError("p_over_m_max must be positive")
        if not 0 < self.tolerance < 1:
            raise ConfigError(f"tolerance must lie in (0, 1), got {self.tolerance}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        missing = set(RANGE_KEYS) - set(self.ranges)
        if missing:
            raise ConfigError(f"missing parameter ranges: {sorted(missing)}")

    def value(self, key: str) -> float:
        """First grid value of a parameter, used where a single point is needed."""
        return self.ranges[key].min

    def with_values(self, **values: float | None) -> SweepConfig:
        """Pin parameters to single values; None leaves a parameter unchanged."""
        ranges = dict(self.ranges)
        for key, value in values.items():
            if value is not None:
                ranges[key] = ParamRange.single(value)
        return replace(self, ranges=ranges)


def get_default_config() -> SweepConfig:
    """Get default configuration values.

    Returns:
        Default SweepConfig
    """
    return SweepConfig()


def get_config_path(path: str | None = None) -> str | None:
    """Resolve the config file path from an explicit path or SPINOR_LAB_CONFIG.

    Returns:
        Absolute path to config file, or None when neither is set
    """
    if path:
        return expand_path(path)
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        return expand_path(env_path)
    return None


def _parse_range(key: str, raw: Any) -> ParamRange:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return ParamRange.single(raw)
    if isinstance(raw, dict):
        unknown = set(raw) - {"min", "max", "step"}
        if unknown:
            raise ConfigError(f"unknown keys in range {key!r}: {sorted(unknown)}")
        try:
            low = float(raw["min"])
            high = float(raw.get("max", low))
            step = float(raw.get("step", 0.0))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"invalid range {key!r}: {e}") from e
        return ParamRange(low, high, step)
    raise ConfigError(f"range {key!r} must be a number or an object with min/max/step")


def config_from_dict(data: dict[str, Any]) -> SweepConfig:
    """Build a SweepConfig from parsed JSON, filling in defaults.

    Raises:
        ConfigError: If a key is unknown or a value is invalid
    """
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    default = get_default_config()
    ranges = dict(default.ranges)
    raw_ranges = data.get("ranges", {})
    if not isinstance(raw_ranges, dict):
        raise ConfigError("ranges must be an object")
    for key, raw in raw_ranges.items():
        if key not in RANGE_KEYS:
            raise ConfigError(f"unknown parameter {key!r}")
        ranges[key] = _parse_range(key, raw)

    scalars = {k: v for k, v in data.items() if k != "ranges"}
    allowed = {"m", "count", "seed", "p_over_m_max", "tolerance", "format", "out", "workers"}
    unknown = set(scalars) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if isinstance(scalars.get("out"), str):
        scalars["out"] = expand_path(scalars["out"])
    try:
        return replace(default, ranges=ranges, **scalars)
    except TypeError as e:
        raise ConfigError(str(e)) from e


def load_config(path: str | None = None) -> SweepConfig:
    """Load configuration from file, or the defaults when no file is named.

    Args:
        path: Explicit config path; falls back to SPINOR_LAB_CONFIG

    Returns:
        SweepConfig

    Raises:
        ConfigError: If the named file is missing, too large or invalid
    """
    resolved = get_config_path(path)
    if resolved is None:
        return get_default_config()

    config_path = Path(resolved)
    if not config_path.is_file():
        raise ConfigError(f"config file not found: {config_path}")

    file_size = config_path.stat().st_size
    if file_size > MAX_CONFIG_FILE_SIZE:
        raise ConfigError(
            f"config file too large: {file_size} bytes (max {MAX_CONFIG_FILE_SIZE})"
        )

    try:
        with open(config_path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"failed to read config {config_path}: {e}") from e

    config = config_from_dict(data)
    logger.info("Loaded config from %s", config_path)
    return config


def save_config(config: SweepConfig, path: str) -> None:
    """Save configuration to file.

    Args:
        config: Configuration to save
        path: Destination path
    """
    config_path = Path(expand_path(path))
    config_path.parent.mkdir(parents=True, exist_ok=True)
    data = {
        "ranges": {
            k: {"min": r.min, "max": r.max, "step": r.step} for k, r in config.ranges.items()
        },
        "m": config.m,
        "count": config.count,
        "seed": config.seed,
        "p_over_m_max": config.p_over_m_max,
        "tolerance": config.tolerance,
        "format": config.format,
        "out": config.out,
        "workers": config.workers,
    }
    with open(config_path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
    logger.info("Saved config to %s", config_path)
