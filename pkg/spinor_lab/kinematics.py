"""On-shell bradyon momenta, rapidities and the Weyl boost matrices."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .algebra import identity, sigma_dot
from .constants import DEFAULT_TOLERANCE, MAX_P_OVER_M

logger = logging.getLogger(__name__)

REST_AXIS = (0.0, 0.0, 1.0)


class KinematicsError(ValueError):
    """Raised for momenta outside the massive, on-shell, finite-rapidity regime."""

    pass


@dataclass(frozen=True)
class FourMomentum:
    """On-shell momentum of a massive particle, in mass units."""

    energy: float
    momentum: tuple[float, float, float]
    mass: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mass) or self.mass <= 0:
            raise KinematicsError(f"mass must be positive, got {self.mass}")
        if len(self.momentum) != 3 or not all(math.isfinite(c) for c in self.momentum):
            raise KinematicsError("momentum must be three finite components")
        object.__setattr__(self, "momentum", tuple(float(c) for c in self.momentum))
        if self.magnitude / self.mass > MAX_P_OVER_M:
            raise KinematicsError(
                f"|p|/m = {self.magnitude / self.mass:.3g} exceeds the supported {MAX_P_OVER_M:g}"
            )
        on_shell = math.hypot(self.mass, self.magnitude)
        if abs(self.energy - on_shell) > 1e-9 * on_shell:
            raise KinematicsError(
                f"energy {self.energy} is off shell (expected {on_shell} for m={self.mass})"
            )

    @classmethod
    def on_shell(cls, momentum, mass: float) -> FourMomentum:
        """Build the on-shell momentum for a 3-momentum and mass.

        Args:
            momentum: Three real components
            mass: Rest mass, must be positive

        Returns:
            FourMomentum with E = sqrt(m^2 + |p|^2)
        """
        momentum = tuple(float(c) for c in momentum)
        return cls(math.hypot(mass, *momentum), momentum, float(mass))

    @classmethod
    def at_rest(cls, mass: float) -> FourMomentum:
        return cls(float(mass), (0.0, 0.0, 0.0), float(mass))

    @property
    def magnitude(self) -> float:
        return math.hypot(*self.momentum)

    @property
    def components(self) -> np.ndarray:
        """Contravariant components (E, p_x, p_y, p_z)."""
        return np.array([self.energy, *self.momentum], dtype=np.float64)

    @property
    def invariant_mass_squared(self) -> float:
        return self.energy**2 - self.magnitude**2


@dataclass(frozen=True)
class BoostParams:
    """Rapidity and unit axis of the pure boost from rest to a momentum."""

    rapidity: float
    axis: tuple[float, float, float]

    @property
    def cosh(self) -> float:
        return math.cosh(self.rapidity)

    @property
    def sinh(self) -> float:
        return math.sinh(self.rapidity)

    def momentum(self, mass: float) -> FourMomentum:
        """Reconstruct the momentum m (cosh phi, sinh phi n)."""
        return FourMomentum(
            mass * self.cosh, tuple(mass * self.sinh * n for n in self.axis), float(mass)
        )


def boost_params(p: FourMomentum) -> BoostParams:
    """Return cosh(phi) = E/m, sinh(phi) = |p|/m and n = p/|p|.

    A momentum at rest gets phi = 0 and the axis z, so the boosts reduce
    continuously to the identity.
    """
    magnitude = p.magnitude
    if magnitude == 0.0:
        return BoostParams(0.0, REST_AXIS)
    axis = tuple(c / magnitude for c in p.momentum)
    return BoostParams(math.asinh(magnitude / p.mass), axis)


def _half_angle(p: FourMomentum) -> tuple[float, float]:
    # cosh(phi/2) = sqrt((E+m)/2m), sinh(phi/2) = |p| / sqrt(2m(E+m))
    denominator = math.sqrt(2.0 * p.mass * (p.energy + p.mass))
    return (p.energy + p.mass) / denominator, p.magnitude / denominator


def _boost(p: FourMomentum, sign: float) -> np.ndarray:
    ch, sh = _half_angle(p)
    axis = boost_params(p).axis
    return ch * identity(2) + sign * sh * sigma_dot(axis)


def boost_right(p: FourMomentum) -> np.ndarray:
    """Lambda_R(p <- rest) = exp(+sigma.n phi/2) in closed form."""
    return _boost(p, +1.0)


def boost_left(p: FourMomentum) -> np.ndarray:
    """Lambda_L(p <- rest) = exp(-sigma.n phi/2) in closed form."""
    return _boost(p, -1.0)


def is_at_rest(p: FourMomentum, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    return p.magnitude <= tolerance * p.mass
