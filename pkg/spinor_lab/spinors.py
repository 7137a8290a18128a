"""Rest-frame helicity spinors, the Ryder-Burgard relation and 4-spinor construction.

Rest spinors are unit norm and use half-angle azimuthal phases, so that
Xi^-1 [phi^h]* = phi^h holds exactly and Theta [phi^+]* = phi^-,
Theta [phi^-]* = -phi^+.

Second-type spinors are labelled by eta, the helicity of their right-handed
(upper) block. For lambda the left-handed block then carries helicity -eta.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import apply_charge_conjugation, gamma_set, wigner_theta
from .constants import (
    DEFAULT_TOLERANCE,
    HELICITIES,
    HELICITY_UP,
    KIND_ANTI,
    KIND_NEITHER,
    KIND_SELF,
    ZETA,
)
from .kinematics import FourMomentum, boost_left, boost_right

logger = logging.getLogger(__name__)

RIGHT = "R"
LEFT = "L"

KIND_U = "u"
KIND_V = "v"


class DegenerateSpinorError(ValueError):
    """Raised when a spinor is too small to classify."""

    pass


def _check_helicity(h: float) -> float:
    if h not in HELICITIES:
        raise ValueError(f"helicity must be +1/2 or -1/2, got {h}")
    return float(h)


def _check_kind(kind: str) -> str:
    if kind not in ZETA:
        raise ValueError(f"conjugacy kind must be {KIND_SELF!r} or {KIND_ANTI!r}, got {kind!r}")
    return kind


@dataclass(frozen=True, eq=False)
class WeylSpinor:
    """Two-component spinor with its helicity, chirality and quantization angles."""

    components: np.ndarray = field(repr=False)
    helicity: float
    chirality: str
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self) -> None:
        components = np.array(self.components, dtype=np.complex128)
        components.setflags(write=False)
        object.__setattr__(self, "components", components)


@dataclass(frozen=True)
class RBParams:
    """Real constants and phases of the Ryder-Burgard relation."""

    a: float
    b: float
    theta1: float = 0.0
    theta2: float = math.pi

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.a, self.b, self.theta1, self.theta2)):
            raise ValueError("Ryder-Burgard constants must be finite")

    def theta_for(self, h: float) -> float:
        """theta_h: up -> theta1, down -> theta2."""
        return self.theta1 if _check_helicity(h) == HELICITY_UP else self.theta2


@dataclass(frozen=True, eq=False)
class Bispinor:
    """Labelled 4-spinor.

    ``kind`` is one of u, v, lambda_S, lambda_A, rho_S, rho_A; ``helicity`` is the
    Dirac helicity for u/v and the chiral-helicity label eta for lambda/rho.
    """

    components: np.ndarray = field(repr=False)
    kind: str
    helicity: float
    momentum: FourMomentum
    zeta: complex | None = None

    def __post_init__(self) -> None:
        components = np.array(self.components, dtype=np.complex128)
        components.setflags(write=False)
        object.__setattr__(self, "components", components)

    @property
    def upper(self) -> np.ndarray:
        return self.components[:2]

    @property
    def lower(self) -> np.ndarray:
        return self.components[2:]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


def rest_spinor(h: float, theta: float, phi: float, chirality: str = LEFT) -> WeylSpinor:
    """Return the unit helicity eigenstate of sigma . n at rest.

    Args:
        h: Helicity, +1/2 or -1/2
        theta: Polar angle of the quantization direction
        phi: Azimuthal angle of the quantization direction
        chirality: "R" or "L"; both chiralities share the same rest spinor

    Returns:
        (cos(theta/2) e^{-i phi/2}, sin(theta/2) e^{i phi/2}) for h = +1/2 and
        (-sin(theta/2) e^{-i phi/2}, cos(theta/2) e^{i phi/2}) for h = -1/2
    """
    h = _check_helicity(h)
    if chirality not in (LEFT, RIGHT):
        raise ValueError(f"chirality must be 'L' or 'R', got {chirality!r}")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    down, up = cmath.exp(-0.5j * phi), cmath.exp(0.5j * phi)
    if h == HELICITY_UP:
        components = (c * down, s * up)
    else:
        components = (-s * down, c * up)
    return WeylSpinor(np.array(components), h, chirality, theta, phi)


def xi_matrix(phi: float) -> np.ndarray:
    """Return diag(e^{i phi}, e^{-i phi})."""
    return np.diag([cmath.exp(1j * phi), cmath.exp(-1j * phi)])


def ryder_burgard_residual(params: RBParams, h: float, theta: float, phi: float) -> float:
    """Norm of the Ryder-Burgard relation evaluated on rest spinors.

    phi_L^h - a (-1)^(1/2-h) e^{i(theta1+theta2)} Theta [phi_L^-h]*
            - b e^{2i theta_h} Xi^-1 [phi_L^h]*
    """
    h = _check_helicity(h)
    phi_h = rest_spinor(h, theta, phi).components
    phi_minus_h = rest_spinor(-h, theta, phi).components
    sign = (-1.0) ** round(0.5 - h)
    wigner_term = (
        params.a
        * sign
        * cmath.exp(1j * (params.theta1 + params.theta2))
        * (wigner_theta() @ np.conj(phi_minus_h))
    )
    xi_term = (
        params.b
        * cmath.exp(2j * params.theta_for(h))
        * (np.linalg.inv(xi_matrix(phi)) @ np.conj(phi_h))
    )
    return float(np.linalg.norm(phi_h - wigner_term - xi_term))


def boost_weyl(spinor: WeylSpinor, p: FourMomentum) -> WeylSpinor:
    """Boost a rest spinor with Lambda_R or Lambda_L according to its chirality."""
    boost = boost_right(p) if spinor.chirality == RIGHT else boost_left(p)
    return WeylSpinor(
        boost @ spinor.components, spinor.helicity, spinor.chirality, spinor.theta, spinor.phi
    )


def left_from_right(h: float, theta: float, phi: float) -> np.ndarray:
    """Left rest spinor of helicity h fixed by the helicity interchange relations.

    phi_L^up = -Theta [phi_R^down]*, phi_L^down = +Theta [phi_R^up]*.
    """
    h = _check_helicity(h)
    partner = rest_spinor(-h, theta, phi, RIGHT).components
    sign = -1.0 if h == HELICITY_UP else 1.0
    return sign * (wigner_theta() @ np.conj(partner))


def make_dirac(
    h: float, p: FourMomentum, theta: float = 0.0, phi: float = 0.0
) -> tuple[Bispinor, Bispinor]:
    """Build the Dirac pair u_h(p), v_h(p) = gamma^5 u_h(p).

    Args:
        h: Helicity of the right-handed rest spinor
        p: Target momentum
        theta: Polar angle of the rest quantization direction
        phi: Azimuthal angle of the rest quantization direction

    Returns:
        Tuple (u, v) of Bispinor
    """
    right = rest_spinor(h, theta, phi, RIGHT)
    left = WeylSpinor(left_from_right(h, theta, phi), h, LEFT, theta, phi)
    u = np.concatenate([boost_weyl(right, p).components, boost_weyl(left, p).components])
    v = gamma_set()[4] @ u
    return Bispinor(u, KIND_U, h, p), Bispinor(v, KIND_V, h, p)


def make_lambda(
    eta: float, kind: str, p: FourMomentum, theta: float = 0.0, phi: float = 0.0
) -> Bispinor:
    """Build lambda^{S,A}_eta(p) = ((zeta Theta) phi_L*(p), phi_L(p)).

    zeta = +i for S and -i for A; phi_L has helicity -eta.
    """
    eta = _check_helicity(eta)
    zeta = ZETA[_check_kind(kind)]
    left = boost_weyl(rest_spinor(-eta, theta, phi, LEFT), p).components
    upper = zeta * (wigner_theta() @ np.conj(left))
    return Bispinor(np.concatenate([upper, left]), f"lambda_{kind}", eta, p, zeta)


def make_rho(
    eta: float, kind: str, p: FourMomentum, theta: float = 0.0, phi: float = 0.0
) -> Bispinor:
    """Build rho^{S,A}_eta(p) = (phi_R(p), (zeta Theta)* phi_R*(p)), phi_R of helicity eta."""
    eta = _check_helicity(eta)
    zeta = ZETA[_check_kind(kind)]
    right = boost_weyl(rest_spinor(eta, theta, phi, RIGHT), p).components
    lower = np.conj(zeta * wigner_theta()) @ np.conj(right)
    return Bispinor(np.concatenate([right, lower]), f"rho_{kind}", eta, p, zeta)


def classify_conjugacy(spinor: Bispinor, tolerance: float = DEFAULT_TOLERANCE) -> str:
    """Classify a bispinor as self (S) or anti-self (A) charge conjugate, or neither.

    Raises:
        DegenerateSpinorError: If the spinor vanishes
    """
    norm = spinor.norm
    if norm <= tolerance:
        raise DegenerateSpinorError("cannot classify the zero spinor")
    image = apply_charge_conjugation(spinor.components)
    if np.linalg.norm(image - spinor.components) <= tolerance * norm:
        return KIND_SELF
    if np.linalg.norm(image + spinor.components) <= tolerance * norm:
        return KIND_ANTI
    logger.debug("spinor of kind %s is not a charge-conjugation eigenstate", spinor.kind)
    return KIND_NEITHER
