"""Momentum-space wave operators, residual checks, dispersion and mode compatibility.

Plane waves use the exp(-i p.x) positive-frequency convention, so i d_mu acts as
p_mu. The charge conjugation C K maps exp(-i p.x) onto exp(+i p.x); wherever
an antilinear term has to be followed to the field level the two frequencies
are carried together (the frequency-doubled operator), or the equation is
taken into the Majorana representation where every operator is real.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .algebra import (
    RealLinearOp,
    charge_conjugation_matrix,
    gamma_set,
    identity,
    majorana_transform,
    realify,
    slash,
)
from .constants import (
    DEFAULT_TOLERANCE,
    HELICITY_DOWN,
    HELICITY_UP,
    KIND_ANTI,
    KIND_SELF,
    MASSLESS_RTOL,
    METRIC,
    ROOT_MERGE_RTOL,
    SPINOR_DIM,
)
from .kinematics import FourMomentum
from .spinors import make_lambda

logger = logging.getLogger(__name__)

COMPATIBILITY_TOLERANCE = 1e-8
MASSLESS_FLAG = "massless-degenerate"
COMPLEX_FLAG = "complex-roots"
PAIRING_UPPER = "c_up = -i c_down, d_up = +i d_down"
PAIRING_LOWER = "c_up = +i c_down, d_up = -i d_down"
PAIRING_NONE = "none"

# phases exp(-i s t) at which field-level identities are sampled
_SAMPLE_PHASES = tuple(0.3 + 2.0 * math.pi * k / 5 for k in range(5))


class UndefinedIdentificationError(ValueError):
    """Raised when an operation needs a != 0."""

    pass


class BranchMismatchError(ValueError):
    """Raised when parameters fall outside the branch an operation is defined on."""

    pass


@dataclass(frozen=True)
class EquationParams:
    """Constants (a, b) of the first-order equation and the mass scale."""

    a: float
    b: float
    m: float = 1.0

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.a, self.b, self.m)):
            raise ValueError("equation parameters must be finite")
        if self.m <= 0:
            raise ValueError(f"mass must be positive, got {self.m}")


@dataclass(frozen=True)
class GeneralizedParams:
    """Parameters of the generalized equation with phases alpha and reals beta."""

    a: float
    b: float
    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    m: float = 1.0

    def __post_init__(self) -> None:
        values = (self.a, self.b, self.alpha1, self.alpha2, self.beta1, self.beta2, self.m)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("generalized parameters must be finite")
        if self.m <= 0:
            raise ValueError(f"mass must be positive, got {self.m}")

    @classmethod
    def first_generalization(cls, params: EquationParams) -> GeneralizedParams:
        """The equation [i a gamma.d/m - (b-1) gamma^5 C K] Psi = 0."""
        return cls(params.a, params.b, 0.0, 0.0, params.b - 1.0, 0.0, params.m)


@dataclass(frozen=True)
class ModeCoefficients:
    """Plane-wave expansion coefficients treated as c-numbers."""

    c_up: complex
    c_down: complex
    d_up: complex
    d_down: complex

    @classmethod
    def from_vector(cls, vector: Sequence[complex]) -> ModeCoefficients:
        c_up, c_down, d_up, d_down = (complex(v) for v in vector)
        return cls(c_up, c_down, d_up, d_down)

    def as_vector(self) -> np.ndarray:
        return np.array([self.c_up, self.c_down, self.d_up, self.d_down], dtype=np.complex128)


@dataclass(frozen=True)
class DispersionResult:
    """Roots in p^2 of the determinant of a momentum-space operator."""

    roots: tuple[float, ...]
    multiplicities: tuple[int, ...]
    flags: tuple[str, ...] = ()

    @property
    def masses(self) -> tuple[float | None, ...]:
        return tuple(math.sqrt(r) if r >= 0 else None for r in self.roots)

    @property
    def massless(self) -> bool:
        return MASSLESS_FLAG in self.flags


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a matrix-identity check over sampled momenta."""

    name: str
    max_deviation: float
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CompatibilityResult:
    """Solvability of the homogeneous mode-constraint system."""

    consistent: bool
    kernel_dim: int
    constraint_gap: float
    smallest_singular_value: float
    literal_consistent: bool
    readings_agree: bool


@dataclass(frozen=True)
class DegenerationReport:
    """Kernel structure of the compatibility system at beta1 = 0."""

    consistent: bool
    pairing: str
    kernel: tuple[ModeCoefficients, ...]
    max_deviation: float


def _components(p) -> np.ndarray:
    if isinstance(p, FourMomentum):
        return p.components
    return np.asarray(p, dtype=np.float64)


def _lower(p) -> np.ndarray:
    return np.asarray(METRIC) * _components(p)


def _mass_shell(p) -> float:
    components = _components(p)
    return float(components[0] ** 2 - np.dot(components[1:], components[1:]))


def _require_a(a: float) -> None:
    if a == 0:
        raise UndefinedIdentificationError("a must be nonzero")


def dirac_op(p) -> np.ndarray:
    """Return p-slash = gamma^mu p_mu for a FourMomentum or any 4-vector."""
    return slash(_components(p))


def _lambda_pair(kind: str, p: FourMomentum, theta: float, phi: float):
    return (
        make_lambda(HELICITY_UP, kind, p, theta, phi),
        make_lambda(HELICITY_DOWN, kind, p, theta, phi),
    )


def lambda_equation_residuals(
    p: FourMomentum,
    params: EquationParams,
    kind: str | None = None,
    theta: float = 0.0,
    phi: float = 0.0,
) -> dict[str, float]:
    """Residuals of the momentum-space equations for lambda^{S,A}.

    For S (sign -) and A (sign +):
        i a (p-slash/m) lambda_up   - (b C K -+ 1) lambda_down = 0
        i a (p-slash/m) lambda_down + (b C K -+ 1) lambda_up   = 0
    Each residual is the norm of the left-hand side divided by the norm of the
    spinor the (b C K -+ 1) term acts on, so it reads |a - (b - 1)| on the
    matching branch.

    Args:
        p: Momentum of the spinors
        params: Equation constants
        kind: "S", "A", or None for all four equations
        theta: Polar angle of the rest quantization direction
        phi: Azimuthal angle of the rest quantization direction

    Returns:
        Mapping m1..m4 (S gives m1, m2; A gives m3, m4) to residuals
    """
    kinds = (KIND_SELF, KIND_ANTI) if kind is None else (kind,)
    kinetic = 1j * params.a * dirac_op(p) / params.m
    conjugation = params.b * charge_conjugation_matrix()
    residuals: dict[str, float] = {}
    for current in kinds:
        sign = -1.0 if current == KIND_SELF else 1.0
        mass_term = realify(sign * identity(), conjugation)
        up, down = _lambda_pair(current, p, theta, phi)
        first = kinetic @ up.components - mass_term.apply(down.components)
        second = kinetic @ down.components + mass_term.apply(up.components)
        labels = ("m1", "m2") if current == KIND_SELF else ("m3", "m4")
        residuals[labels[0]] = float(np.linalg.norm(first) / down.norm)
        residuals[labels[1]] = float(np.linalg.norm(second) / up.norm)
    logger.debug("lambda residuals at a=%g b=%g: %s", params.a, params.b, residuals)
    return residuals


def first_order_op(p, params: EquationParams, frequency: int = +1) -> RealLinearOp:
    """Realified a (+-p-slash)/m + b C K - 1 acting on one plane-wave amplitude."""
    if frequency not in (+1, -1):
        raise ValueError("frequency must be +1 or -1")
    linear = frequency * params.a * dirac_op(p) / params.m - identity()
    return realify(linear, params.b * charge_conjugation_matrix())


def _first_order_parts(params: EquationParams):
    gammas = gamma_set()[:4]
    derivative = [1j * params.a * g / params.m for g in gammas]
    return derivative, -identity(), params.b * charge_conjugation_matrix()


def _generalized_parts(params: GeneralizedParams):
    gammas = gamma_set()
    derivative = [1j * params.a * g / params.m for g in gammas[:4]]
    mass = cmath.exp(1j * params.alpha2) * params.beta2 * identity()
    anti = -cmath.exp(1j * params.alpha1) * params.beta1 * gammas[4] @ charge_conjugation_matrix()
    return derivative, mass, anti


def coupled_frequency_op(p, derivative, mass, anti) -> np.ndarray:
    """Frequency-doubled operator on (w, z) for Psi = w e^{-ip.x} + z* e^{+ip.x}.

    The antilinear term couples the two frequencies, giving
    [[L(p), A], [A*, L(-p)*]] with L(p) = sum_mu D_mu (-i p_mu) + M.
    """
    lower = _lower(p)
    kinetic = sum(d * (-1j * lower[mu]) for mu, d in enumerate(derivative))
    plus = kinetic + mass
    minus = -kinetic + mass
    return np.block([[plus, anti], [np.conj(anti), np.conj(minus)]])


def first_order_coupled_op(p, params: EquationParams) -> np.ndarray:
    """Frequency-doubled form of a i gamma.d/m + b C K - 1."""
    return coupled_frequency_op(p, *_first_order_parts(params))


def _sample_fields(p, frequency: int, rng: np.random.Generator):
    """Real Majorana fields Psi_1, Psi_2 and their derivatives at sampled phases."""
    lower = _lower(p)
    amplitudes = rng.standard_normal((2, SPINOR_DIM)) + 1j * rng.standard_normal((2, SPINOR_DIM))
    for t in _SAMPLE_PHASES:
        wave = cmath.exp(-1j * frequency * t)
        values = [np.real(w * wave) for w in amplitudes]
        derivatives = [
            [np.real(-1j * frequency * lower[mu] * w * wave) for mu in range(4)]
            for w in amplitudes
        ]
        yield values, derivatives


def _majorana_image(derivative, mass, anti, values, derivatives) -> np.ndarray:
    """U O(Psi) for Psi = U^dagger (Psi_1 + i Psi_2), O = D^mu d_mu + M + A K."""
    u, u_dagger = majorana_transform()
    psi = u_dagger @ (values[0] + 1j * values[1])
    d_psi = [u_dagger @ (derivatives[0][mu] + 1j * derivatives[1][mu]) for mu in range(4)]
    image = sum(d @ d_psi[mu] for mu, d in enumerate(derivative)) + mass @ psi
    image = image + anti @ np.conj(psi)
    return u @ image


def _real_part_in_majorana(matrix: np.ndarray) -> np.ndarray:
    u, u_dagger = majorana_transform()
    return np.real(u @ matrix @ u_dagger)


def _apply_real(derivative_real, mass_real, value, derivative) -> np.ndarray:
    return sum(d @ derivative[mu] for mu, d in enumerate(derivative_real)) + mass_real @ value


def majorana_decouple(
    params: EquationParams,
    momenta: Iterable[FourMomentum],
    rng: np.random.Generator | None = None,
) -> VerificationReport:
    """Check the Majorana-representation form of a i gamma.d/m + b C K - 1.

    With Psi^MR = Psi_1 + i Psi_2, phi = Psi_1 + Psi_2 and chi = Psi_1 - Psi_2 the
    equation must split into the real coupled set
        [a i gamma.d/m - 1] phi - b chi = 0,  [a i gamma.d/m - 1] chi - b phi = 0.
    Real plane waves of both frequencies are pushed through the original
    complex equation and compared with the real set.

    Raises:
        UndefinedIdentificationError: If a = 0
    """
    _require_a(params.a)
    rng = rng or np.random.default_rng(0)
    derivative, mass, anti = _first_order_parts(params)
    derivative_real = [_real_part_in_majorana(d) for d in derivative]
    mass_real = _real_part_in_majorana(mass)
    worst = {+1: 0.0, -1: 0.0}
    samples = 0
    for p in momenta:
        for frequency in (+1, -1):
            for values, derivatives in _sample_fields(p, frequency, rng):
                image = _majorana_image(derivative, mass, anti, values, derivatives)
                phi_value = values[0] + values[1]
                chi_value = values[0] - values[1]
                phi_deriv = [derivatives[0][mu] + derivatives[1][mu] for mu in range(4)]
                chi_deriv = [derivatives[0][mu] - derivatives[1][mu] for mu in range(4)]
                first = _apply_real(derivative_real, mass_real, phi_value, phi_deriv)
                first = first - params.b * chi_value
                second = _apply_real(derivative_real, mass_real, chi_value, chi_deriv)
                second = second - params.b * phi_value
                deviation = max(
                    np.max(np.abs(image.real + image.imag - first)),
                    np.max(np.abs(image.real - image.imag - second)),
                )
                worst[frequency] = max(worst[frequency], float(deviation))
        samples += 1
    details = {
        "momenta": samples,
        "coupling": abs(params.b),
        "uncoupled": params.b == 0,
        "deviation_positive_frequency": worst[+1],
        "deviation_negative_frequency": worst[-1],
    }
    return VerificationReport("majorana-decoupling", max(worst.values()), details)


def _generalized_pair_deviation(params: GeneralizedParams, p, rng, frequency: int):
    """Largest deviation from the stated real pair, plus the closure on phi."""
    derivative, mass, anti = _generalized_parts(params)
    derivative_real = [_real_part_in_majorana(d) for d in derivative]
    gamma5_real = _real_part_in_majorana(1j * gamma_set()[4])
    sin1, cos1 = math.sin(params.alpha1), math.cos(params.alpha1)
    mass_real = params.beta2 * math.cos(params.alpha2)
    zero = np.zeros((SPINOR_DIM, SPINOR_DIM))
    pair_worst = 0.0
    closure_worst = 0.0
    for values, derivatives in _sample_fields(p, frequency, rng):
        image = _majorana_image(derivative, mass, anti, values, derivatives)
        kinetic = [_apply_real(derivative_real, zero, values[k], derivatives[k]) for k in (0, 1)]
        first = (
            kinetic[0]
            + params.beta1 * sin1 * gamma5_real @ values[0]
            + mass_real * values[0]
            - params.beta1 * cos1 * gamma5_real @ values[1]
        )
        second = (
            kinetic[1]
            - params.beta1 * sin1 * gamma5_real @ values[1]
            + mass_real * values[1]
            - params.beta1 * cos1 * gamma5_real @ values[0]
        )
        pair_worst = max(
            pair_worst,
            float(np.max(np.abs(image.real - first))),
            float(np.max(np.abs(image.imag - second))),
        )
        phi_value = values[0] + values[1]
        phi_deriv = [derivatives[0][mu] + derivatives[1][mu] for mu in range(4)]
        closed = _apply_real(derivative_real, zero, phi_value, phi_deriv)
        closed = closed - params.beta1 * gamma5_real @ phi_value
        closure_worst = max(closure_worst, float(np.max(np.abs(image.real + image.imag - closed))))
    return pair_worst, closure_worst


def generalized_majorana_check(
    params: GeneralizedParams,
    momenta: Iterable[FourMomentum],
    rng: np.random.Generator | None = None,
) -> VerificationReport:
    """Check the real Majorana pair of the generalized equation.

    [i a gamma.d/m + i beta1 sin(alpha1) gamma^5 + beta2] Psi_1
        - i beta1 cos(alpha1) gamma^5 Psi_2 = 0 and the mirror equation for Psi_2.
    The pair only exists when e^{i alpha2} beta2 is real; otherwise the
    imaginary part of the mass term shows up as deviation.
    """
    _require_a(params.a)
    rng = rng or np.random.default_rng(0)
    worst = 0.0
    for p in momenta:
        for frequency in (+1, -1):
            pair, _ = _generalized_pair_deviation(params, p, rng, frequency)
            worst = max(worst, pair)
    return VerificationReport("generalized-majorana-pair", worst, {"alpha2": params.alpha2})


def barut_identification(params: EquationParams) -> tuple[float, float]:
    """Return (alpha2, kappa) = (a/2m, m(1 - b^2)/2a).

    Raises:
        UndefinedIdentificationError: If a = 0
    """
    _require_a(params.a)
    return params.a / (2.0 * params.m), params.m * (1.0 - params.b**2) / (2.0 * params.a)


def barut_factorization_check(p, params: EquationParams) -> float:
    """Max entry of (-m/2a)[(a p-slash/m - 1)^2 - b^2] - [p-slash - alpha2 p^2 - kappa]."""
    alpha2, kappa = barut_identification(params)
    p_slash = dirac_op(p)
    first = params.a * p_slash / params.m - identity()
    squared = (-params.m / (2.0 * params.a)) * (first @ first - params.b**2 * identity())
    barut = p_slash - (alpha2 * _mass_shell(p) + kappa) * identity()
    return float(np.max(np.abs(squared - barut)))


def klein_gordon_residual(p_squared: float, params: EquationParams) -> float:
    """|-a^2 p^2/m^2 + (b - 1)^2| for a plane wave with d^2 -> -p^2."""
    return abs(-(params.a**2) * p_squared / params.m**2 + (params.b - 1.0) ** 2)


def sokolik_reduction_check(
    params: EquationParams,
    momenta: Iterable[FourMomentum],
    rng: np.random.Generator | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Check the a = 1 - b reduction onto phi = Psi_1 + Psi_2.

    The equation [i a gamma.d/m - (b-1) gamma^5 C K] Psi = 0 goes over into two
    real equations that close on phi alone; iterating the closed first-order
    operator must give the Klein-Gordon operator a^2 p^2/m^2 - (b-1)^2.

    Raises:
        BranchMismatchError: If a != 1 - b
    """
    if abs(params.a - (1.0 - params.b)) > tolerance * max(1.0, abs(params.b)):
        raise BranchMismatchError(f"reduction needs a = 1 - b, got a={params.a}, b={params.b}")
    _require_a(params.a)
    rng = rng or np.random.default_rng(0)
    generalized = GeneralizedParams.first_generalization(params)
    u, u_dagger = majorana_transform()
    gamma5_real = _real_part_in_majorana(1j * gamma_set()[4])
    pair_worst = closure_worst = kg_worst = 0.0
    samples = 0
    for p in momenta:
        kg_target = params.a**2 * _mass_shell(p) / params.m**2 - (params.b - 1.0) ** 2
        for frequency in (+1, -1):
            pair, closure = _generalized_pair_deviation(generalized, p, rng, frequency)
            pair_worst = max(pair_worst, pair)
            closure_worst = max(closure_worst, closure)
            closed = frequency * params.a * (u @ dirac_op(p) @ u_dagger) / params.m
            closed = closed - (params.b - 1.0) * gamma5_real
            kg = closed @ closed - kg_target * identity()
            kg_worst = max(kg_worst, float(np.max(np.abs(kg))))
        samples += 1
    details = {
        "momenta": samples,
        "pair_deviation": pair_worst,
        "closure_deviation": closure_worst,
        "klein_gordon_deviation": kg_worst,
    }
    return VerificationReport(
        "sokolik-reduction", max(pair_worst, closure_worst, kg_worst), details
    )


def _pencil_roots(derivative, mass, anti, m: float) -> DispersionResult:
    """p^2 roots of det(coupled op) = 0 from the generalized eigenvalues at rest."""
    at_unit = coupled_frequency_op((1.0, 0.0, 0.0, 0.0), derivative, mass, anti)
    at_zero = coupled_frequency_op((0.0, 0.0, 0.0, 0.0), derivative, mass, anti)
    slope = at_unit - at_zero
    energies = scipy.linalg.eig(at_zero, -slope, right=False)
    energies = energies[np.isfinite(energies)]
    squared = np.sort_complex(energies**2)
    flags: list[str] = []
    # mass scale of the pencil coefficients, m (b-1) / a and alike
    ratio = np.linalg.norm(at_zero, 2) / np.linalg.norm(slope, 2)
    floor = MASSLESS_RTOL * max(m**2, ratio**2)
    if np.any(np.abs(squared.imag) > np.maximum(ROOT_MERGE_RTOL * np.abs(squared), floor)):
        flags.append(COMPLEX_FLAG)
    values = sorted(float(v) for v in squared.real)
    clusters: list[list[float]] = []
    for value in values:
        last = abs(clusters[-1][-1]) if clusters else 0.0
        gap = max(ROOT_MERGE_RTOL * max(abs(value), last), floor)
        if clusters and abs(value - clusters[-1][-1]) <= gap:
            clusters[-1].append(value)
        else:
            clusters.append([value])
    roots = tuple(float(np.mean(c)) for c in clusters)
    multiplicities = tuple(len(c) // 2 for c in clusters)
    if any(abs(r) <= floor for r in roots):
        flags.append(MASSLESS_FLAG)
        roots = tuple(0.0 if abs(r) <= floor else r for r in roots)
    return DispersionResult(roots, multiplicities, tuple(flags))


def dispersion_roots(params: EquationParams | GeneralizedParams) -> DispersionResult:
    """Dispersion p^2 roots of the field-level equation selected by the parameters.

    EquationParams select [i a gamma.d/m - (b-1) gamma^5 C K], the field equation
    behind the lambda equations, with the single root m^2 (b-1)^2 / a^2.
    GeneralizedParams select the generalized equation; for alpha2 in {0, pi} the
    root is m^2 (beta1^2 + beta2^2) / a^2 for every alpha1.

    Raises:
        UndefinedIdentificationError: If a = 0
    """
    _require_a(params.a)
    if isinstance(params, EquationParams):
        generalized = GeneralizedParams.first_generalization(params)
    else:
        generalized = params
    result = _pencil_roots(*_generalized_parts(generalized), generalized.m)
    if result.massless:
        logger.warning("massless-degenerate dispersion for %s", params)
    return result


def barut_spectrum(params: EquationParams) -> DispersionResult:
    """Two-mass spectrum of a i gamma.d/m + b C K - 1 itself.

    Roots m^2 (1 - b)^2 / a^2 and m^2 (1 + b)^2 / a^2, multiplicity 2 each.
    """
    _require_a(params.a)
    return _pencil_roots(*_first_order_parts(params), params.m)


def _constraint_matrix(params: GeneralizedParams, conjugate: bool) -> np.ndarray:
    """Rows of the mode constraints acting on (c_up, c_down, d_up, d_down)."""
    e1 = cmath.exp(1j * params.alpha1)
    e2 = cmath.exp(1j * params.alpha2)
    f1, f2 = (np.conj(e1), np.conj(e2)) if conjugate else (e1, e2)
    s, t = params.beta1, params.beta2
    gap = params.b - 1.0
    return np.array(
        [
            [gap, 1j * e2 * t, 0, -1j * e1 * s],
            [-1j * e2 * t, gap, 1j * e1 * s, 0],
            [0, -1j * f1 * s, gap, -1j * f2 * t],
            [1j * f1 * s, 0, 1j * f2 * t, gap],
        ],
        dtype=np.complex128,
    )


def _scale(params: GeneralizedParams) -> float:
    return max(1.0, abs(params.b - 1.0), abs(params.beta1), abs(params.beta2))


def _solvability(matrix: np.ndarray, scale: float, tolerance: float) -> tuple[bool, int, float]:
    singular = np.linalg.svd(matrix, compute_uv=False)
    threshold = tolerance * scale
    kernel_dim = int(np.sum(singular <= threshold))
    return kernel_dim > 0, kernel_dim, float(singular[-1])


def compatibility_solve(
    params: GeneralizedParams, tolerance: float = COMPATIBILITY_TOLERANCE
) -> CompatibilityResult:
    """Solve the homogeneous mode constraints of the generalized equation.

    The daggered pair of relations is conjugated into undaggered form before
    the 4x4 system is assembled. The literal reading (same phases, no
    conjugation) is solved too and compared.
    """
    scale = _scale(params)
    consistent, kernel_dim, smallest = _solvability(
        _constraint_matrix(params, conjugate=True), scale, tolerance
    )
    literal, _, _ = _solvability(_constraint_matrix(params, conjugate=False), scale, tolerance)
    gap = abs(params.beta1**2 + params.beta2**2 - (params.b - 1.0) ** 2)
    if literal != consistent:
        logger.warning(
            "readings of the daggered constraints disagree at alpha1=%g alpha2=%g",
            params.alpha1,
            params.alpha2,
        )
    return CompatibilityResult(consistent, kernel_dim, gap, smallest, literal, literal == consistent)


def predicted_compatibility(params: GeneralizedParams, tolerance: float) -> bool:
    """Closed-form condition: alpha2 in {0, pi} and beta1^2 + beta2^2 = (b - 1)^2.

    The phase alpha2 drops out when beta2 = 0.
    """
    gap = abs(params.beta1**2 + params.beta2**2 - (params.b - 1.0) ** 2)
    real_phase = abs(math.sin(params.alpha2)) <= tolerance or params.beta2 == 0
    return real_phase and gap <= tolerance * _scale(params) ** 2


def dirac_degeneration(
    params: GeneralizedParams, tolerance: float = COMPATIBILITY_TOLERANCE
) -> DegenerationReport:
    """Kernel of the compatibility system when beta1 = 0.

    Raises:
        BranchMismatchError: If beta1 != 0
    """
    if params.beta1 != 0:
        raise BranchMismatchError(f"Dirac degeneration needs beta1 = 0, got {params.beta1}")
    matrix = _constraint_matrix(params, conjugate=True)
    result = compatibility_solve(params, tolerance)
    if not result.consistent:
        return DegenerationReport(False, PAIRING_NONE, (), float("inf"))
    basis = scipy.linalg.null_space(matrix, rcond=tolerance)
    kernel = tuple(ModeCoefficients.from_vector(v) for v in basis.T)
    upper = max(abs(k.c_up + 1j * k.c_down) + abs(k.d_up - 1j * k.d_down) for k in kernel)
    lower = max(abs(k.c_up - 1j * k.c_down) + abs(k.d_up + 1j * k.d_down) for k in kernel)
    threshold = math.sqrt(tolerance)
    if upper <= threshold:
        pairing, deviation = PAIRING_UPPER, upper
    elif lower <= threshold:
        pairing, deviation = PAIRING_LOWER, lower
    else:
        pairing, deviation = PAIRING_NONE, min(upper, lower)
    logger.debug("beta1 = 0 kernel at alpha2=%g: %s", params.alpha2, pairing)
    return DegenerationReport(True, pairing, kernel, float(deviation))
