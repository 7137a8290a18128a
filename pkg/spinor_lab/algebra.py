"""Primitive spinor algebra in the chiral (phi_R, phi_L) basis.

Houses the Pauli and gamma matrices, the spin-1/2 Wigner operator, the
discrete symmetry operators, the Majorana transform and the realification of
operators that mix a linear and an antilinear (complex conjugating) part.

Complex matrices are plain ``numpy`` arrays of dtype ``complex128``. Every
function returns a fresh array, so callers may mutate results freely.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .constants import (
    BISPINOR_ORDER,
    CONVENTION_FINGERPRINT,
    GAMMA5_DIAGONAL,
    METRIC,
    POSITIVE_FREQUENCY,
    REAL_DIM,
    SPINOR_DIM,
)

logger = logging.getLogger(__name__)


class ShapeMismatchError(ValueError):
    """Raised when matrices of the wrong shape are combined."""

    pass


@dataclass(frozen=True)
class BasisConvention:
    """Conventions every operator in this package is written in."""

    metric: tuple[float, ...] = METRIC
    bispinor_order: tuple[str, str] = BISPINOR_ORDER
    gamma5_diagonal: tuple[float, ...] = GAMMA5_DIAGONAL
    positive_frequency: str = POSITIVE_FREQUENCY

    def fingerprint(self) -> dict[str, object]:
        """Return the convention fingerprint echoed in every report."""
        return dict(CONVENTION_FINGERPRINT)


CONVENTION = BasisConvention()


def identity(n: int = SPINOR_DIM) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def pauli() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return the Pauli matrices (sigma_x, sigma_y, sigma_z)."""
    sigma_x = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sigma_y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    sigma_z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    return sigma_x, sigma_y, sigma_z


def sigma_dot(vector) -> np.ndarray:
    """Contract a real 3-vector with the Pauli matrices.

    Args:
        vector: Three real components

    Returns:
        The 2x2 matrix sigma . vector
    """
    vx, vy, vz = (float(c) for c in vector)
    sigma_x, sigma_y, sigma_z = pauli()
    return vx * sigma_x + vy * sigma_y + vz * sigma_z


def wigner_theta() -> np.ndarray:
    """Return the spin-1/2 Wigner operator.

    Entries are (-1)^(1/2 + h) delta_{h', -h} with rows and columns ordered
    h = +1/2, h = -1/2.

    Returns:
        2x2 matrix [[0, -1], [1, 0]]
    """
    helicities = (0.5, -0.5)
    theta = np.zeros((2, 2), dtype=np.complex128)
    for row, h in enumerate(helicities):
        for col, h_prime in enumerate(helicities):
            if h_prime == -h:
                theta[row, col] = (-1.0) ** round(0.5 + h)
    return theta


def _blocks(upper_left, upper_right, lower_left, lower_right) -> np.ndarray:
    return np.block([[upper_left, upper_right], [lower_left, lower_right]]).astype(np.complex128)


def gamma_set() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return (gamma^0, gamma^1, gamma^2, gamma^3, gamma^5) in the chiral basis.

    gamma^0 is the anti-diagonal block identity, gamma^i carries -sigma_i in the
    upper-right block and +sigma_i in the lower-left one, and
    gamma^5 = diag(1, 1, -1, -1).

    Returns:
        Tuple of five 4x4 complex matrices
    """
    one = np.eye(2)
    zero = np.zeros((2, 2))
    gamma0 = _blocks(zero, one, one, zero)
    spatial = tuple(_blocks(zero, -sigma, sigma, zero) for sigma in pauli())
    gamma5 = np.diag(np.asarray(GAMMA5_DIAGONAL, dtype=np.complex128))
    return (gamma0, *spatial, gamma5)


def slash(four_vector) -> np.ndarray:
    """Contract a contravariant 4-vector with the gamma matrices.

    Args:
        four_vector: Components (p^0, p^1, p^2, p^3); any real values, on-shell
            or not

    Returns:
        gamma^mu p_mu = p^0 gamma^0 - p^i gamma^i
    """
    components = np.asarray(four_vector, dtype=np.float64)
    if components.shape != (4,):
        raise ShapeMismatchError(f"expected a 4-vector, got shape {components.shape}")
    gammas = gamma_set()[:4]
    return sum(METRIC[mu] * components[mu] * gammas[mu] for mu in range(4))


def parity() -> np.ndarray:
    """Return the space-inversion operator S^s, swapping phi_R and phi_L."""
    one = np.eye(2)
    zero = np.zeros((2, 2))
    return _blocks(zero, one, one, zero)


def charge_conjugation_matrix() -> np.ndarray:
    """Return the matrix part C of S^c = C K exactly as printed."""
    theta = wigner_theta()
    zero = np.zeros((2, 2))
    return _blocks(zero, 1j * theta, -1j * theta, zero)


def majorana_transform() -> tuple[np.ndarray, np.ndarray]:
    """Return the unitary U into the Majorana representation and its stated adjoint.

    Returns:
        Tuple (U, U_dagger), both 4x4, with U_dagger written out block by block
        rather than computed, so unitarity remains a checkable property
    """
    theta = wigner_theta()
    one = np.eye(2)
    u = 0.5 * _blocks(one - 1j * theta, one + 1j * theta, -one - 1j * theta, one - 1j * theta)
    u_dagger = 0.5 * _blocks(
        one - 1j * theta, -one - 1j * theta, one + 1j * theta, one - 1j * theta
    )
    return u, u_dagger


def _check_square(matrix: np.ndarray, name: str) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.shape != (SPINOR_DIM, SPINOR_DIM):
        raise ShapeMismatchError(f"{name} must be {SPINOR_DIM}x{SPINOR_DIM}, got {matrix.shape}")
    return matrix


def realify_vector(psi) -> np.ndarray:
    """Map a complex 4-spinor to its real 8-vector (Re psi, Im psi)."""
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (SPINOR_DIM,):
        raise ShapeMismatchError(f"spinor must have {SPINOR_DIM} components, got {psi.shape}")
    return np.concatenate([psi.real, psi.imag])


def complexify_vector(vector) -> np.ndarray:
    """Inverse of realify_vector."""
    vector = np.asarray(vector, dtype=np.float64)
    if vector.shape != (REAL_DIM,):
        raise ShapeMismatchError(f"real vector must have {REAL_DIM} components")
    return vector[:SPINOR_DIM] + 1j * vector[SPINOR_DIM:]


@dataclass(frozen=True, eq=False)
class RealLinearOp:
    """Real 8x8 matrix acting on (Re psi, Im psi) of a 4-component spinor.

    Holds any operator of the form psi -> A psi + B psi*, which is real-linear
    but not complex-linear once B is nonzero.
    """

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.float64)
        if matrix.shape != (REAL_DIM, REAL_DIM):
            raise ShapeMismatchError(f"realified operator must be {REAL_DIM}x{REAL_DIM}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    def __matmul__(self, other: RealLinearOp) -> RealLinearOp:
        return RealLinearOp(self.matrix @ other.matrix)

    def __add__(self, other: RealLinearOp) -> RealLinearOp:
        return RealLinearOp(self.matrix + other.matrix)

    def __sub__(self, other: RealLinearOp) -> RealLinearOp:
        return RealLinearOp(self.matrix - other.matrix)

    def __neg__(self) -> RealLinearOp:
        return RealLinearOp(-self.matrix)

    def apply(self, psi) -> np.ndarray:
        """Apply to a complex spinor and return the complex result."""
        return complexify_vector(self.matrix @ realify_vector(psi))

    def parts(self) -> tuple[np.ndarray, np.ndarray]:
        """Recover (linear, antilinear) complex 4x4 matrices."""
        n = SPINOR_DIM
        p, q = self.matrix[:n, :n], self.matrix[:n, n:]
        r, s = self.matrix[n:, :n], self.matrix[n:, n:]
        linear = 0.5 * (p + s) + 0.5j * (r - q)
        antilinear = 0.5 * (p - s) + 0.5j * (r + q)
        return linear, antilinear

    def kernel_dim(self, tolerance: float) -> int:
        """Real dimension of the kernel, by singular values below tolerance * scale."""
        singular = np.linalg.svd(self.matrix, compute_uv=False)
        scale = max(1.0, float(singular[0]))
        return int(np.sum(singular < tolerance * scale))


def realify(linear, antilinear) -> RealLinearOp:
    """Realify psi -> linear . psi + antilinear . psi*.

    With A = linear and B = antilinear the real matrix is
    [[Re A + Re B, -Im A + Im B], [Im A + Im B, Re A - Re B]].

    Args:
        linear: 4x4 complex matrix
        antilinear: 4x4 complex matrix

    Returns:
        RealLinearOp of the combined action

    Raises:
        ShapeMismatchError: If either input is not 4x4
    """
    a = _check_square(linear, "linear part")
    b = _check_square(antilinear, "antilinear part")
    top = np.hstack([a.real + b.real, -a.imag + b.imag])
    bottom = np.hstack([a.imag + b.imag, a.real - b.real])
    return RealLinearOp(np.vstack([top, bottom]))


def i_operator() -> RealLinearOp:
    """Realified multiplication by i."""
    return realify(1j * identity(), np.zeros((SPINOR_DIM, SPINOR_DIM)))


def charge_conjugation() -> RealLinearOp:
    """Return S^c = C K as a realified operator."""
    return realify(np.zeros((SPINOR_DIM, SPINOR_DIM)), charge_conjugation_matrix())


def apply_charge_conjugation(psi) -> np.ndarray:
    """Apply S^c to a complex 4-spinor."""
    return charge_conjugation_matrix() @ np.conj(np.asarray(psi, dtype=np.complex128))
