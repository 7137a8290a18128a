"""Basis conventions, tolerances and the convention fingerprint.

Conventions v1
==============

Every matrix in this package is written in one fixed basis. Reports echo the
fingerprint below so that a residual can always be traced back to the phase
and ordering choices it was computed under.

Convention Compatibility:
    - CONVENTION_VERSION = 1: chiral basis, (+,-,-,-) metric, half-angle rest spinors
    - Any change to a phase below MUST bump CONVENTION_VERSION, since the sign
      branches of the lambda equations depend on it
"""

import math

CONVENTION_VERSION = 1

# ============================================================================
# Basis
# ============================================================================

METRIC = (1.0, -1.0, -1.0, -1.0)  # g^{mu nu} diagonal, (+,-,-,-)
BISPINOR_ORDER = ("phi_R", "phi_L")  # upper block right-handed
GAMMA5_DIAGONAL = (1.0, 1.0, -1.0, -1.0)
POSITIVE_FREQUENCY = "exp(-i p.x)"

# ============================================================================
# Helicity labels
# ============================================================================

HELICITY_UP = 0.5
HELICITY_DOWN = -0.5
HELICITIES = (HELICITY_UP, HELICITY_DOWN)

KIND_SELF = "S"  # self charge-conjugate, eigenvalue +1
KIND_ANTI = "A"  # anti-self charge-conjugate, eigenvalue -1
KIND_NEITHER = "neither"

# zeta_lambda and zeta_rho for S / A
ZETA = {KIND_SELF: 1j, KIND_ANTI: -1j}

# ============================================================================
# Numerics
# ============================================================================

DEFAULT_TOLERANCE = 1e-10
ROOT_MERGE_RTOL = 1e-8  # clustering of numerically split repeated roots
MASSLESS_RTOL = 1e-12  # p^2 below this fraction of the coefficient scale is zero
MAX_P_OVER_M = 1e6  # cosh(phi) stays finite well below this
P_OVER_M_MIN = 1e-3  # lower edge of log-uniform momentum sampling
SPINOR_DIM = 4
REAL_DIM = 2 * SPINOR_DIM

# ============================================================================
# Fingerprint
# ============================================================================

CONVENTION_FINGERPRINT = {
    "version": CONVENTION_VERSION,
    "basis": "chiral, (phi_R, phi_L)",
    "metric": "+---",
    "gamma5": "diag(1,1,-1,-1)",
    "frequency": POSITIVE_FREQUENCY,
    "charge_conjugation": "[[0, i*Theta], [-i*Theta, 0]] K",
    "wigner": "[[0, -1], [1, 0]]",
    "rest_spinor": "unit norm, half-angle azimuthal phases",
    "theta_h": "up->theta1, down->theta2",
    "zeta": "S:+i, A:-i",
    "eta": "helicity of the right-handed block",
}
