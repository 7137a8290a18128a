"""Verify, sweep and dispersion runs assembled into result records."""

from __future__ import annotations

import itertools
import logging
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import numpy as np
import scipy.linalg

from .algebra import (
    anticommutator,
    charge_conjugation,
    charge_conjugation_matrix,
    gamma_set,
    i_operator,
    identity,
    majorana_transform,
    pauli,
    realify,
    sigma_dot,
    slash,
    wigner_theta,
)
from .config import SweepConfig
from .constants import HELICITIES, KIND_ANTI, KIND_SELF, METRIC, REAL_DIM
from .equations import (
    COMPLEX_FLAG,
    PAIRING_LOWER,
    PAIRING_UPPER,
    DispersionResult,
    EquationParams,
    GeneralizedParams,
    barut_factorization_check,
    barut_spectrum,
    compatibility_solve,
    dirac_degeneration,
    dispersion_roots,
    generalized_majorana_check,
    lambda_equation_residuals,
    majorana_decouple,
    predicted_compatibility,
    sokolik_reduction_check,
)
from .kinematics import FourMomentum, boost_left, boost_params, boost_right
from .report import VERDICT_DEGENERATE, make_record
from .spinors import (
    RBParams,
    classify_conjugacy,
    make_dirac,
    make_lambda,
    make_rho,
    ryder_burgard_residual,
)
from .utils import sample_momenta

logger = logging.getLogger(__name__)

DISPERSION_TOLERANCE = 1e-8
COMPATIBILITY_CHECK_TOLERANCE = 1e-8

# quantization directions the rest-frame relations are checked along
_REST_ANGLES = ((0.0, 0.0), (math.pi / 3, 0.7), (2.0, -1.1), (math.pi, 0.4))


def _is_real_phase(alpha: float) -> bool:
    return abs(math.sin(alpha)) <= 1e-12


def _equation_params(config: SweepConfig) -> EquationParams:
    return EquationParams(config.value("a"), config.value("b"), config.m)


def _generalized_params(config: SweepConfig) -> GeneralizedParams:
    return GeneralizedParams(
        config.value("a"),
        config.value("b"),
        config.value("alpha1"),
        config.value("alpha2"),
        config.value("beta1"),
        config.value("beta2"),
        config.m,
    )


def _field_scale(config: SweepConfig) -> float:
    """Magnitude of the field-level terms, used to make deviations relative."""
    a, b = abs(config.value("a")), abs(config.value("b"))
    return max(1.0, a, b) * (1.0 + config.p_over_m_max) ** 2


# ============================================================================
# Algebra and kinematics
# ============================================================================


def _clifford_residual() -> float:
    gammas = gamma_set()
    worst = 0.0
    for mu in range(4):
        for nu in range(4):
            expected = 2.0 * (METRIC[mu] if mu == nu else 0.0) * identity()
            worst = max(worst, np.max(np.abs(anticommutator(gammas[mu], gammas[nu]) - expected)))
        worst = max(worst, np.max(np.abs(anticommutator(gammas[4], gammas[mu]))))
    worst = max(worst, np.max(np.abs(gammas[4] @ gammas[4] - identity())))
    return float(worst)


def _wigner_residual() -> float:
    theta = wigner_theta()
    inverse = np.linalg.inv(theta)
    worst = np.max(np.abs(theta @ theta + identity(2)))
    for sigma in pauli():
        worst = max(worst, np.max(np.abs(theta @ np.conj(sigma) @ inverse + sigma)))
    return float(worst)


def _charge_conjugation_residual(momenta: list[FourMomentum]) -> float:
    c = charge_conjugation_matrix()
    inverse = np.linalg.inv(c)
    worst = np.max(np.abs(c @ np.conj(c) - identity()))
    involution = (charge_conjugation() @ charge_conjugation()).matrix
    worst = max(worst, np.max(np.abs(involution - np.eye(REAL_DIM))))
    for p in momenta:
        p_slash = slash(p.components) / p.mass
        worst = max(worst, np.max(np.abs(c @ np.conj(p_slash) @ inverse + p_slash)))
    return float(worst)


def _majorana_residual() -> float:
    u, u_dagger = majorana_transform()
    worst = np.max(np.abs(u @ u_dagger - identity()))
    worst = max(worst, np.max(np.abs(u_dagger - u.conj().T)))
    worst = max(worst, np.max(np.abs(u @ charge_conjugation_matrix() @ u.T + identity())))
    for gamma in gamma_set()[:4]:
        worst = max(worst, np.max(np.abs((u @ gamma @ u_dagger).real)))
    return float(worst)


def _realify_residual(seed: int) -> float:
    rng = np.random.default_rng(seed)
    a, b, c, d = (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)) for _ in range(4))
    composed = realify(a, b) @ realify(c, d)
    expected = realify(a @ c + b @ np.conj(d), a @ d + b @ np.conj(c))
    worst = np.max(np.abs(composed.matrix - expected.matrix))
    worst = max(worst, np.max(np.abs((i_operator() @ i_operator()).matrix + np.eye(REAL_DIM))))
    linear, antilinear = composed.parts()
    worst = max(worst, np.max(np.abs(linear - (a @ c + b @ np.conj(d)))))
    worst = max(worst, np.max(np.abs(antilinear - (a @ d + b @ np.conj(c)))))
    return float(worst)


def _boost_residual(momenta: list[FourMomentum]) -> float:
    rest = FourMomentum.at_rest(momenta[0].mass)
    worst = max(
        np.max(np.abs(boost_right(rest) - identity(2))),
        np.max(np.abs(boost_left(rest) - identity(2))),
    )
    for p in momenta:
        right, left = boost_right(p), boost_left(p)
        scale = float(np.max(np.abs(right)))
        params = boost_params(p)
        oracle = scipy.linalg.expm(0.5 * params.rapidity * sigma_dot(params.axis))
        worst = max(
            worst,
            abs(np.linalg.det(right) - 1.0),
            abs(np.linalg.det(left) - 1.0),
            np.max(np.abs(right @ left - identity(2))) / scale**2,
            np.max(np.abs(oracle - right)) / scale,
        )
    return float(worst)


# ============================================================================
# Spinors and equations
# ============================================================================


def _ryder_burgard_records(config: SweepConfig) -> list[dict[str, Any]]:
    a, b = config.value("a"), config.value("b")
    records = []
    for theta2, predicted in ((math.pi, abs(1.0 - a - b)), (0.0, abs(1.0 + a - b))):
        params = RBParams(a, b, 0.0, theta2)
        worst = max(
            abs(ryder_burgard_residual(params, h, theta, phi) - predicted)
            for h in HELICITIES
            for theta, phi in _REST_ANGLES
        )
        records.append(
            make_record(
                "ryder-burgard-collapse",
                residual=worst,
                tolerance=config.tolerance,
                params={"a": a, "b": b, "theta1": 0.0, "theta2": theta2, "collapse": predicted},
            )
        )
    return records


def _dirac_residual(momenta: list[FourMomentum]) -> float:
    worst = 0.0
    for p in momenta:
        p_slash = slash(p.components)
        for h in HELICITIES:
            for theta, phi in _REST_ANGLES:
                u, v = make_dirac(h, p, theta, phi)
                worst = max(
                    worst,
                    np.linalg.norm((p_slash - p.mass * identity()) @ u.components)
                    / (p.mass * u.norm),
                    np.linalg.norm((p_slash + p.mass * identity()) @ v.components)
                    / (p.mass * v.norm),
                )
    return float(worst)


def _conjugacy_record(config: SweepConfig, momenta: list[FourMomentum]) -> dict[str, Any]:
    c = charge_conjugation_matrix()
    worst = 0.0
    mismatches = 0
    for p in momenta:
        for eta in HELICITIES:
            for kind, sign in ((KIND_SELF, 1.0), (KIND_ANTI, -1.0)):
                for spinor in (make_lambda(eta, kind, p), make_rho(eta, kind, p)):
                    image = c @ np.conj(spinor.components)
                    worst = max(worst, np.linalg.norm(image - sign * spinor.components) / spinor.norm)
                    if classify_conjugacy(spinor, config.tolerance) != kind:
                        mismatches += 1
    residual = float(worst) if mismatches == 0 else None
    return make_record(
        "lambda-conjugacy",
        residual=residual,
        tolerance=config.tolerance,
        params={"momenta": len(momenta), "misclassified": mismatches},
    )


def _lambda_equation_records(config: SweepConfig, momenta: list[FourMomentum]):
    params = _equation_params(config)
    worst: dict[str, float] = defaultdict(float)
    for p in momenta:
        for theta, phi in _REST_ANGLES:
            for label, value in lambda_equation_residuals(p, params, None, theta, phi).items():
                worst[label] = max(worst[label], value)
    base = {"a": params.a, "b": params.b, "m": params.m}
    return [
        make_record(
            f"lambda-equations-{kind}",
            residual=max(worst[labels[0]], worst[labels[1]]),
            tolerance=config.tolerance,
            params={**base, labels[0]: worst[labels[0]], labels[1]: worst[labels[1]]},
        )
        for kind, labels in ((KIND_SELF, ("m1", "m2")), (KIND_ANTI, ("m3", "m4")))
    ]


def _barut_factorization_record(config: SweepConfig, momenta: list[FourMomentum]):
    params = _equation_params(config)
    worst = 0.0
    for p in momenta:
        scale = max(1.0, abs(params.a)) * (p.energy / p.mass) ** 2 * params.m
        worst = max(worst, barut_factorization_check(p, params) / scale)
    return make_record(
        "barut-factorization",
        residual=worst,
        tolerance=config.tolerance,
        params={"a": params.a, "b": params.b, "m": params.m},
    )


def _majorana_records(config: SweepConfig, momenta: list[FourMomentum]):
    params = _equation_params(config)
    scale = _field_scale(config)
    decouple = majorana_decouple(params, momenta, np.random.default_rng(config.seed))
    records = [
        make_record(
            decouple.name,
            residual=decouple.max_deviation / scale,
            tolerance=config.tolerance,
            params={"a": params.a, "b": params.b, **decouple.details},
        )
    ]

    generalized = _generalized_params(config)
    pair = generalized_majorana_check(generalized, momenta, np.random.default_rng(config.seed))
    deviation = pair.max_deviation / scale
    if _is_real_phase(generalized.alpha2) or generalized.beta2 == 0:
        expected = "pair holds"
        residual, tolerance = deviation, config.tolerance
    else:
        # a complex mass term must leave a visible deviation
        expected = "pair broken"
        residual, tolerance = (0.0 if deviation > config.tolerance else 1.0), 0.5
    records.append(
        make_record(
            pair.name,
            residual=residual,
            tolerance=tolerance,
            params={
                "deviation": deviation,
                "alpha1": generalized.alpha1,
                "alpha2": generalized.alpha2,
                "beta1": generalized.beta1,
                "beta2": generalized.beta2,
                "expected": expected,
            },
        )
    )
    return records


def _sokolik_record(config: SweepConfig, momenta: list[FourMomentum]) -> dict[str, Any]:
    b = config.value("b")
    branch = EquationParams(1.0 - b, b, config.m)
    params = {"a": branch.a, "b": b}
    if branch.a == 0:
        return make_record(
            "sokolik-reduction", residual=None, verdict=VERDICT_DEGENERATE, params=params
        )
    report = sokolik_reduction_check(branch, momenta, np.random.default_rng(config.seed))
    return make_record(
        report.name,
        residual=report.max_deviation / _field_scale(config),
        tolerance=config.tolerance,
        params={**params, **report.details},
    )


def _klein_gordon_record(config: SweepConfig) -> dict[str, Any]:
    params = _equation_params(config)
    result = dispersion_roots(params)
    base = {"a": params.a, "b": params.b, "m": params.m, "roots": list(result.roots)}
    if result.massless:
        return make_record(
            "klein-gordon-mass", residual=None, verdict=VERDICT_DEGENERATE, params=base
        )
    residual = abs(result.roots[0] - params.m**2) / params.m**2
    return make_record(
        "klein-gordon-mass", residual=residual, tolerance=DISPERSION_TOLERANCE, params=base
    )


def _closest_gap(result: DispersionResult, expected: list[float]) -> float:
    """Largest relative distance from an expected root to the computed ones."""
    return max(
        min(abs(root - value) for root in result.roots) / max(1.0, abs(value))
        for value in expected
    )


def _dispersion_records(config: SweepConfig) -> list[dict[str, Any]]:
    params = _equation_params(config)
    generalized = _generalized_params(config)
    a2, m2 = params.a**2, params.m**2
    cases = [
        ("dispersion-equation", dispersion_roots(params), [m2 * (params.b - 1.0) ** 2 / a2]),
        (
            "dispersion-barut",
            barut_spectrum(params),
            [m2 * (1.0 - params.b) ** 2 / a2, m2 * (1.0 + params.b) ** 2 / a2],
        ),
    ]
    generalized_result = dispersion_roots(generalized)
    if _is_real_phase(generalized.alpha2):
        expected = [m2 * (generalized.beta1**2 + generalized.beta2**2) / generalized.a**2]
    else:
        expected = []
    cases.append(("dispersion-generalized", generalized_result, expected))

    records = []
    for check, result, closed_form in cases:
        details = {
            "a": params.a,
            "b": params.b,
            "roots": list(result.roots),
            "multiplicities": list(result.multiplicities),
            "masses": list(result.masses),
            "flags": list(result.flags),
            "closed_form": closed_form,
        }
        if check == "dispersion-generalized":
            details.update(
                alpha1=generalized.alpha1,
                alpha2=generalized.alpha2,
                beta1=generalized.beta1,
                beta2=generalized.beta2,
            )
        if not closed_form or COMPLEX_FLAG in result.flags:
            records.append(
                make_record(
                    check,
                    residual=None,
                    verdict=VERDICT_DEGENERATE,
                    params=details,
                )
            )
            continue
        verdict = None
        if result.massless:
            verdict = VERDICT_DEGENERATE
        residual: float | None = _closest_gap(result, closed_form)
        if sum(result.multiplicities) != 4:
            residual = None
        records.append(
            make_record(
                check,
                residual=residual,
                tolerance=DISPERSION_TOLERANCE,
                verdict=verdict,
                params=details,
            )
        )
    return records


def _compatibility_record(config: SweepConfig) -> dict[str, Any]:
    params = _generalized_params(config)
    result = compatibility_solve(params)
    predicted = predicted_compatibility(params, COMPATIBILITY_CHECK_TOLERANCE)
    return make_record(
        "compatibility-closed-form",
        residual=0.0 if result.consistent == predicted else 1.0,
        tolerance=0.5,
        params={
            "b": params.b,
            "alpha1": params.alpha1,
            "alpha2": params.alpha2,
            "beta1": params.beta1,
            "beta2": params.beta2,
            "consistent": result.consistent,
            "predicted": predicted,
            "kernel_dim": result.kernel_dim,
            "constraint_gap": result.constraint_gap,
            "readings_agree": result.readings_agree,
        },
    )


def _degeneration_record(config: SweepConfig) -> dict[str, Any]:
    b = config.value("b")
    params = {"b": b, "beta1": 0.0, "beta2": abs(b - 1.0)}
    if b == 1.0:
        return make_record(
            "dirac-degeneration", residual=None, verdict=VERDICT_DEGENERATE, params=params
        )
    worst: float | None = 0.0
    pairings = {}
    for alpha2 in (0.0, math.pi):
        # sign of e^{i alpha2} beta2 / (b - 1) decides the pairing
        sign = math.cos(alpha2) * (b - 1.0)
        expected = PAIRING_UPPER if sign > 0 else PAIRING_LOWER
        report = dirac_degeneration(
            GeneralizedParams(config.value("a"), b, 0.0, alpha2, 0.0, abs(b - 1.0), config.m)
        )
        pairings[f"alpha2={alpha2:.6g}"] = report.pairing
        if report.pairing != expected:
            worst = None
        elif worst is not None:
            worst = max(worst, report.max_deviation)
    return make_record(
        "dirac-degeneration",
        residual=worst,
        tolerance=math.sqrt(COMPATIBILITY_CHECK_TOLERANCE),
        params={**params, "pairings": pairings},
    )


def run_verify(config: SweepConfig) -> list[dict[str, Any]]:
    """Run every identity check at the first grid point of the config.

    Raises:
        UndefinedIdentificationError: If a = 0
    """
    momenta = sample_momenta(config.count, config.m, config.p_over_m_max, config.seed)
    tol = config.tolerance
    logger.info(
        "verify at a=%g b=%g over %d momenta", config.value("a"), config.value("b"), len(momenta)
    )
    records = [
        make_record("clifford", residual=_clifford_residual(), tolerance=tol),
        make_record("wigner-operator", residual=_wigner_residual(), tolerance=tol),
        make_record(
            "charge-conjugation",
            residual=_charge_conjugation_residual(momenta),
            tolerance=tol,
        ),
        make_record("majorana-transform", residual=_majorana_residual(), tolerance=tol),
        make_record(
            "realify-composition",
            residual=_realify_residual(config.seed),
            tolerance=tol,
        ),
        make_record("boost-consistency", residual=_boost_residual(momenta), tolerance=tol),
        *_ryder_burgard_records(config),
        make_record(
            "dirac-equation",
            residual=_dirac_residual(momenta),
            tolerance=tol,
            params={"momenta": len(momenta)},
        ),
        _conjugacy_record(config, momenta),
        *_lambda_equation_records(config, momenta),
        _barut_factorization_record(config, momenta),
        *_majorana_records(config, momenta),
        _sokolik_record(config, momenta),
        _klein_gordon_record(config),
        *_dispersion_records(config),
        _compatibility_record(config),
        _degeneration_record(config),
    ]
    return records


# ============================================================================
# Sweep and dispersion
# ============================================================================


def _sweep_point(point: tuple[float, ...], m: float) -> dict[str, Any]:
    a, b, alpha1, alpha2, beta1, beta2 = point
    params = GeneralizedParams(a, b, alpha1, alpha2, beta1, beta2, m)
    result = compatibility_solve(params)
    predicted = predicted_compatibility(params, COMPATIBILITY_CHECK_TOLERANCE)
    details: dict[str, Any] = {
        "a": a,
        "b": b,
        "alpha1": alpha1,
        "alpha2": alpha2,
        "beta1": beta1,
        "beta2": beta2,
        "consistent": result.consistent,
        "predicted": predicted,
        "kernel_dim": result.kernel_dim,
        "constraint_gap": result.constraint_gap,
        "smallest_singular_value": result.smallest_singular_value,
        "literal_consistent": result.literal_consistent,
        "readings_agree": result.readings_agree,
    }
    if a != 0:
        dispersion = dispersion_roots(params)
        details["dispersion"] = {
            "roots": list(dispersion.roots),
            "multiplicities": list(dispersion.multiplicities),
            "flags": list(dispersion.flags),
        }
    return make_record(
        "compatibility",
        residual=0.0 if result.consistent == predicted else 1.0,
        tolerance=0.5,
        params=details,
    )


def _boundary_records(rows: list[dict[str, Any]], tolerance: float) -> list[dict[str, Any]]:
    """Per-b fit of the consistent (beta1, beta2) points to a circle about the origin."""
    by_b: dict[float, list[float]] = defaultdict(list)
    for row in rows:
        params = row["params"]
        radii = by_b[params["b"]]
        if params["consistent"] and (_is_real_phase(params["alpha2"]) or params["beta2"] == 0):
            radii.append(params["beta1"] ** 2 + params["beta2"] ** 2)
    records = []
    for b, radii in sorted(by_b.items()):
        expected = (b - 1.0) ** 2
        if not radii:
            records.append(
                make_record(
                    "compatibility-boundary",
                    residual=None,
                    verdict=VERDICT_DEGENERATE,
                    params={"b": b, "points": 0, "expected_radius_squared": expected},
                )
            )
            continue
        fitted = float(np.mean(radii))
        records.append(
            make_record(
                "compatibility-boundary",
                residual=abs(fitted - expected) / max(1.0, expected),
                tolerance=tolerance,
                params={
                    "b": b,
                    "points": len(radii),
                    "fitted_radius_squared": fitted,
                    "expected_radius_squared": expected,
                },
            )
        )
    return records


def run_sweep(config: SweepConfig) -> list[dict[str, Any]]:
    """Evaluate the compatibility system over the full parameter grid.

    Rows come out in grid order whatever the worker count.

    Raises:
        ValueError: If the grid is empty
    """
    axes = [config.ranges[key].values() for key in ("a", "b", "alpha1", "alpha2", "beta1", "beta2")]
    points = list(itertools.product(*axes))
    if not points:
        raise ValueError("parameter grid is empty")
    logger.info("sweeping %d grid points with %d workers", len(points), config.workers)
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        rows = list(pool.map(lambda point: _sweep_point(point, config.m), points))
    return rows + _boundary_records(rows, COMPATIBILITY_CHECK_TOLERANCE)


def run_dispersion(config: SweepConfig) -> list[dict[str, Any]]:
    """Dispersion roots of every equation at each (a, b) grid point.

    Raises:
        UndefinedIdentificationError: If a grid point has a = 0
    """
    records = []
    for a, b in itertools.product(config.ranges["a"].values(), config.ranges["b"].values()):
        records.extend(_dispersion_records(config.with_values(a=a, b=b)))
    if not records:
        raise ValueError("parameter grid is empty")
    return records

