"""Tests for wave operators, residuals, dispersion and mode compatibility."""

import math

import numpy as np
import pytest

from spinor_lab.equations import (
    MASSLESS_FLAG,
    PAIRING_LOWER,
    PAIRING_NONE,
    PAIRING_UPPER,
    BranchMismatchError,
    EquationParams,
    GeneralizedParams,
    ModeCoefficients,
    UndefinedIdentificationError,
    barut_factorization_check,
    barut_identification,
    barut_spectrum,
    compatibility_solve,
    dirac_degeneration,
    dirac_op,
    dispersion_roots,
    first_order_coupled_op,
    first_order_op,
    generalized_majorana_check,
    klein_gordon_residual,
    lambda_equation_residuals,
    majorana_decouple,
    predicted_compatibility,
    sokolik_reduction_check,
)
from spinor_lab.kinematics import FourMomentum
from spinor_lab.utils import sample_momenta


def generalized(a=1.0, b=2.0, alpha1=math.pi / 2, alpha2=0.0, beta1=0.6, beta2=0.8, m=1.0):
    return GeneralizedParams(a, b, alpha1, alpha2, beta1, beta2, m)


class TestParams:
    def test_rejects_non_positive_mass(self):
        with pytest.raises(ValueError):
            EquationParams(1.0, 2.0, 0.0)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            generalized(beta1=float("nan"))

    def test_first_generalization(self):
        params = GeneralizedParams.first_generalization(EquationParams(1.0, 3.0))
        assert (params.alpha1, params.beta1, params.beta2) == (0.0, 2.0, 0.0)

    def test_mode_coefficients_vector(self):
        coefficients = ModeCoefficients.from_vector([1, 1j, 2, -1j])
        np.testing.assert_array_equal(coefficients.as_vector(), [1, 1j, 2, -1j])


class TestLambdaEquations:
    """Momentum-space equations satisfied by lambda^S and lambda^A."""

    def test_satisfied_on_branch(self, momenta):
        params = EquationParams(1.0, 2.0)
        for p in momenta:
            residuals = lambda_equation_residuals(p, params, theta=0.4, phi=1.1)
            assert set(residuals) == {"m1", "m2", "m3", "m4"}
            for value in residuals.values():
                assert value == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("kind,labels", [("S", ("m1", "m2")), ("A", ("m3", "m4"))])
    def test_off_branch_residual(self, boosted, kind, labels):
        """Off the branch a = b - 1 the relative residual is |a - (b - 1)|."""
        residuals = lambda_equation_residuals(boosted, EquationParams(1.0, 2.5), kind)
        assert set(residuals) == set(labels)
        for value in residuals.values():
            assert value == pytest.approx(0.5, rel=1e-9)

    def test_wrong_sign_branch(self, boosted):
        residuals = lambda_equation_residuals(boosted, EquationParams(1.0, 0.0))
        for value in residuals.values():
            assert value == pytest.approx(2.0, rel=1e-9)

    def test_pure_conjugation_term(self, momenta):
        params = EquationParams(0.0, 1.0)
        for p in momenta:
            for value in lambda_equation_residuals(p, params).values():
                assert value == pytest.approx(0.0, abs=1e-12)


class TestFirstOrderOperator:
    def test_dirac_limit_kernel_on_shell(self, boosted):
        op = first_order_op(boosted, EquationParams(1.0, 0.0))
        assert op.kernel_dim(1e-10) == 4

    def test_dirac_limit_no_kernel_off_shell(self):
        op = first_order_op([2.0, 0.0, 0.0, 0.0], EquationParams(1.0, 0.0))
        assert op.kernel_dim(1e-10) == 0

    def test_pure_conjugation_projects_onto_self_conjugate(self, boosted):
        """With a = 0 and b = 1 only C K - 1 remains."""
        op = first_order_op(boosted, EquationParams(0.0, 1.0))
        assert op.kernel_dim(1e-10) == 4
        linear, antilinear = op.parts()
        np.testing.assert_allclose(linear, -np.eye(4), atol=1e-15)

    def test_coupled_operator_kernel_at_root(self):
        params = EquationParams(1.0, 3.0)
        at_root = first_order_coupled_op([2.0, 0.0, 0.0, 0.0], params)
        away = first_order_coupled_op([2.5, 0.0, 0.0, 0.0], params)
        assert np.linalg.svd(at_root, compute_uv=False)[-1] < 1e-10
        assert np.linalg.svd(away, compute_uv=False)[-1] > 1e-3

    def test_dirac_op_is_p_slash(self, boosted):
        np.testing.assert_allclose(dirac_op(boosted) @ dirac_op(boosted), np.eye(4), atol=1e-12)

    def test_rejects_bad_frequency(self, boosted):
        with pytest.raises(ValueError):
            first_order_op(boosted, EquationParams(1.0, 2.0), frequency=0)


class TestMajoranaDecoupling:
    @pytest.mark.parametrize("b", [0.0, 0.5, 2.0, -1.5])
    def test_decouples_into_real_set(self, momenta, rng, b):
        report = majorana_decouple(EquationParams(1.3, b), momenta, rng)
        assert report.max_deviation < 1e-10
        assert report.details["uncoupled"] == (b == 0.0)

    def test_requires_nonzero_a(self, momenta):
        with pytest.raises(UndefinedIdentificationError):
            majorana_decouple(EquationParams(0.0, 1.0), momenta)

    @pytest.mark.parametrize("alpha1", [0.0, 0.9, math.pi / 2, math.pi])
    @pytest.mark.parametrize("alpha2", [0.0, math.pi])
    def test_generalized_pair_holds_for_real_mass(self, momenta, rng, alpha1, alpha2):
        report = generalized_majorana_check(generalized(alpha1=alpha1, alpha2=alpha2), momenta, rng)
        assert report.max_deviation < 1e-10

    def test_generalized_pair_breaks_for_complex_mass(self, momenta, rng):
        report = generalized_majorana_check(generalized(alpha2=math.pi / 2), momenta, rng)
        assert report.max_deviation > 1e-3


class TestSokolikReduction:
    @pytest.mark.parametrize("b", [3.0, -0.5, 0.25])
    def test_closes_on_phi(self, momenta, rng, b):
        report = sokolik_reduction_check(EquationParams(1.0 - b, b), momenta, rng)
        assert report.details["closure_deviation"] < 1e-10
        assert report.details["klein_gordon_deviation"] < 1e-9
        assert report.max_deviation < 1e-9

    def test_requires_branch(self, momenta):
        with pytest.raises(BranchMismatchError):
            sokolik_reduction_check(EquationParams(1.0, 2.0), momenta)


class TestBarut:
    def test_identification(self):
        alpha2, kappa = barut_identification(EquationParams(2.0, 0.5, 1.0))
        assert alpha2 == pytest.approx(1.0)
        assert kappa == pytest.approx(0.1875)

    def test_undefined_at_zero_a(self):
        with pytest.raises(UndefinedIdentificationError):
            barut_identification(EquationParams(0.0, 1.0))

    @pytest.mark.parametrize("a,b", [(1.0, 2.0), (0.4, -1.3), (-2.0, 0.0)])
    def test_factorization(self, momenta, a, b):
        params = EquationParams(a, b, 1.7)
        for p in momenta:
            assert barut_factorization_check(p, params) < 1e-9

    def test_factorization_off_shell(self):
        params = EquationParams(1.0, 2.0)
        assert barut_factorization_check([0.3, 1.0, -2.0, 0.5], params) < 1e-12

    def test_two_mass_spectrum(self):
        result = barut_spectrum(EquationParams(1.0, 2.0))
        np.testing.assert_allclose(result.roots, [1.0, 9.0], rtol=1e-9)
        assert result.multiplicities == (2, 2)


class TestDispersion:
    def test_klein_gordon_root(self):
        result = dispersion_roots(EquationParams(1.0, 2.0))
        np.testing.assert_allclose(result.roots, [1.0], rtol=1e-10)
        assert result.multiplicities == (4,)
        assert result.masses == pytest.approx((1.0,))

    @pytest.mark.parametrize("a,b,m", [(2.0, 5.0, 1.5), (0.5, -1.0, 1.0), (-1.0, 1.5, 2.0)])
    def test_matches_closed_form(self, a, b, m):
        params = EquationParams(a, b, m)
        expected = m**2 * (b - 1.0) ** 2 / a**2
        result = dispersion_roots(params)
        np.testing.assert_allclose(result.roots, [expected], rtol=1e-10)
        assert klein_gordon_residual(result.roots[0], params) < 1e-9

    def test_massless_degenerate(self):
        result = dispersion_roots(EquationParams(1.0, 1.0))
        assert result.roots == (0.0,)
        assert result.multiplicities == (4,)
        assert result.massless
        assert MASSLESS_FLAG in result.flags

    @pytest.mark.parametrize("b", [1.0005, 1.0001, 0.9999])
    def test_small_mass_not_zeroed(self, b):
        result = dispersion_roots(EquationParams(1.0, b))
        np.testing.assert_allclose(result.roots, [(b - 1.0) ** 2], rtol=1e-8)
        assert result.multiplicities == (4,)
        assert not result.massless

    def test_small_barut_mass_kept_apart(self):
        result = barut_spectrum(EquationParams(1.0, 1.0001))
        np.testing.assert_allclose(result.roots, [1e-8, 2.0001**2], rtol=1e-8)
        assert result.multiplicities == (2, 2)
        assert not result.massless

    def test_undefined_at_zero_a(self):
        with pytest.raises(UndefinedIdentificationError):
            dispersion_roots(EquationParams(0.0, 2.0))

    @pytest.mark.parametrize("alpha1", [0.0, 0.7, math.pi / 2, math.pi])
    def test_generalized_root_independent_of_alpha1(self, alpha1):
        result = dispersion_roots(generalized(a=2.0, alpha1=alpha1))
        np.testing.assert_allclose(result.roots, [0.25], rtol=1e-10)
        assert sum(result.multiplicities) == 4

    def test_klein_gordon_residual(self):
        params = EquationParams(2.0, 4.0, 3.0)
        assert klein_gordon_residual(9.0 * 9.0 / 4.0, params) == pytest.approx(0.0, abs=1e-12)
        assert klein_gordon_residual(0.0, params) == pytest.approx(9.0)


class TestCompatibility:
    def test_consistent_on_circle(self):
        result = compatibility_solve(generalized())
        assert result.consistent
        assert result.kernel_dim == 2
        assert result.constraint_gap == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("beta1,beta2", [(0.7, 0.7), (0.0, 0.5), (1.5, 0.0)])
    def test_inconsistent_off_circle(self, beta1, beta2):
        params = generalized(beta1=beta1, beta2=beta2)
        assert not compatibility_solve(params).consistent
        assert not predicted_compatibility(params, 1e-8)

    def test_complex_phase_inconsistent(self):
        params = generalized(alpha2=math.pi / 2)
        assert not compatibility_solve(params).consistent
        assert not predicted_compatibility(params, 1e-8)

    def test_phase_irrelevant_without_beta2(self):
        params = generalized(alpha2=1.0, beta1=1.0, beta2=0.0)
        assert compatibility_solve(params).consistent
        assert predicted_compatibility(params, 1e-8)

    @pytest.mark.parametrize("alpha1", [0.0, 0.3, math.pi / 2, 2.5])
    @pytest.mark.parametrize("alpha2", [0.0, math.pi])
    def test_closed_form_agreement(self, alpha1, alpha2):
        params = generalized(b=3.0, alpha1=alpha1, alpha2=alpha2, beta1=1.2, beta2=1.6)
        result = compatibility_solve(params)
        assert result.consistent == predicted_compatibility(params, 1e-8)
        assert isinstance(result.readings_agree, bool)


class TestDiracDegeneration:
    def test_upper_pairing(self):
        report = dirac_degeneration(generalized(beta1=0.0, beta2=1.0, alpha2=0.0))
        assert report.consistent
        assert report.pairing == PAIRING_UPPER
        assert len(report.kernel) == 2
        for mode in report.kernel:
            assert mode.c_up == pytest.approx(-1j * mode.c_down, abs=1e-9)
            assert mode.d_up == pytest.approx(1j * mode.d_down, abs=1e-9)

    def test_lower_pairing(self):
        report = dirac_degeneration(generalized(beta1=0.0, beta2=1.0, alpha2=math.pi))
        assert report.pairing == PAIRING_LOWER

    def test_inconsistent(self):
        report = dirac_degeneration(generalized(beta1=0.0, beta2=0.5))
        assert not report.consistent
        assert report.pairing == PAIRING_NONE

    def test_requires_beta1_zero(self):
        with pytest.raises(BranchMismatchError):
            dirac_degeneration(generalized())


class TestClosedFormExamples:
    def test_dirac_op_at_rest(self):
        np.testing.assert_allclose(
            dirac_op(FourMomentum.at_rest(2.0)), 2.0 * np.eye(4)[[2, 3, 0, 1]], atol=1e-15
        )

    def test_dirac_op_determinant(self):
        p = np.array([1.3, 0.2, -0.7, 0.4])
        p_squared = p[0] ** 2 - np.dot(p[1:], p[1:])
        m = 0.9
        assert np.linalg.det(dirac_op(p) - m * np.eye(4)) == pytest.approx(
            (p_squared - m**2) ** 2, rel=1e-10
        )

    @pytest.mark.parametrize(
        "a,b,m,expected",
        [(1.0, 2.0, 1.0, (0.5, -1.5)), (1.0, 1.0, 1.0, (0.5, 0.0)), (-1.0, 0.0, 2.0, (-0.25, -1.0))],
    )
    def test_barut_identification(self, a, b, m, expected):
        assert barut_identification(EquationParams(a, b, m)) == pytest.approx(expected)

    def test_barut_factorization_examples(self):
        p = FourMomentum(1.25, (0.0, 0.0, 0.75), 1.0)
        assert barut_factorization_check(p, EquationParams(1.0, 2.0)) < 1e-12
        assert barut_factorization_check(FourMomentum.at_rest(1.5), EquationParams(3.0, 0.0, 1.5)) < 1e-12

    def test_klein_gordon_examples(self):
        assert klein_gordon_residual(1.0, EquationParams(-1.0, 2.0)) == pytest.approx(0.0)
        assert klein_gordon_residual(4.0, EquationParams(1.0, 2.0)) == pytest.approx(3.0)
        assert klein_gordon_residual(7.0, EquationParams(0.0, 1.0)) == 0.0

    def test_sokolik_dirac_like_pair(self, momenta, rng):
        report = sokolik_reduction_check(EquationParams(1.0, 0.0), momenta, rng)
        assert report.details["closure_deviation"] < 1e-10

    def test_compatibility_examples(self):
        assert not compatibility_solve(generalized(beta1=1.0, beta2=1.0)).consistent
        gap = compatibility_solve(generalized(beta1=1.0, beta2=1.0)).constraint_gap
        assert gap == pytest.approx(1.0)


@pytest.mark.slow
class TestBranchLaw:
    """Residuals vanish on a = b - 1 and grow linearly away from it."""

    def test_branch_grid(self):
        momenta = sample_momenta(20, 1.0, 10.0, seed=11)
        for b in np.arange(-3.0, 3.0 + 0.125, 0.25):
            if b == 1.0:
                continue
            for p in momenta:
                on_branch = lambda_equation_residuals(p, EquationParams(b - 1.0, b))
                assert max(on_branch.values()) < 1e-10
                mirrored = lambda_equation_residuals(p, EquationParams(1.0 - b, b))
                assert min(mirrored.values()) > 0.05 * abs(b - 1.0)
                displaced = lambda_equation_residuals(p, EquationParams(b - 0.5, b))
                assert min(displaced.values()) == pytest.approx(0.5, rel=1e-9)
            roots = dispersion_roots(EquationParams(b - 1.0, b)).roots
            np.testing.assert_allclose(roots, [1.0], rtol=1e-10)

    def test_compatibility_region(self):
        axis = np.arange(0.0, 2.0 + 0.05, 0.1)
        for b in (0.0, 2.0, 3.0):
            for alpha2 in (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi):
                for beta1 in axis:
                    for beta2 in axis:
                        verdicts = {
                            compatibility_solve(
                                generalized(
                                    b=b, alpha1=alpha1, alpha2=alpha2, beta1=beta1, beta2=beta2
                                )
                            ).consistent
                            for alpha1 in (0.0, math.pi / 3, math.pi / 2, 1.1)
                        }
                        params = generalized(b=b, alpha2=alpha2, beta1=beta1, beta2=beta2)
                        assert verdicts == {predicted_compatibility(params, 1e-8)}


@pytest.mark.slow
class TestRandomSamples:
    """Factorization, decoupling and dispersion at acceptance sample sizes."""

    def test_barut_factorization(self, rng):
        momenta = sample_momenta(1000, 1.0, 10.0, seed=5)
        for p in momenta:
            a = rng.choice((-1.0, 1.0)) * rng.uniform(0.1, 3.0)
            b = rng.uniform(-3.0, 3.0)
            assert barut_factorization_check(p, EquationParams(a, b)) < 1e-10

    @pytest.mark.parametrize("a,b", [(1.0, 2.0), (-1.0, 2.0), (0.5, 0.0), (2.0, -1.5), (0.3, 3.0)])
    def test_majorana_decoupling(self, rng, a, b):
        momenta = sample_momenta(20, 1.0, 10.0, seed=9)
        report = majorana_decouple(EquationParams(a, b), momenta, rng)
        assert report.max_deviation < 1e-10

    def test_generalized_dispersion_grid(self):
        axis = np.linspace(0.2, 2.0, 10)
        a = 1.5
        for beta1 in axis:
            for beta2 in axis:
                result = dispersion_roots(generalized(a=a, beta1=beta1, beta2=beta2))
                expected = (beta1**2 + beta2**2) / a**2
                np.testing.assert_allclose(result.roots, [expected], rtol=1e-8)
                assert sum(result.multiplicities) == 4
                assert not result.flags
