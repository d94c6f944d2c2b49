"""
Tests for Douglas factorization, multiplier majorization and polynomial matrices.
"""

from fractions import Fraction
from unittest.mock import patch

import numpy as np

from analysis.services.douglas import (
    Polynomial,
    PolynomialMatrix,
    corona_block_matrix,
    corona_condition_check,
    douglas_solve,
    majorization_check,
    null_space_perturbation,
    operator_norm,
)
from analysis.services.exceptions import (
    FactorizationError,
    ShapeMismatchError,
    SpecificationError,
)
from analysis.services.kernels import KernelSpec, PointSet, gram, sample_points
from analysis.services.pick import psd_check

from .base import AnalysisTestCase
from .fixtures import HALF, QUARTER, rational_points


def z(variables=1, index=0):
    exponent = [0] * variables
    exponent[index] = 1
    return Polynomial.monomial(exponent)


def one(variables=1):
    return Polynomial.constant(variables)


def row(*entries, variables=1):
    return PolynomialMatrix.from_rows([list(entries)], variables)


class MajorizationTestCase(AnalysisTestCase):
    """Test the A A* >= B B* check"""

    def test_identity_majorizes_half(self):
        """Test I >= diag(1/2, 1/2) with min eigenvalue 3/4"""
        verdict = majorization_check(np.eye(2), np.diag([0.5, 0.5]))
        self.assertTrue(verdict.is_psd)
        self.assertAlmostEqual(verdict.min_eigenvalue, 0.75)

    def test_half_does_not_majorize_one(self):
        """Test [[1/2]] vs [[1]] gives -3/4"""
        verdict = majorization_check([[0.5]], [[1.0]])
        self.assertFalse(verdict.is_psd)
        self.assertAlmostEqual(verdict.min_eigenvalue, -0.75)

    def test_equal_matrices(self):
        """Test A = B gives the zero matrix"""
        a = self.rng.standard_normal((3, 2))
        verdict = majorization_check(a, a)
        self.assertTrue(verdict.is_psd)
        self.assertAlmostEqual(verdict.min_eigenvalue, 0.0)

    def test_row_mismatch(self):
        """Test A and B need equal row counts"""
        with self.assertRaises(ShapeMismatchError):
            majorization_check(np.eye(2), np.eye(3))


class DouglasSolveTestCase(AnalysisTestCase):
    """Test the minimal-norm solver and its certificates"""

    def test_identity_returns_b(self):
        """Test A = I gives X = B with zero residual"""
        b = self.random_contraction(3, 2)
        result = douglas_solve(np.eye(3), b)

        np.testing.assert_allclose(result.solution, b, atol=1e-12)
        self.assertLess(result.residual, 1e-12)
        self.assertTrue(result.is_contraction)

    def test_diagonal_minimal_solution(self):
        """Test A = diag(1, 1/2), B = diag(1/2, 1/2) gives X = diag(1/2, 1)"""
        result = douglas_solve(np.diag([1, 0.5]), np.diag([0.5, 0.5]))

        np.testing.assert_allclose(result.solution, np.diag([0.5, 1.0]), atol=1e-12)
        self.assertAlmostEqual(result.solution_norm, 1.0, places=12)
        self.assertTrue(result.majorized)
        self.assertTrue(result.feasible)
        self.assertTrue(result.is_contraction)
        self.assertAlmostEqual(result.majorization.min_eigenvalue, 0.0)

    def test_wide_pseudo_inverse(self):
        """Test A = [[1, 0]], B = [[0, 1]] gives X = [[0, 1], [0, 0]]"""
        result = douglas_solve([[1, 0]], [[0, 1]])

        np.testing.assert_allclose(result.solution, [[0, 1], [0, 0]], atol=1e-12)
        self.assertAlmostEqual(result.solution_norm, 1.0)
        self.assertEqual(result.rank, 1)
        self.assertTrue(result.is_contraction)

    def test_infeasible_range(self):
        """Test B outside the range of A"""
        result = douglas_solve([[1, 0], [0, 0]], [[0], [1]])
        self.assertFalse(result.feasible)
        self.assertFalse(result.majorized)
        self.assertFalse(result.is_contraction)
        self.assertGreater(result.residual, 0.5)

    def test_feasible_when_b_dwarfs_a(self):
        """Test a large B inside the range of a badly scaled A stays feasible"""
        result = douglas_solve(np.diag([1.0, 1e-8]), [[1e4], [0]])

        np.testing.assert_allclose(result.solution, [[1e4], [0]], atol=1e-6)
        self.assertEqual(result.rank, 2)
        self.assertTrue(result.feasible)
        self.assertFalse(result.borderline)
        self.assertLess(result.residual, 1e-8)
        self.assertFalse(result.is_contraction)

    def test_infeasible_small_direction_of_b(self):
        """Test B leaving the range of a rank-deficient A is caught at any scale"""
        result = douglas_solve([[1e-6, 0], [0, 0]], [[0], [1e-3]])
        self.assertEqual(result.rank, 1)
        self.assertFalse(result.feasible)

    def test_douglas_equivalence(self):
        """Test B = A X0 with ||X0|| < 1 always yields a contraction"""
        for trial in range(200):
            m, n, p = (int(v) for v in self.rng.integers(1, 5, size=3))
            a = self.rng.standard_normal((m, n)) + 1j * self.rng.standard_normal((m, n))
            b = a @ self.random_contraction(n, p)
            with self.subTest(trial=trial, shape=(m, n, p)):
                self.assertTrue(majorization_check(a, b).is_psd)
                result = douglas_solve(a, b)
                self.assertLessEqual(result.solution_norm, 1 + 1e-9)
                self.assertLessEqual(result.residual, 1e-10)

    def test_sharpness(self):
        """Test failed majorization never comes with a contraction solution"""
        checked = 0
        for _ in range(100):
            m, n = (int(v) for v in self.rng.integers(1, 4, size=2))
            a = self.rng.standard_normal((m, n))
            b = 2 * self.rng.standard_normal((m, 2))
            verdict = majorization_check(a, b)
            if verdict.min_eigenvalue < -1e-6:
                checked += 1
                self.assertFalse(douglas_solve(a, b).is_contraction)
        self.assertGreater(checked, 0)

    def test_minimality(self):
        """Test null-space perturbations never reduce the norm"""
        a = self.rng.standard_normal((2, 4)) + 1j * self.rng.standard_normal((2, 4))
        b = a @ self.random_contraction(4, 3)
        result = douglas_solve(a, b)
        for _ in range(20):
            perturbation = null_space_perturbation(a, 3, self.rng, scale=0.3)
            other = result.solution + perturbation
            self.assertLess(np.linalg.norm(a @ other - b, 2), 1e-10)
            self.assertGreaterEqual(operator_norm(other), result.solution_norm - 1e-12)

    def test_trivial_null_space(self):
        """Test injective A has no perturbation"""
        self.assertIsNone(null_space_perturbation(np.eye(3), 2, self.rng))

    def test_borderline_rank(self):
        """Test a singular value near the cutoff is flagged"""
        result = douglas_solve(np.diag([1.0, 3e-10]), np.zeros((2, 1)), tol=1e-10)
        self.assertTrue(result.borderline)

    def test_broken_contract_raises(self):
        """Test a majorized system without a contraction solution is an error"""
        with patch(
            "analysis.services.douglas.factor.majorization_check",
            return_value=psd_check(np.eye(1)),
        ):
            with self.assertRaises(FactorizationError):
                douglas_solve([[0.5]], [[1.0]])

    def test_shape_mismatch(self):
        """Test unequal row counts"""
        with self.assertRaises(ShapeMismatchError):
            douglas_solve(np.eye(2), np.eye(3))

    def test_result_serializes(self):
        """Test the certificate fields are in the JSON form"""
        data = douglas_solve(np.eye(2), np.eye(2) / 2).to_dict()
        for key in ("solution", "residual", "solution_norm", "majorized", "feasible", "borderline"):
            self.assertIn(key, data)


class CoronaTestCase(AnalysisTestCase):
    """Test kernel-compressed majorization of multiplier matrices"""

    def test_szego_reduces_to_gram(self):
        """Test Phi = [1, z], Psi = [z] on the Szego kernel gives gram(s)"""
        spec = KernelSpec.builtin("szego_disk")
        pts = rational_points(0, HALF, -QUARTER)
        block = corona_block_matrix(row(one(), z()), row(z()), spec, pts)

        self.assertEqual(block.exact, gram(spec, pts).exact)
        self.assertTrue(corona_condition_check(row(one(), z()), row(z()), spec, pts).is_psd)

    def test_equal_multipliers(self):
        """Test Phi = Psi gives the zero matrix"""
        spec = KernelSpec.builtin("bergman_disk")
        phi = row(one(), z())
        verdict = corona_condition_check(phi, phi, spec, sample_points(spec, 4, 2))
        self.assertTrue(verdict.is_psd)
        self.assertAlmostEqual(verdict.min_eigenvalue, 0.0)

    def test_bidisk_numerator_is_all_ones(self):
        """Test Phi = [1, z1 z2], Psi = [z1, z2] gives 1 everywhere on the bidisk"""
        spec = KernelSpec.builtin("hardy_bidisk")
        phi = row(one(2), Polynomial.monomial((1, 1)), variables=2)
        psi = row(z(2, 0), z(2, 1), variables=2)
        pts = PointSet.of([(HALF, Fraction(1, 3)), (-QUARTER, HALF), (0, 0)])
        block = corona_block_matrix(phi, psi, spec, pts)

        self.assertEqual(block.exact, ((1, 1, 1), (1, 1, 1), (1, 1, 1)))
        self.assertTrue(corona_condition_check(phi, psi, spec, pts).is_psd)

    def test_constant_multipliers(self):
        """Test constants a, b reduce to (a^2 - b^2) gram, PSD iff |a| >= |b|"""
        spec = KernelSpec.builtin("szego_disk")
        pts = rational_points(0, HALF, -HALF)
        for a, b in ((2, 1), (1, 1), (1, 2), (HALF, QUARTER)):
            phi = row(Polynomial.constant(1, a))
            psi = row(Polynomial.constant(1, b))
            block = corona_block_matrix(phi, psi, spec, pts)
            expected = gram(spec, pts).scaled(Fraction(a) ** 2 - Fraction(b) ** 2)
            with self.subTest(a=a, b=b):
                self.assertEqual(block.exact, expected.exact)
                self.assertEqual(
                    corona_condition_check(phi, psi, spec, pts).is_psd, abs(a) >= abs(b)
                )

    def test_block_layout(self):
        """Test two-row multipliers give a point-major block matrix"""
        spec = KernelSpec.builtin("szego_disk")
        phi = PolynomialMatrix.from_rows([[one()], [z()]], 1)
        psi = PolynomialMatrix.from_rows([[Polynomial.zero(1)], [Polynomial.zero(1)]], 1)
        block = corona_block_matrix(phi, psi, spec, rational_points(HALF, QUARTER))
        self.assertEqual(block.size, 4)
        # (Phi(1/2) Phi(1/4)*)_{11} k(1/2, 1/4) = (1/2)(1/4)(8/7)
        self.assertEqual(block.exact[1][3], Fraction(1, 7))

    def test_row_mismatch(self):
        """Test Phi and Psi need equal row counts"""
        phi = PolynomialMatrix.from_rows([[one()], [one()]], 1)
        with self.assertRaises(ShapeMismatchError):
            corona_block_matrix(
                phi, row(one()), KernelSpec.builtin("szego_disk"), rational_points(HALF)
            )

    def test_variable_mismatch(self):
        """Test the variable count must match the kernel dimension"""
        with self.assertRaises(ShapeMismatchError):
            corona_block_matrix(
                row(one()), row(one()), KernelSpec.builtin("hardy_bidisk"),
                PointSet.of([(0, 0)]),
            )


class PolynomialTestCase(AnalysisTestCase):
    """Test sparse polynomials and polynomial matrices"""

    def test_canonical_terms(self):
        """Test terms merge and zeros drop"""
        p = Polynomial(1, (((1,), 2), ((1,), -2), ((0,), 3)))
        self.assertEqual(p.terms, (((0,), Fraction(3)),))
        self.assertTrue((p - p).is_zero)

    def test_multiplication(self):
        """Test (1 - x)^2 = 1 - 2x + x^2"""
        p = one() - z()
        square = p * p
        self.assertEqual(square.as_dict(), {(0,): 1, (1,): -2, (2,): 1})
        self.assertEqual(square.degree, 2)

    def test_exact_evaluation(self):
        """Test rational points give Fractions"""
        p = Polynomial.from_dict(2, {(1, 1): 3, (0, 0): 1})
        value = p.evaluate((HALF, Fraction(1, 3)))
        self.assertIsInstance(value, Fraction)
        self.assertEqual(value, Fraction(3, 2))

    def test_complex_evaluation(self):
        """Test complex points give complex values"""
        self.assertAlmostEqual(z().evaluate((0.5j,)), 0.5j)

    def test_l2_norm(self):
        """Test the torus L2 norm is the coefficient sum of squares"""
        p = Polynomial.from_dict(2, {(1, 0): 1, (0, 1): Fraction(1, 2)})
        self.assertEqual(p.l2_norm_squared(), Fraction(5, 4))

    def test_grid_evaluation_shape(self):
        """Test matrices evaluate on a grid with trailing (rows, cols)"""
        matrix = PolynomialMatrix.from_rows([[one(2), z(2, 0)], [z(2, 1), one(2)]], 2)
        grid = (np.ones((3, 1)), np.ones((1, 5)))
        values = matrix.evaluate_grid(grid)
        self.assertEqual(values.shape, (3, 5, 2, 2))
        np.testing.assert_allclose(values[0, 0], np.ones((2, 2)))

    def test_matrix_product(self):
        """Test a row times a column"""
        left = row(one(), z())
        right = PolynomialMatrix.from_rows([[z()], [z()]], 1)
        product = left @ right
        self.assertEqual(product[0, 0].as_dict(), {(1,): 1, (2,): 1})

    def test_degree_bound(self):
        """Test entries above the bound are rejected"""
        with self.assertRaises(SpecificationError):
            PolynomialMatrix.from_rows([[Polynomial.monomial((3,))]], 1, degree_bound=2)

    def test_mixed_variable_counts(self):
        """Test polynomials in different variable counts cannot be added"""
        with self.assertRaises(ShapeMismatchError):
            one(1) + one(2)
