"""
Tests for kernel specifications, evaluation and reciprocal series.
"""

from fractions import Fraction
from unittest.mock import patch

from analysis.services.exceptions import (
    ConvergenceError,
    DegenerateBaseError,
    KernelDomainError,
    MatrixValidationError,
    SpecificationError,
    UnsupportedVariantError,
)
from analysis.services.kernels import (
    BUILTIN_KERNELS,
    HermitianMatrix,
    KernelSpec,
    PointSet,
    compress_gram,
    gram,
    kernel_eval,
    reciprocal_series,
    sample_points,
)

from .base import AnalysisTestCase
from .fixtures import HALF, QUARTER, rational_points


class KernelEvalTestCase(AnalysisTestCase):
    """Test closed-form and series evaluation"""

    def test_szego_at_origin(self):
        """Test k(0, 0) = 1 for the Szego kernel"""
        value = kernel_eval(KernelSpec.builtin("szego_disk"), 0, 0)
        self.assertEqual(value, Fraction(1))

    def test_sandwich_at_half(self):
        """Test the sandwich kernel is exact at rational points"""
        value = kernel_eval(KernelSpec.builtin("sandwich_disk"), HALF, HALF)
        self.assertIsInstance(value, Fraction)
        self.assertEqual(value, Fraction(5, 3))

    def test_bergman_at_half(self):
        """Test the Bergman kernel 1/(1 - 1/4)^2"""
        value = kernel_eval(KernelSpec.builtin("bergman_disk"), HALF, HALF)
        self.assertEqual(value, Fraction(16, 9))

    def test_conjugate_symmetry(self):
        """Test k(z, w) = conj(k(w, z)) at complex points"""
        z, w = 0.3 + 0.4j, -0.2 + 0.1j
        for name in ("szego_disk", "bergman_disk", "sandwich_disk", "fock_plane"):
            spec = KernelSpec.builtin(name)
            self.assertAlmostEqual(
                kernel_eval(spec, z, w), complex(kernel_eval(spec, w, z)).conjugate()
            )

    def test_product_kernel_factors(self):
        """Test a product kernel is the product of its factors"""
        left = KernelSpec.builtin("szego_disk")
        right = KernelSpec.builtin("bergman_disk")
        spec = KernelSpec.product(left, right)

        self.assertEqual(spec.dimension, 2)
        value = kernel_eval(spec, (HALF, QUARTER), (QUARTER, HALF))
        expected = kernel_eval(left, HALF, QUARTER) * kernel_eval(right, QUARTER, HALF)
        self.assertEqual(value, expected)

    def test_bidisk_is_product_of_szego(self):
        """Test the bidisk kernel equals the Szego product"""
        szego = KernelSpec.builtin("szego_disk")
        product = KernelSpec.product(szego, szego)
        bidisk = KernelSpec.builtin("hardy_bidisk")
        z, w = (HALF, -QUARTER), (Fraction(1, 3), HALF)
        self.assertEqual(kernel_eval(bidisk, z, w), kernel_eval(product, z, w))

    def test_diagonal_series_horner(self):
        """Test truncated series evaluation"""
        spec = KernelSpec.diagonal(["1", "2", "3"])
        # 1 + 2x + 3x^2 at x = 1/4
        self.assertEqual(kernel_eval(spec, HALF, HALF), Fraction(1) + Fraction(1, 2) + Fraction(3, 16))

    def test_point_outside_disk(self):
        """Test points on or outside the boundary are rejected"""
        spec = KernelSpec.builtin("szego_disk")
        with self.assertRaises(KernelDomainError):
            kernel_eval(spec, 1, 0)
        with self.assertRaises(KernelDomainError):
            kernel_eval(spec, 0.6 + 0.8j, 0)

    def test_point_outside_ball(self):
        """Test the ball kernel uses the Euclidean norm"""
        spec = KernelSpec.builtin("hardy_ball2")
        kernel_eval(spec, (0.7, 0), (0, 0.7))
        with self.assertRaises(KernelDomainError):
            kernel_eval(spec, (0.8, 0.7), (0, 0))

    def test_series_past_radius(self):
        """Test diagonal series past the declared radius"""
        spec = KernelSpec.diagonal([1, 1, 1], domain_radius=0.5)
        with self.assertRaises(ConvergenceError):
            kernel_eval(spec, 0.6, 0)

    def test_fock_plane_is_unrestricted(self):
        """Test the Fock kernel accepts large points"""
        value = kernel_eval(KernelSpec.builtin("fock_plane"), 3.0, 1.0)
        self.assertAlmostEqual(value, 20.085536923187668)

    def test_fock_overflow_is_a_domain_error(self):
        """Test exp(<z, w>) past the float range raises a domain error"""
        spec = KernelSpec.builtin("fock_plane")
        with self.assertRaises(KernelDomainError):
            kernel_eval(spec, 30, 30)
        with self.assertRaises(KernelDomainError):
            gram(spec, rational_points(HALF, 30))

    def test_fock_overflow_inside_product(self):
        """Test the overflow surfaces through a tensor product"""
        spec = KernelSpec.product(
            KernelSpec.builtin("fock_plane"), KernelSpec.builtin("szego_disk")
        )
        with self.assertRaises(KernelDomainError):
            kernel_eval(spec, (30, 0), (30, 0))

    def test_wrong_dimension(self):
        """Test a point with the wrong coordinate count"""
        with self.assertRaises(KernelDomainError):
            kernel_eval(KernelSpec.builtin("hardy_bidisk"), 0, 0)


class KernelSpecTestCase(AnalysisTestCase):
    """Test KernelSpec validation"""

    def test_diagonal_needs_positive_a0(self):
        """Test a_0 > 0 is enforced"""
        with self.assertRaises(SpecificationError):
            KernelSpec.diagonal([0, 1])

    def test_diagonal_rejects_negative_coefficients(self):
        """Test negative coefficients are rejected"""
        with self.assertRaises(SpecificationError):
            KernelSpec.diagonal([1, -1])

    def test_unknown_builtin(self):
        """Test unknown builtin names"""
        with self.assertRaises(SpecificationError):
            KernelSpec.builtin("drury_arveson")

    def test_builtin_dimension_is_fixed(self):
        """Test builtins keep their dimension"""
        with self.assertRaises(SpecificationError):
            KernelSpec(variant="hardy_ball2", dimension=3)

    def test_to_dict(self):
        """Test the JSON form of each variant"""
        self.assertEqual(
            KernelSpec.builtin("szego_disk").to_dict(),
            {"variant": "szego_disk", "dimension": 1},
        )
        diagonal = KernelSpec.diagonal(["1", "1/2"], domain_radius=2).to_dict()
        self.assertEqual(diagonal["coeffs"], ["1", "1/2"])
        self.assertEqual(diagonal["domain_radius"], 2.0)

    def test_every_builtin_has_a_spec(self):
        """Test all registry entries construct"""
        for name in BUILTIN_KERNELS:
            self.assertEqual(KernelSpec.builtin(name).name, name)


class GramTestCase(AnalysisTestCase):
    """Test Gram and compressed Gram matrices"""

    def test_szego_single_point(self):
        """Test gram(szego, {0}) = [[1]]"""
        matrix = gram(KernelSpec.builtin("szego_disk"), rational_points(0))
        self.assertEqual(matrix.exact, ((Fraction(1),),))

    def test_szego_two_points(self):
        """Test gram(szego, {0, 1/2})"""
        matrix = gram(KernelSpec.builtin("szego_disk"), rational_points(0, HALF))
        self.assertEqual(
            matrix.exact, ((Fraction(1), Fraction(1)), (Fraction(1), Fraction(4, 3)))
        )

    def test_sandwich_two_points(self):
        """Test gram(sandwich, {0, 1/2})"""
        matrix = gram(KernelSpec.builtin("sandwich_disk"), rational_points(0, HALF))
        self.assertEqual(
            matrix.exact, ((Fraction(1), Fraction(1)), (Fraction(1), Fraction(5, 3)))
        )

    def test_gram_is_conjugate_symmetric(self):
        """Test the Gram matrix is exactly Hermitian"""
        spec = KernelSpec.builtin("bergman_disk")
        pts = sample_points(spec, 6, seed=3)
        entries = gram(spec, pts).entries
        self.assertTrue((entries == entries.conj().T).all())

    def test_builtin_grams_are_psd(self):
        """Test Gram matrices of every builtin on seeded point sets"""
        for name in BUILTIN_KERNELS:
            spec = KernelSpec.builtin(name)
            for seed in range(5):
                with self.subTest(kernel=name, seed=seed):
                    self.assertPsd(gram(spec, sample_points(spec, 6, seed)))

    def test_compress_gram_single_point(self):
        """Test compress_gram(szego, {1/2}, 0) = [[1/3]]"""
        matrix = compress_gram(KernelSpec.builtin("szego_disk"), rational_points(HALF), 0)
        self.assertEqual(matrix.exact, ((Fraction(1, 3),),))

    def test_compress_gram_at_base(self):
        """Test the section at the base projects to zero"""
        spec = KernelSpec.builtin("bergman_disk")
        matrix = compress_gram(spec, rational_points(QUARTER), QUARTER)
        self.assertEqual(matrix.exact, ((Fraction(0),),))

    def test_compress_gram_bidisk(self):
        """Test the bidisk compression at (1/2, 0)"""
        spec = KernelSpec.builtin("hardy_bidisk")
        matrix = compress_gram(spec, PointSet.of([(HALF, 0)]), (0, 0))
        self.assertEqual(matrix.exact, ((Fraction(1, 3),),))

    def test_compress_gram_is_psd(self):
        """Test projected sections have a PSD Gram matrix"""
        for name in ("szego_disk", "hardy_bidisk", "hardy_ball2", "sandwich_disk"):
            spec = KernelSpec.builtin(name)
            pts = sample_points(spec, 6, seed=11)
            with self.subTest(kernel=name):
                self.assertPsd(compress_gram(spec, pts, pts[0]))

    def test_degenerate_base(self):
        """Test k(base, base) <= 0 is rejected"""
        spec = KernelSpec.builtin("szego_disk")
        with patch.object(KernelSpec, "evaluate", return_value=Fraction(0)):
            with self.assertRaises(DegenerateBaseError):
                compress_gram(spec, rational_points(HALF), 0)

    def test_constant_kernel_compresses_to_zero(self):
        """Test a constant kernel has nothing left after projecting off k(., 0)"""
        matrix = compress_gram(KernelSpec.diagonal([1]), rational_points(HALF, QUARTER), 0)
        self.assertEqual(matrix.exact, ((0, 0), (0, 0)))


class HermitianMatrixTestCase(AnalysisTestCase):
    """Test HermitianMatrix validation"""

    def test_rejects_asymmetric(self):
        """Test non-Hermitian input"""
        with self.assertRaises(MatrixValidationError):
            HermitianMatrix(entries=[[1, 2], [3, 1]])

    def test_rejects_non_square(self):
        """Test non-square input"""
        with self.assertRaises(MatrixValidationError):
            HermitianMatrix(entries=[[1, 2, 3], [2, 1, 0]])

    def test_exact_arithmetic(self):
        """Test subtraction and scaling keep exact entries"""
        a = HermitianMatrix.from_rows([[Fraction(1), HALF], [HALF, Fraction(2)]])
        b = HermitianMatrix.from_rows([[HALF, 0], [0, HALF]])
        difference = a.scaled(2) - b
        self.assertEqual(
            difference.exact,
            ((Fraction(3, 2), Fraction(1)), (Fraction(1), Fraction(7, 2))),
        )


class ReciprocalSeriesTestCase(AnalysisTestCase):
    """Test exact reciprocal power series"""

    def test_szego(self):
        """Test 1/s = 1 - x"""
        series = reciprocal_series(KernelSpec.builtin("szego_disk"), 4)
        self.assertEqual(series.coeffs, (1, -1, 0, 0, 0))

    def test_bergman(self):
        """Test 1/k = (1 - x)^2"""
        series = reciprocal_series(KernelSpec.builtin("bergman_disk"), 4)
        self.assertEqual(series.coeffs, (1, -2, 1, 0, 0))

    def test_sandwich(self):
        """Test 1/k = (1 - x)/(1 + x)"""
        series = reciprocal_series(KernelSpec.builtin("sandwich_disk"), 3)
        self.assertEqual(series.coeffs, (1, -2, 2, -2))
        self.assertEqual(series.positive_part, (0, 2))
        self.assertEqual(series.negative_part, (1, 3))

    def test_convolution_identity(self):
        """Test a * c = (1, 0, ..., 0) exactly"""
        specs = [
            KernelSpec.builtin("szego_disk"),
            KernelSpec.builtin("fock_plane"),
            KernelSpec.builtin("sandwich_disk"),
            KernelSpec.diagonal(["3", "1/2", "0", "7/5"]),
        ]
        for spec in specs:
            for order in (0, 5, 12):
                with self.subTest(kernel=spec.name, order=order):
                    convolution = reciprocal_series(spec, order).convolution()
                    self.assertEqual(convolution, (Fraction(1),) + (Fraction(0),) * order)

    def test_non_diagonal_kernel(self):
        """Test the bidisk kernel has no diagonal series"""
        with self.assertRaises(UnsupportedVariantError):
            reciprocal_series(KernelSpec.builtin("hardy_bidisk"), 3)


class PointSetTestCase(AnalysisTestCase):
    """Test point sets and seeded sampling"""

    def test_rejects_duplicates(self):
        """Test pairwise distinctness"""
        with self.assertRaises(SpecificationError):
            rational_points(HALF, HALF)

    def test_rejects_empty(self):
        """Test nonempty point sets"""
        with self.assertRaises(SpecificationError):
            PointSet.of([])

    def test_sampling_is_reproducible(self):
        """Test the same seed gives the same points"""
        spec = KernelSpec.builtin("hardy_ball2")
        self.assertEqual(sample_points(spec, 5, 7).points, sample_points(spec, 5, 7).points)
        self.assertNotEqual(sample_points(spec, 5, 7).points, sample_points(spec, 5, 8).points)

    def test_samples_lie_inside_domain(self):
        """Test samples validate for their kernel"""
        for name in BUILTIN_KERNELS:
            spec = KernelSpec.builtin(name)
            pts = sample_points(spec, 10, 1)
            pts.validate_for(spec)
            self.assertEqual(pts.dimension, spec.dimension)
