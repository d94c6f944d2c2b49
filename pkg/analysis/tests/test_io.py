"""
Tests for the input parsers.
"""

import tempfile
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from analysis.services.exceptions import ParseError
from analysis.services.io import (
    load_json,
    loads_json,
    matrix_from_json,
    parse_kernel,
    parse_number,
    parse_point_argument,
    parse_points_text,
    polynomial_matrix_from_json,
    polynomial_matrix_to_json,
    read_matrix_pair,
    read_points,
    read_polynomial_pair,
)

from .fixtures import (
    BERGMAN_POINTS_CSV,
    BIDISK_MULTIPLIERS,
    BIDISK_POINTS_CSV,
    DOUGLAS_DIAGONAL,
    HALF,
    QUARTER,
    SANDWICH_POINTS_CSV,
    write_json,
    write_text,
)


class NumberParsingTestCase(SimpleTestCase):
    """Test coordinates and coefficients"""

    def test_exact_and_float(self):
        """Test p/q stays exact and decimals become floats"""
        self.assertEqual(parse_number("3/4"), Fraction(3, 4))
        self.assertIsInstance(parse_number("-2"), Fraction)
        self.assertEqual(parse_number("0.5"), 0.5)
        self.assertIsInstance(parse_number("1e-3"), float)

    def test_complex(self):
        """Test j-suffixed values"""
        self.assertEqual(parse_number("0.5+0.25j"), complex(0.5, 0.25))
        self.assertEqual(parse_number("2+0j"), 2.0)

    def test_invalid(self):
        """Test empty, malformed, infinite and zero-denominator values"""
        for text in ("", "abc", "1/0", "inf", "nan", "1+xj"):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_number(text, "here")

    def test_point_argument(self):
        """Test comma-separated base points"""
        self.assertEqual(parse_point_argument("1/2,0"), (HALF, Fraction(0)))
        self.assertEqual(parse_point_argument("0"), (Fraction(0),))


class PointsParsingTestCase(SimpleTestCase):
    """Test the point CSV format"""

    def test_header_and_floats(self):
        """Test a re,im header and decimal coordinates"""
        pts = parse_points_text(SANDWICH_POINTS_CSV)
        self.assertEqual(pts.points, ((0.9,), (-0.9,)))
        self.assertIsNone(pts.labels)

    def test_comments_and_exact_values(self):
        """Test comment lines are skipped and rationals stay exact"""
        pts = parse_points_text(BERGMAN_POINTS_CSV)
        self.assertEqual(pts.points, ((HALF,), (QUARTER,)))
        self.assertIsInstance(pts[0][0], Fraction)

    def test_labels_and_two_variables(self):
        """Test a label column and complex coordinates"""
        pts = parse_points_text(BIDISK_POINTS_CSV)
        self.assertEqual(pts.labels, ("a", "b", "c"))
        self.assertEqual(pts.dimension, 2)
        self.assertEqual(pts[1], (0.5j, QUARTER))
        self.assertEqual(pts[2], (Fraction(-1, 3), Fraction(0)))

    def test_complex_coordinate(self):
        """Test a nonzero imaginary column"""
        pts = parse_points_text("0.5,0.25\n")
        self.assertEqual(pts[0], (complex(0.5, 0.25),))

    def test_odd_column_count(self):
        """Test rows must hold re,im pairs"""
        with self.assertRaises(ParseError) as context:
            parse_points_text("1/2\n", "pts.csv")
        self.assertEqual(context.exception.location, "pts.csv:1")

    def test_ragged_rows(self):
        """Test every row has the same width"""
        with self.assertRaises(ParseError) as context:
            parse_points_text("1/2,0\n1/4,0,0,0\n", "pts.csv")
        self.assertEqual(context.exception.location, "pts.csv:2")

    def test_bad_cell_location(self):
        """Test the line and column of a malformed cell"""
        with self.assertRaises(ParseError) as context:
            parse_points_text("1/2,0,0,0\n1/4,0,abc,0\n", "pts.csv")
        self.assertEqual(context.exception.location, "pts.csv:2:3")
        self.assertTrue(str(context.exception).startswith("pts.csv:2:3: "))

    def test_non_finite_coordinate(self):
        """Test inf and nan are rejected"""
        with self.assertRaisesMessage(ParseError, "finite"):
            parse_points_text("0,0\ninf,0\n")

    def test_empty_inputs(self):
        """Test files without points"""
        with self.assertRaisesMessage(ParseError, "No points found"):
            parse_points_text("# nothing here\n\n")
        with self.assertRaisesMessage(ParseError, "Header without points"):
            parse_points_text("re,im\n")

    def test_duplicate_points(self):
        """Test point sets must be distinct"""
        with self.assertRaisesMessage(ParseError, "distinct"):
            parse_points_text("1/2,0\n0.5,0\n")

    def test_read_points_file(self):
        """Test reading from disk, and a missing file"""
        with tempfile.TemporaryDirectory() as directory:
            path = write_text(directory, "points.csv", BERGMAN_POINTS_CSV)
            self.assertEqual(len(read_points(path)), 2)
            with self.assertRaises(ParseError):
                read_points(f"{directory}/missing.csv")


class JsonParsingTestCase(SimpleTestCase):
    """Test JSON documents, kernels, matrices and polynomials"""

    def test_json_error_location(self):
        """Test syntax errors report line and column"""
        with self.assertRaises(ParseError) as context:
            loads_json('{\n  "a": }', "cfg.json")
        self.assertEqual(context.exception.location, "cfg.json:2:8")

    def test_builtin_kernel(self):
        """Test builtin names"""
        self.assertEqual(parse_kernel("bergman_disk").variant, "bergman_disk")

    def test_inline_diagonal_kernel(self):
        """Test inline JSON with exact coefficients"""
        spec = parse_kernel('{"variant": "diagonal", "coeffs": ["1", "1/2", 0.25]}')
        self.assertEqual(spec.coeffs, (1, HALF, QUARTER))
        self.assertEqual(spec.domain_radius, 1.0)

    def test_product_kernel_file(self):
        """Test a product kernel read from a file"""
        with tempfile.TemporaryDirectory() as directory:
            path = write_json(
                directory,
                "kernel.json",
                {"variant": "product", "left": "szego_disk", "right": "bergman_disk"},
            )
            spec = parse_kernel(path)
        self.assertEqual(spec.dimension, 2)
        self.assertEqual(spec.right.variant, "bergman_disk")

    def test_invalid_kernels(self):
        """Test unknown names, negative and complex coefficients"""
        with self.assertRaises(ParseError):
            parse_kernel("dirichlet_disk")
        with self.assertRaises(ParseError) as context:
            parse_kernel('{"variant": "diagonal", "coeffs": [1, -1]}')
        self.assertEqual(context.exception.location, "--kernel")
        with self.assertRaises(ParseError) as context:
            parse_kernel('{"variant": "diagonal", "coeffs": [1, [0, 1]]}')
        self.assertEqual(context.exception.location, "--kernel.coeffs[1]")

    def test_matrix(self):
        """Test numbers, p/q strings and [re, im] pairs"""
        matrix = matrix_from_json([[1, "1/2"], [[0, 1], 0.5]], "m")
        np.testing.assert_allclose(matrix, [[1, 0.5], [1j, 0.5]])

    def test_ragged_matrix(self):
        """Test the location of a short row"""
        with self.assertRaises(ParseError) as context:
            matrix_from_json([[1, 2], [3]], "m")
        self.assertEqual(context.exception.location, "m[1]")

    def test_matrix_pair_file(self):
        """Test {"A": ..., "B": ...} files"""
        with tempfile.TemporaryDirectory() as directory:
            a, b = read_matrix_pair(write_json(directory, "ab.json", DOUGLAS_DIAGONAL))
            np.testing.assert_allclose(a, np.diag([1, 0.5]))
            np.testing.assert_allclose(b, np.diag([0.5, 0.5]))
            with self.assertRaisesMessage(ParseError, "Missing keys: B"):
                read_matrix_pair(write_json(directory, "a.json", {"A": [[1]]}))
            with self.assertRaises(ParseError):
                load_json(write_text(directory, "broken.json", "[1, 2"))

    def test_polynomial_matrix(self):
        """Test the term-list format"""
        phi = polynomial_matrix_from_json(BIDISK_MULTIPLIERS["phi"], "phi")
        self.assertEqual((phi.rows, phi.cols), (1, 2))
        self.assertEqual(phi[0, 1].as_dict(), {(1, 1): 1})
        self.assertEqual(
            polynomial_matrix_to_json(phi)["entries"],
            [[[[[0, 0], "1"]], [[[1, 1], "1"]]]],
        )

    def test_polynomial_pair_file(self):
        """Test {"phi": ..., "psi": ...} files"""
        with tempfile.TemporaryDirectory() as directory:
            phi, psi = read_polynomial_pair(write_json(directory, "m.json", BIDISK_MULTIPLIERS))
        self.assertEqual(phi.variable_count, 2)
        self.assertEqual(psi[0, 0].as_dict(), {(1, 0): 1})

    def test_bad_polynomial_terms(self):
        """Test malformed terms report their path"""
        data = {"variable_count": 1, "entries": [[[[[1], 1], [1, 2]]]]}
        with self.assertRaises(ParseError) as context:
            polynomial_matrix_from_json(data, "x")
        self.assertEqual(context.exception.location, "x.entries[0][0][1]")

        data = {"variable_count": 1, "entries": [[[[[True], 1]]]]}
        with self.assertRaises(ParseError):
            polynomial_matrix_from_json(data, "x")

        data = {"variable_count": 2, "entries": [[[[[1], 1]]]]}
        with self.assertRaises(ParseError):
            polynomial_matrix_from_json(data, "x")
