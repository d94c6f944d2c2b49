"""
Input formats: point sets, kernel specifications, matrices and polynomial matrices.

Every parser raises ParseError with a location (file, line, key path) so the
command line can point at the offending input.

Numbers are written as integers or "p/q" (kept exact), decimals (float), or
complex literals such as "0.5+0.25j". In JSON a complex entry may also be a
two-element [re, im] list.
"""

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union
import logging

import numpy as np

from .douglas.polynomials import Polynomial, PolynomialMatrix
from .exceptions import ParseError, RKHSError
from .kernels.points import PointSet
from .kernels.specs import BUILTIN_KERNELS, DIAGONAL, PRODUCT, KernelSpec, Point

logger = logging.getLogger(__name__)

Number = Union[Fraction, float, complex]


def parse_number(text: str, location: Optional[str] = None) -> Number:
    """
    Parse one coordinate or coefficient.

    Integers and p/q stay exact; decimals become float; j-suffixed values complex.

    Raises:
        ParseError: If the text is not a number
    """
    cleaned = text.strip().replace(" ", "")
    if not cleaned:
        raise ParseError("Empty number", location)
    if "j" in cleaned.lower():
        try:
            value = complex(cleaned.lower())
        except ValueError:
            raise ParseError(f"Invalid complex number '{text}'", location)
        return value.real if value.imag == 0 else value
    try:
        if any(c in cleaned.lower() for c in ".en") and "/" not in cleaned:
            value = float(cleaned)
            if not math.isfinite(value):
                raise ParseError(f"Number must be finite, got '{text}'", location)
            return value
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"Invalid number '{text}'", location)


def _json_number(value: Any, location: str) -> Number:
    if isinstance(value, bool):
        raise ParseError(f"Expected a number, got {value!r}", location)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ParseError(f"Number must be finite, got {value!r}", location)
        return value
    if isinstance(value, str):
        return parse_number(value, location)
    if isinstance(value, list) and len(value) == 2:
        re, im = (_json_number(v, location) for v in value)
        if im == 0:
            return re
        return complex(complex(re).real, complex(im).real)
    raise ParseError(f"Expected a number or [re, im], got {value!r}", location)


def parse_point_argument(text: str, location: str = "--base") -> Point:
    """Comma-separated coordinates, e.g. '0' or '1/2,0'"""
    return tuple(parse_number(part, location) for part in text.split(","))


def parse_points_text(text: str, source: str = "<points>") -> PointSet:
    """
    Parse a point CSV: one point per row, columns re1,im1[,re2,im2,...].

    Blank lines and lines starting with '#' are skipped. An optional header
    row names the columns; a column named 'label' holds point labels.
    Coordinates with a zero imaginary part keep their exact real value.

    Raises:
        ParseError: On malformed rows or an invalid point set
    """
    rows = []
    for line_number, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        rows.append((line_number, [cell.strip() for cell in row]))
    if not rows:
        raise ParseError("No points found", source)

    label_column = None
    first_line, first_row = rows[0]
    if any(cell.lower() == "label" for cell in first_row) or not _is_numeric_row(first_row):
        lowered = [cell.lower() for cell in first_row]
        label_column = lowered.index("label") if "label" in lowered else None
        rows = rows[1:]
        if not rows:
            raise ParseError("Header without points", source)

    points, labels = [], []
    width = None
    for line_number, row in rows:
        location = f"{source}:{line_number}"
        cells = list(row)
        if label_column is not None:
            if label_column >= len(cells):
                raise ParseError("Missing label column", location)
            labels.append(cells.pop(label_column))
        if len(cells) % 2:
            raise ParseError(
                f"Expected re,im column pairs, got {len(cells)} columns", location
            )
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ParseError(f"Expected {width} columns, got {len(cells)}", location)
        points.append(
            tuple(
                _coordinate(cells[column], cells[column + 1], f"{location}:{column + 1}")
                for column in range(0, len(cells), 2)
            )
        )

    try:
        return PointSet(points=tuple(points), labels=tuple(labels) if labels else None)
    except RKHSError as e:
        raise ParseError(str(e), source)


def _coordinate(real_text: str, imag_text: str, location: str) -> Number:
    real = parse_number(real_text, location)
    imag = parse_number(imag_text, location)
    if isinstance(real, complex) or isinstance(imag, complex):
        raise ParseError("Real and imaginary columns must hold real numbers", location)
    if imag == 0:
        return real
    return complex(float(real), float(imag))


def _is_numeric_row(row: List[str]) -> bool:
    try:
        for cell in row:
            parse_number(cell)
    except ParseError:
        return False
    return True


def read_points(path: Union[str, Path]) -> PointSet:
    """Read a point CSV file"""
    return parse_points_text(_read_text(path), str(path))


def _read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read file: {e.strerror or e}", str(path))


def load_json(path: Union[str, Path]) -> Any:
    """
    Load a JSON document.

    Raises:
        ParseError: If the file is missing or not valid JSON (with line and column)
    """
    return loads_json(_read_text(path), str(path))


def loads_json(text: str, source: str = "<json>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"{source}:{e.lineno}:{e.colno}")


def kernel_from_dict(data: Any, location: str = "kernel") -> KernelSpec:
    """
    Build a KernelSpec from its JSON form.

    {"variant": "szego_disk"}
    {"variant": "diagonal", "coeffs": ["1", "2", "2"], "domain_radius": 1.0, "dimension": 1}
    {"variant": "product", "left": {...}, "right": {...}}
    """
    if isinstance(data, str):
        data = {"variant": data}
    if not isinstance(data, dict) or "variant" not in data:
        raise ParseError("Kernel must be an object with a 'variant' key", location)

    variant = data["variant"]
    try:
        if variant == DIAGONAL:
            coeffs = data.get("coeffs")
            if not isinstance(coeffs, list):
                raise ParseError("Diagonal kernel needs a 'coeffs' list", f"{location}.coeffs")
            return KernelSpec.diagonal(
                [
                    _exact_coefficient(c, f"{location}.coeffs[{i}]")
                    for i, c in enumerate(coeffs)
                ],
                domain_radius=float(data.get("domain_radius", 1.0)),
                dimension=int(data.get("dimension", 1)),
            )
        if variant == PRODUCT:
            return KernelSpec.product(
                kernel_from_dict(data.get("left"), f"{location}.left"),
                kernel_from_dict(data.get("right"), f"{location}.right"),
            )
        return KernelSpec.builtin(variant)
    except ParseError:
        raise
    except (RKHSError, TypeError, ValueError) as e:
        raise ParseError(str(e), location)


def _exact_coefficient(value: Any, location: str) -> Fraction:
    number = _json_number(value, location)
    if isinstance(number, Fraction):
        return number
    if isinstance(number, float):
        return Fraction(number)
    raise ParseError(f"Diagonal coefficients must be real, got {value!r}", location)


def parse_kernel(value: str) -> KernelSpec:
    """
    Resolve a --kernel argument: a builtin name, a JSON file, or inline JSON.

    Raises:
        ParseError: If the value is none of those
    """
    if value in BUILTIN_KERNELS:
        return KernelSpec.builtin(value)
    stripped = value.strip()
    if stripped.startswith("{"):
        return kernel_from_dict(loads_json(stripped, "--kernel"), "--kernel")
    path = Path(value)
    if path.suffix == ".json" or path.exists():
        return kernel_from_dict(load_json(path), str(path))
    raise ParseError(
        f"Unknown kernel '{value}'. Use one of {', '.join(sorted(BUILTIN_KERNELS))}, "
        f"a JSON file or inline JSON",
        "--kernel",
    )


def matrix_from_json(data: Any, location: str) -> np.ndarray:
    """Nested rows of numbers, "p/q" strings or [re, im] pairs"""
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ParseError("Matrix must be a nonempty list of rows", location)
    width = len(data[0])
    rows = []
    for i, row in enumerate(data):
        if len(row) != width:
            raise ParseError(f"Row has {len(row)} entries, expected {width}", f"{location}[{i}]")
        rows.append([complex(_json_number(v, f"{location}[{i}][{j}]")) for j, v in enumerate(row)])
    return np.array(rows, dtype=complex)


def read_matrix_pair(path: Union[str, Path]) -> Tuple[np.ndarray, np.ndarray]:
    """{"A": matrix, "B": matrix}"""
    data = load_json(path)
    if not isinstance(data, dict):
        raise ParseError("Expected an object with keys 'A' and 'B'", str(path))
    missing = [key for key in ("A", "B") if key not in data]
    if missing:
        raise ParseError(f"Missing keys: {', '.join(missing)}", str(path))
    return (
        matrix_from_json(data["A"], f"{path}:A"),
        matrix_from_json(data["B"], f"{path}:B"),
    )


def polynomial_from_json(data: Any, variable_count: int, location: str) -> Polynomial:
    """List of [exponent, coefficient] terms"""
    if not isinstance(data, list):
        raise ParseError("Polynomial must be a list of [exponent, coefficient] terms", location)
    terms = []
    for i, term in enumerate(data):
        term_location = f"{location}[{i}]"
        if not isinstance(term, list) or len(term) != 2 or not isinstance(term[0], list):
            raise ParseError("Term must be [exponent list, coefficient]", term_location)
        exponent, coefficient = term
        if not all(isinstance(e, int) and not isinstance(e, bool) for e in exponent):
            raise ParseError(f"Exponent {exponent!r} must hold integers", term_location)
        terms.append((tuple(exponent), _json_number(coefficient, term_location)))
    try:
        return Polynomial(variable_count, tuple(terms))
    except RKHSError as e:
        raise ParseError(str(e), location)


def polynomial_matrix_from_json(data: Any, location: str) -> PolynomialMatrix:
    """
    {"variable_count": 2, "entries": [[poly, ...], ...]}

    Each poly is the term list read by polynomial_from_json, the same shape
    PolynomialMatrix.to_list writes.
    """
    if not isinstance(data, dict) or "entries" not in data or "variable_count" not in data:
        raise ParseError("Polynomial matrix needs 'variable_count' and 'entries'", location)
    variable_count = data["variable_count"]
    if not isinstance(variable_count, int) or variable_count < 1:
        raise ParseError("'variable_count' must be a positive integer", f"{location}.variable_count")
    entries = data["entries"]
    if not isinstance(entries, list) or not all(isinstance(row, list) for row in entries):
        raise ParseError("'entries' must be a list of rows", f"{location}.entries")
    rows = [
        [
            polynomial_from_json(entry, variable_count, f"{location}.entries[{i}][{j}]")
            for j, entry in enumerate(row)
        ]
        for i, row in enumerate(entries)
    ]
    try:
        return PolynomialMatrix.from_rows(rows, variable_count)
    except RKHSError as e:
        raise ParseError(str(e), location)


def read_polynomial_pair(path: Union[str, Path]) -> Tuple[PolynomialMatrix, PolynomialMatrix]:
    """{"phi": polynomial matrix, "psi": polynomial matrix}"""
    data = load_json(path)
    if not isinstance(data, dict) or "phi" not in data or "psi" not in data:
        raise ParseError("Expected an object with keys 'phi' and 'psi'", str(path))
    return (
        polynomial_matrix_from_json(data["phi"], f"{path}:phi"),
        polynomial_matrix_from_json(data["psi"], f"{path}:psi"),
    )


def read_polynomial_matrix(path: Union[str, Path]) -> PolynomialMatrix:
    return polynomial_matrix_from_json(load_json(path), str(path))


def polynomial_matrix_to_json(matrix: PolynomialMatrix) -> Dict[str, Any]:
    return {"variable_count": matrix.variable_count, "entries": matrix.to_list()}
