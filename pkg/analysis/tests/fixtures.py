"""Test fixtures: point sets, matrices and input files"""

import json
from fractions import Fraction
from pathlib import Path

from analysis.services.kernels import PointSet

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

# Schur matrix of sandwich_disk on {0.9, -0.9} at base 0 has this min eigenvalue
SANDWICH_MIN_EIGENVALUE = -7.6313
SANDWICH_OFF_DIAGONAL = -8.5263

SANDWICH_POINTS_CSV = "re,im\n0.9,0\n-0.9,0\n"
BERGMAN_POINTS_CSV = "# rational points\n1/2,0\n1/4,0\n"
BIDISK_POINTS_CSV = "re1,im1,re2,im2,label\n1/2,0,1/3,0,a\n0,1/2,1/4,0,b\n-1/3,0,0,0,c\n"

DOUGLAS_DIAGONAL = {
    "A": [[1, 0], [0, "1/2"]],
    "B": [["1/2", 0], [0, "1/2"]],
}
DOUGLAS_INFEASIBLE = {
    "A": [["1/2"]],
    "B": [[1]],
}

# Phi = [1, z1 z2], Psi = [z1, z2]: the numerator of the bidisk kernel
BIDISK_MULTIPLIERS = {
    "phi": {
        "variable_count": 2,
        "entries": [[[[[0, 0], 1]], [[[1, 1], 1]]]],
    },
    "psi": {
        "variable_count": 2,
        "entries": [[[[[1, 0], 1]], [[[0, 1], 1]]]],
    },
}


def rational_points(*values):
    return PointSet.of(values)


def write_text(directory, name, text):
    path = Path(directory) / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def write_json(directory, name, data):
    return write_text(directory, name, json.dumps(data))
