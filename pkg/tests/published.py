"""Example masks as printed, written out from their radical expressions.

Rows are i, columns j.  ``s2 = sqrt 2``, ``s3 = sqrt 3``,
``r1 = sqrt(-46 + 28 sqrt 3)`` (A1 at (1, 1/2)) and
``r2 = sqrt(-34 + 20 sqrt 3)`` (A2 at (0, 0)).
"""

from math import sqrt

import numpy as np

s2 = sqrt(2.0)
s3 = sqrt(3.0)
r1 = sqrt(-46 + 28 * s3)
r2 = sqrt(-34 + 20 * s3)

A1_PARAMS = (1.0, 0.5)
OTHER_PARAMS = (0.0, 0.0)

PUBLISHED = {
    "A1a": [
        [-1 / 4 - r1 / 8, r1 / 8, 1 / 2 - s3 / 4 + r1 / 8, 1 / 4 - s3 / 4 - r1 / 8],
        [1 - s3 / 2, 1 - s3 / 2, -1 / 4 + s3 / 4, -1 / 4 + s3 / 4],
        [1 / 2 - s3 / 4 + r1 / 8, 3 / 4 - s3 / 4 - r1 / 8, 1 / 4 + s3 / 2 - r1 / 8, s3 / 2 + r1 / 8],
        [-3 / 4 + s3 / 4, -1 / 4 + s3 / 4, 1, 1 / 2],
    ],
    "A1b": [
        [-1 / 4 + r1 / 8, -r1 / 8, 1 / 2 - s3 / 4 - r1 / 8, 1 / 4 - s3 / 4 + r1 / 8],
        [1 - s3 / 2, 1 - s3 / 2, -1 / 4 + s3 / 4, -1 / 4 + s3 / 4],
        [1 / 2 - s3 / 4 - r1 / 8, 3 / 4 - s3 / 4 + r1 / 8, 1 / 4 + s3 / 2 + r1 / 8, s3 / 2 - r1 / 8],
        [-3 / 4 + s3 / 4, -1 / 4 + s3 / 4, 1, 1 / 2],
    ],
    "A2a": [
        [1 / 2 - r2 / 8, 3 / 4 + r2 / 8, -1 / 4 + s3 / 4 + r2 / 8, -1 / 2 + s3 / 4 - r2 / 8],
        [s3 / 2, 1 / 2 + s3 / 2, 3 / 4 - s3 / 4, 1 / 4 - s3 / 4],
        [-1 / 4 + s3 / 4 + r2 / 8, s3 / 4 - r2 / 8, 1 - s3 / 2 - r2 / 8, 3 / 4 - s3 / 2 + r2 / 8],
        [1 / 4 - s3 / 4, 1 / 4 - s3 / 4, 0, 0],
    ],
    "A2b": [
        [1 / 2 + r2 / 8, 3 / 4 - r2 / 8, -1 / 4 + s3 / 4 - r2 / 8, -1 / 2 + s3 / 4 + r2 / 8],
        [s3 / 2, 1 / 2 + s3 / 2, 3 / 4 - s3 / 4, 1 / 4 - s3 / 4],
        [-1 / 4 + s3 / 4 - r2 / 8, s3 / 4 + r2 / 8, 1 - s3 / 2 + r2 / 8, 3 / 4 - s3 / 2 - r2 / 8],
        [1 / 4 - s3 / 4, 1 / 4 - s3 / 4, 0, 0],
    ],
    "B1a": [
        [-1 / 4 - s2 / 8, s2 / 8, 1 / 2 - s3 / 4 + s2 / 8, 1 / 4 - s2 / 8 - s3 / 4],
        [0, 1 / 2, 3 / 4 - s3 / 4, 1 / 4 - s3 / 4],
        [1 / 2 + s3 / 4 + s2 / 8, 3 / 4 + s3 / 4 - s2 / 8, 1 / 4 - s2 / 8, s2 / 8],
        [1 / 4 + s3 / 4, 1 / 4 + s3 / 4, 0, 0],
    ],
    "B1b": [
        [-1 / 4 + s2 / 8, -s2 / 8, 1 / 2 - s3 / 4 - s2 / 8, 1 / 4 + s2 / 8 - s3 / 4],
        [0, 1 / 2, 3 / 4 - s3 / 4, 1 / 4 - s3 / 4],
        [1 / 2 + s3 / 4 - s2 / 8, 3 / 4 + s3 / 4 + s2 / 8, 1 / 4 + s2 / 8, -s2 / 8],
        [1 / 4 + s3 / 4, 1 / 4 + s3 / 4, 0, 0],
    ],
    "B2a": [
        [-1 / 4 - s2 / 8, s2 / 8, 1 / 2 + s3 / 4 + s2 / 8, 1 / 4 - s2 / 8 + s3 / 4],
        [0, 1 / 2, 3 / 4 + s3 / 4, 1 / 4 + s3 / 4],
        [1 / 2 - s3 / 4 + s2 / 8, 3 / 4 - s3 / 4 - s2 / 8, 1 / 4 - s2 / 8, s2 / 8],
        [1 / 4 - s3 / 4, 1 / 4 - s3 / 4, 0, 0],
    ],
    "B2b": [
        [-1 / 4 + s2 / 8, -s2 / 8, 1 / 2 + s3 / 4 - s2 / 8, 1 / 4 + s2 / 8 + s3 / 4],
        [0, 1 / 2, 3 / 4 + s3 / 4, 1 / 4 + s3 / 4],
        [1 / 2 - s3 / 4 - s2 / 8, 3 / 4 - s3 / 4 + s2 / 8, 1 / 4 + s2 / 8, -s2 / 8],
        [1 / 4 - s3 / 4, 1 / 4 - s3 / 4, 0, 0],
    ],
}
PUBLISHED = {k: np.array(v, dtype=float) for k, v in PUBLISHED.items()}

# The matrix shown with the x + 6y - 10 worked example.
WORKED_EXAMPLE = np.array([
    [-1 / 4 - s2 / 8, s2 / 8, 1 / 2 + s3 / 4 + s2 / 8, 1 / 4 - s2 / 8 + s3 / 4],
    [0, 1 / 2, 3 / 4 + s3 / 4, 1 / 4 + s3 / 4],
    [1 / 2 - s3 / 4 + s2 / 8, 3 / 4 - s3 / 4 - s2 / 8, 1 / 4 - s2 / 8, s2 / 8],
    [1 / 4 - s3 / 4, 1 / 4 - s3 / 4, 0, 0],
])


def params_for(family: str):
    return A1_PARAMS if family.startswith("A1") else OTHER_PARAMS
