"""Numeric cross-check of the closed-form families.

After the ten linear coefficients are eliminated, the sum-of-squares and
three orthogonality equations become four quadratics in
``(c23, c22, c31, c13)`` once ``(c32, c33)`` are fixed.  ``solve_all`` runs
damped Newton from many random starts and matches every converged root
against the closed-form solutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from . import _kernels
from .masks import FAMILIES, SolutionFamily, is_feasible, solve_core_six

UNKNOWNS = ("c23", "c22", "c31", "c13")
FIXED = ("c32", "c33")
_VARS = UNKNOWNS + FIXED
_INDEX = {name: k for k, name in enumerate(_VARS)}

RESIDUAL_TOL = 1e-10
MATCH_TOL = 1e-7
DEDUP_TOL = 1e-7

# (coefficient, variable, variable); None marks a missing factor.
# Equation 1 is written as LHS - 4.
_EQUATIONS = (
    (
        (20, "c33", "c13"), (20, "c33", "c31"), (-4, "c22", "c13"), (-8, "c33", "c22"),
        (8, "c31", "c13"), (-4, "c31", "c22"), (-8, "c33", "c23"), (-4, "c31", "c23"),
        (-4, "c13", "c32"), (-8, "c33", "c32"), (-4, "c31", "c32"), (-2, "c13", None),
        (-2, "c22", None), (-2, "c31", None), (-2, "c33", None), (4, "c32", "c32"),
        (20, "c33", "c33"), (8, "c13", "c13"), (4, "c22", "c22"), (4, "c23", "c23"),
        (8, "c31", "c31"), (5 / 2, None, None), (-4, "c23", "c13"), (-4, None, None),
    ),
    (
        (-1, "c33", "c31"), (-1, "c33", "c33"), (1, "c33", None), (-1, "c33", "c13"),
        (-1, "c31", "c32"), (-2, "c33", "c32"), (1 / 2, "c32", None), (-1, "c13", "c32"),
        (1, "c32", "c32"), (-1, "c31", "c23"), (-2, "c33", "c23"), (1, "c23", "c23"),
        (1 / 2, "c23", None), (-1, "c23", "c13"), (-1, "c31", "c22"), (-2, "c33", "c22"),
        (1, "c22", "c22"), (-1, "c22", "c13"),
    ),
    (
        (-2, "c33", "c13"), (-10, "c33", "c31"), (2, "c22", "c13"), (4, "c33", "c22"),
        (-4, "c31", "c13"), (2, "c31", "c22"), (4, "c33", "c23"), (2, "c31", "c23"),
        (2, "c13", "c32"), (4, "c33", "c32"), (2, "c31", "c32"), (-1, "c13", None),
        (1, "c22", None), (1, "c31", None), (-1, "c33", None), (-2, "c32", "c32"),
        (-6, "c33", "c33"), (-2, "c22", "c22"), (-2, "c23", "c23"), (-4, "c31", "c31"),
        (2, "c23", "c13"), (1 / 4, None, None),
    ),
    (
        (-10, "c33", "c13"), (-2, "c33", "c31"), (2, "c22", "c13"), (4, "c33", "c22"),
        (-4, "c31", "c13"), (2, "c31", "c22"), (4, "c33", "c23"), (2, "c31", "c23"),
        (2, "c13", "c32"), (4, "c33", "c32"), (2, "c31", "c32"), (1, "c13", None),
        (1, "c22", None), (-1, "c31", None), (-1, "c33", None), (-2, "c32", "c32"),
        (-6, "c33", "c33"), (-4, "c13", "c13"), (-2, "c22", "c22"), (-2, "c23", "c23"),
        (2, "c23", "c13"), (1 / 4, None, None),
    ),
)


def _full_forms():
    """Quadratic forms over all six variables: r_e(w) = w Q_e w + g_e w + h_e."""
    Q = np.zeros((4, 6, 6))
    g = np.zeros((4, 6))
    h = np.zeros(4)
    for e, terms in enumerate(_EQUATIONS):
        for coef, a, b in terms:
            if a is None:
                h[e] += coef
            elif b is None:
                g[e, _INDEX[a]] += coef
            else:
                i, j = _INDEX[a], _INDEX[b]
                Q[e, i, j] += coef / 2
                Q[e, j, i] += coef / 2
    return Q, g, h


_Q6, _G6, _H6 = _full_forms()


@dataclass(frozen=True)
class QuadraticSystem:
    """The four quadratics in ``(c23, c22, c31, c13)`` at fixed ``(c32, c33)``."""

    c32: float
    c33: float

    @cached_property
    def forms(self):
        f = np.array([self.c32, self.c33])
        Q = _Q6[:, :4, :4].copy()
        g = _G6[:, :4] + 2.0 * np.einsum("eij,j->ei", _Q6[:, :4, 4:], f)
        h = _H6 + np.einsum("i,eij,j->e", f, _Q6[:, 4:, 4:], f) + _G6[:, 4:] @ f
        return Q, g, h

    def residuals(self, point) -> np.ndarray:
        Q, g, h = self.forms
        z = np.asarray(point, dtype=np.float64)
        return np.einsum("...i,eij,...j->...e", z, Q, z) + z @ g.T + h

    def jacobian(self, point) -> np.ndarray:
        Q, g, _ = self.forms
        z = np.asarray(point, dtype=np.float64)
        return 2.0 * np.einsum("eij,...j->...ei", Q, z) + g


def residuals(system: QuadraticSystem, point) -> np.ndarray:
    return system.residuals(point)


def closed_form_roots(c32: float, c33: float) -> dict[SolutionFamily, np.ndarray]:
    """``(c23, c22, c31, c13)`` for every family that is real at these parameters."""
    return {
        fam: np.array(solve_core_six(fam, (c32, c33)))
        for fam in FAMILIES
        if is_feasible(fam, (c32, c33))
    }


@dataclass
class SolutionSet:
    c32: float
    c33: float
    roots: np.ndarray
    families: list
    expected: dict = field(repr=False)
    statuses: dict = field(default_factory=dict, repr=False)

    @property
    def unmatched(self) -> np.ndarray:
        keep = [k for k, f in enumerate(self.families) if f is None]
        return self.roots[keep]

    @property
    def missed(self) -> list[SolutionFamily]:
        """Feasible families with no root within MATCH_TOL."""
        out = []
        for fam, ref in self.expected.items():
            if not any(np.linalg.norm(r - ref) < MATCH_TOL for r in self.roots):
                out.append(fam)
        return out

    def to_json_dict(self) -> dict:
        return {
            "c32": self.c32,
            "c33": self.c33,
            "roots": [
                {"values": [float(v) for v in r], "family": None if f is None else f.value}
                for r, f in zip(self.roots, self.families)
            ],
            "unmatched_count": len(self.unmatched),
        }


def deduplicate(points: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    """Lexicographically sorted representatives, one per cluster of radius ``tol``."""
    if len(points) == 0:
        return np.empty((0, 4))
    # sort on rounded keys: distinct families can share c23 and c22 exactly
    keys = np.round(points, 8) + 0.0
    order = np.lexsort(keys.T[::-1])
    kept: list[np.ndarray] = []
    for p in points[order]:
        if not any(np.linalg.norm(p - q) < tol for q in kept):
            kept.append(p)
    return np.array(kept)


def match_family(root, expected: dict, tol: float = MATCH_TOL) -> Optional[SolutionFamily]:
    best, best_dist = None, tol
    for fam, ref in expected.items():
        dist = float(np.linalg.norm(root - ref))
        if dist < best_dist:
            best, best_dist = fam, dist
    return best


def solve_all(c32: float, c33: float, starts: int = 1000, seed: int = 0,
              max_iters: int = 100, tol: float = RESIDUAL_TOL) -> SolutionSet:
    if starts < 100:
        raise ValueError("starts must be at least 100")
    system = QuadraticSystem(float(c32), float(c33))
    rng = np.random.default_rng(seed)
    x0 = rng.uniform(-2.0, 2.0, size=(starts, 4))
    Q, g, h = system.forms
    Z, status = _kernels.newton_batch(Q, g, h, x0, max_iters, tol)
    converged = Z[status == _kernels.CONVERGED]
    roots = deduplicate(converged)
    expected = closed_form_roots(c32, c33)
    families = [match_family(r, expected) for r in roots]
    codes, counts = np.unique(status, return_counts=True)
    return SolutionSet(float(c32), float(c33), roots, families, expected,
                       dict(zip(codes.tolist(), counts.tolist())))
