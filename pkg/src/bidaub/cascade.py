"""Bi-cascade evaluation of the scaling function on dyadic grids.

Step one fixes phi at the four interior integer points as the eigenvalue-1
eigenvector of a 4x4 transition matrix, by plain iteration from
``[1, 0, 0, 0]``.  Step two applies the dilation equation level by level,
``phi(x, y) = sum_ij c[i, j] phi(2x - i, 2y - j)``, doubling the
resolution each time.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _kernels
from .errors import NoConvergence
from .masks import Mask
from .verify import verify

#: Order of the key points in every KeyPointVector and transition matrix.
KEY_POINTS = ((1, 1), (2, 1), (1, 2), (2, 2))

MAX_LEVELS = 10
LAMBDA_ONE_GUARD = 1e-12


def transition_matrix(mask: Mask) -> np.ndarray:
    """L with ``L[r, s] = c[2*p_r - p_s, 2*q_r - q_s]`` over the key points.

    Row 0 is ``[c11, c01, c10, c00]``.
    """
    c = mask.c
    L = np.empty((4, 4))
    for r, (p, q) in enumerate(KEY_POINTS):
        for s, (m, n) in enumerate(KEY_POINTS):
            L[r, s] = c[2 * p - m, 2 * q - n]
    return L


def fourth_eigenvalue(mask: Mask) -> float:
    """The eigenvalue of L other than 1, 1/2, 1/2: ``c22 + c33 - c32 - c23``."""
    c = mask.c
    return float(c[2, 2] + c[3, 3] - c[3, 2] - c[2, 3])


@dataclass(frozen=True, eq=False)
class KeyPointVector:
    """phi at (1,1), (2,1), (1,2), (2,2), in that order."""

    values: np.ndarray
    iterations: int = 0

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64).reshape(4)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def phi11(self):
        return float(self.values[0])

    @property
    def phi21(self):
        return float(self.values[1])

    @property
    def phi12(self):
        return float(self.values[2])

    @property
    def phi22(self):
        return float(self.values[3])

    def to_json_dict(self) -> dict:
        return {
            "order": [f"({p},{q})" for p, q in KEY_POINTS],
            "values": [float(v) for v in self.values],
            "iterations": self.iterations,
        }


def key_point_fixed_point(mask: Mask, max_iters: int = 200, tol: float = 1e-13) -> KeyPointVector:
    """Iterate ``b <- L b`` from ``[1, 0, 0, 0]`` until successive iterates agree.

    Stops once the sup-norm change is below ``tol``; raises NoConvergence if
    that has not happened after ``max_iters`` products or if the fourth
    eigenvalue sits on 1 (the fixed point would not be unique).
    """
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not verify(mask).passed:
        warnings.warn("mask does not satisfy the defining equations; "
                      "the fixed point may be meaningless", RuntimeWarning, stacklevel=2)
    lam4 = fourth_eigenvalue(mask)
    if abs(lam4 - 1.0) < LAMBDA_ONE_GUARD:
        raise NoConvergence("fourth eigenvalue of L equals 1; fixed point is not unique",
                            lambda4=lam4, iterations=0)
    L = transition_matrix(mask)
    b = np.array([1.0, 0.0, 0.0, 0.0])
    for n in range(1, max_iters + 1):
        nxt = L @ b
        if not np.all(np.isfinite(nxt)):
            break
        delta = np.max(np.abs(nxt - b))
        b = nxt
        if delta < tol:
            return KeyPointVector(b, n)
    raise NoConvergence(f"b = Lb did not settle within {max_iters} iterations",
                        lambda4=lam4, iterations=max_iters)


@dataclass(frozen=True, eq=False)
class DyadicSurface:
    """phi sampled at ``(m / 2**level, n / 2**level)`` for ``0 <= m, n <= 3 * 2**level``.

    ``discrepancy`` is the largest gap between the even-index entries as
    recomputed by the dilation equation and the parent level's values; it
    is None for a level-0 surface made directly from key values.
    """

    level: int
    values: np.ndarray
    mask: Mask
    key: Optional[KeyPointVector] = None
    discrepancy: Optional[float] = None

    def __post_init__(self):
        n = 3 * 2 ** self.level + 1
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (n, n):
            raise ValueError(f"level {self.level} surface must be {n}x{n}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def step(self) -> int:
        """Samples per unit length, 2**level."""
        return 2 ** self.level

    @property
    def spacing(self) -> float:
        return 1.0 / self.step

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def coordinates(self) -> np.ndarray:
        return np.arange(self.size) / self.step

    def index_of(self, x) -> int:
        """Grid index of the dyadic coordinate ``x`` (float, Fraction or str)."""
        m = Fraction(x) * self.step
        if m.denominator != 1:
            raise ValueError(f"{x} is not a multiple of 1/{self.step}")
        return int(m)

    def at(self, x, y) -> float:
        """phi(x, y); zero off the support [0, 3]^2."""
        p, q = self.index_of(x), self.index_of(y)
        if 0 <= p < self.size and 0 <= q < self.size:
            return float(self.values[p, q])
        return 0.0


def level_zero(mask: Mask, key: KeyPointVector) -> DyadicSurface:
    values = np.zeros((4, 4))
    for (p, q), v in zip(KEY_POINTS, key.values):
        values[p, q] = v
    return DyadicSurface(0, values, mask, key)


def refine(surface: DyadicSurface) -> DyadicSurface:
    """Next dyadic level through the dilation equation."""
    child = _kernels.refine(surface.mask.c, surface.values, surface.step)
    discrepancy = float(np.max(np.abs(child[::2, ::2] - surface.values)))
    return DyadicSurface(surface.level + 1, child, surface.mask, surface.key, discrepancy)


def cascade(mask: Mask, levels: int, max_iters: int = 200, tol: float = 1e-13) -> DyadicSurface:
    if not 0 <= levels <= MAX_LEVELS:
        raise ValueError(f"levels must lie in [0, {MAX_LEVELS}], got {levels}")
    surface = level_zero(mask, key_point_fixed_point(mask, max_iters, tol))
    for _ in range(levels):
        surface = refine(surface)
    return surface


def partition_of_unity(surface: DyadicSurface) -> np.ndarray:
    """``sum_ij phi(x + i, y + j)`` for every sample ``(x, y)`` in ``[0, 1]^2``.

    Entry ``[p, q]`` is the translate sum at ``(p, q) / step``; every
    integer translate that meets the support is included.
    """
    s, V = surface.step, surface.values
    total = np.zeros((s + 1, s + 1))
    for a in range(4):
        for b in range(4):
            block = V[a * s:a * s + s + 1, b * s:b * s + s + 1]
            total[:block.shape[0], :block.shape[1]] += block
    return total


def riemann_l2_norm(surface: DyadicSurface) -> float:
    """Riemann sum of phi^2 over the grid, an estimate of the squared L2 norm."""
    h = surface.spacing
    return float(np.sum(surface.values ** 2) * h * h)


def sample_count(level: int) -> int:
    return (3 * 2 ** level + 1) ** 2
