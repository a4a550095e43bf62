"""Reproduce planes ``k*x + l*y + m`` from integer translates of phi.

With key values ``phi(1,1), phi(2,1), phi(1,2), phi(2,2)`` summing to 1,

    k*x + l*y + m = sum_uv a(u, v) * phi(x - u, y - v),
    a(u, v) = k*u + l*v + m + k*gamma_x + l*gamma_y,

where ``gamma_x = 2 phi22 + phi11 + 2 phi21 + phi12`` and
``gamma_y = 2 phi22 + phi11 + phi21 + 2 phi12``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .cascade import DyadicSurface, KeyPointVector
from .errors import InsufficientRange, InvalidKeyVector

KEY_SUM_TOL = 1e-8
DEFAULT_WINDOW = (3, 6, 3, 6)
DEFAULT_TRANSLATES = ((0, 6), (0, 6))


@dataclass(frozen=True)
class LinearFunctional:
    k: float
    l: float  # noqa: E741
    m: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.k, self.l, self.m)):
            raise ValueError("functional coefficients must be finite")

    def __call__(self, x, y):
        return self.k * x + self.l * y + self.m


@dataclass(frozen=True)
class ReproductionPlan:
    functional: LinearFunctional
    key: KeyPointVector
    gamma_x: float
    gamma_y: float

    @property
    def constant(self) -> float:
        """a(0, 0): the part of every coefficient that does not depend on (u, v)."""
        f = self.functional
        return f.k * self.gamma_x + f.l * self.gamma_y + f.m

    def coefficient(self, u, v):
        f = self.functional
        return f.k * u + f.l * v + self.constant


def plan(functional: LinearFunctional, key: KeyPointVector) -> ReproductionPlan:
    total = float(np.sum(key.values))
    if abs(total - 1.0) > KEY_SUM_TOL:
        raise InvalidKeyVector(f"key values sum to {total!r}, not 1", total=total)
    p11, p21, p12, p22 = (float(v) for v in key.values)
    gamma_x = 2 * p22 + p11 + 2 * p21 + p12
    gamma_y = 2 * p22 + p11 + p21 + 2 * p12
    return ReproductionPlan(functional, key, gamma_x, gamma_y)


@dataclass(frozen=True, eq=False)
class Reconstruction:
    """Translate-sum values on the lattice points of ``window``."""

    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    window: tuple
    level: int

    def exact(self, functional: LinearFunctional) -> np.ndarray:
        return functional(self.x[:, None], self.y[None, :])


def _lattice_index(value, step, what) -> int:
    m = Fraction(value) * step
    if m.denominator != 1:
        raise ValueError(f"{what}={value} is not a multiple of 1/{step}")
    return int(m)


def evaluate(rplan: ReproductionPlan, surface: DyadicSurface, window=DEFAULT_WINDOW,
             translates=DEFAULT_TRANSLATES) -> Reconstruction:
    """Sum ``a(u, v) * phi(x - u, y - v)`` over the translate ranges.

    ``window`` is ``(x0, x1, y0, y1)`` with corners on the surface lattice;
    ``translates`` gives inclusive ``(lo, hi)`` ranges for u and v.  Raises
    InsufficientRange if some window point has a translate meeting the
    support that lies outside those ranges.
    """
    x0, x1, y0, y1 = window
    (u0, u1), (v0, v1) = translates
    if x1 < x0 or y1 < y0 or u1 < u0 or v1 < v0:
        raise ValueError("window and translate ranges must be non-empty")
    need_u = (math.ceil(x0) - 3, math.floor(x1))
    need_v = (math.ceil(y0) - 3, math.floor(y1))
    if need_u[0] < u0 or need_u[1] > u1 or need_v[0] < v0 or need_v[1] > v1:
        raise InsufficientRange(
            f"window {tuple(window)} needs translates u in {need_u}, v in {need_v}; "
            f"got u in {(u0, u1)}, v in {(v0, v1)}",
            window=list(window), translates=[list(translates[0]), list(translates[1])],
        )
    s = surface.step
    u = np.arange(u0, u1 + 1)
    v = np.arange(v0, v1 + 1)
    coeffs = rplan.coefficient(u[:, None].astype(float), v[None, :].astype(float))
    canvas = _kernels.translate_sum(surface.values, coeffs, s)
    # canvas index 0 sits at (u0, v0)
    px0 = _lattice_index(x0, s, "x0") - u0 * s
    px1 = _lattice_index(x1, s, "x1") - u0 * s
    py0 = _lattice_index(y0, s, "y0") - v0 * s
    py1 = _lattice_index(y1, s, "y1") - v0 * s
    values = canvas[px0:px1 + 1, py0:py1 + 1].copy()
    x = (np.arange(px0, px1 + 1) + u0 * s) / s
    y = (np.arange(py0, py1 + 1) + v0 * s) / s
    return Reconstruction(x, y, values, tuple(window), surface.level)


def max_error(reconstruction: Reconstruction, functional: LinearFunctional, window=None) -> float:
    """Sup-norm of reconstruction minus the plane, optionally on a sub-window."""
    err = np.abs(reconstruction.values - reconstruction.exact(functional))
    if window is not None:
        x0, x1, y0, y1 = window
        sel_x = (reconstruction.x >= x0) & (reconstruction.x <= x1)
        sel_y = (reconstruction.y >= y0) & (reconstruction.y <= y1)
        err = err[np.ix_(sel_x, sel_y)]
    return float(np.max(err)) if err.size else 0.0


def reproduce(functional: LinearFunctional, surface: DyadicSurface, window=DEFAULT_WINDOW,
              translates=DEFAULT_TRANSLATES) -> Reconstruction:
    """plan + evaluate using the key values carried by ``surface``."""
    if surface.key is None:
        raise InvalidKeyVector("surface carries no key-point vector")
    return evaluate(plan(functional, surface.key), surface, window, translates)
