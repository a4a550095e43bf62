"""Closed-form 4x4 refinement masks.

A mask is fixed by two free coefficients ``(c32, c33)`` and one of eight
solution families.  The family picks

* ``A``/``B``: ``c13 = c31`` or ``c13 = 1/2 - 2*c33 - c31``,
* ``1``/``2``: ``mu1 = (1 + sqrt 3)/4`` or ``mu2 = (1 - sqrt 3)/4``,
* ``a``/``b``: the ``+``/``-`` branch of the discriminant square root.

Four core coefficients are solved in the order c23, c22, c31, c13, then the
remaining ten follow from the linear averaging/regularity equations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import InfeasibleParameters

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
MU1 = (1.0 + SQRT3) / 4.0
MU2 = (1.0 - SQRT3) / 4.0

# Negative discriminants above this are rounding noise around a double root.
DISCRIMINANT_FLOOR = -1e-14


class SolutionFamily(str, Enum):
    A1a = "A1a"
    A1b = "A1b"
    A2a = "A2a"
    A2b = "A2b"
    B1a = "B1a"
    B1b = "B1b"
    B2a = "B2a"
    B2b = "B2b"

    @property
    def kind(self) -> str:
        return self.value[0]

    @property
    def mu(self) -> float:
        return MU1 if self.value[1] == "1" else MU2

    @property
    def sign(self) -> float:
        return 1.0 if self.value[2] == "a" else -1.0

    def __str__(self):
        return self.value


FAMILIES = tuple(SolutionFamily)


class FreeParameters(NamedTuple):
    c32: float
    c33: float


def _family(family) -> SolutionFamily:
    return family if isinstance(family, SolutionFamily) else SolutionFamily(family)


def _params(params) -> FreeParameters:
    if isinstance(params, FreeParameters):
        return params
    c32, c33 = params
    return FreeParameters(float(c32), float(c33))


@dataclass(frozen=True, eq=False)
class Mask:
    """Refinement coefficients ``c[i, j]`` for ``0 <= i, j <= 3``.

    ``family`` and ``params`` record how the mask was built; both are
    ``None`` for masks entered by hand or read from elsewhere.
    """

    c: np.ndarray
    family: Optional[SolutionFamily] = None
    params: Optional[FreeParameters] = None

    def __post_init__(self):
        c = np.array(self.c, dtype=np.float64)
        if c.shape != (4, 4):
            raise ValueError(f"mask must be 4x4, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("mask entries must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        if self.family is not None:
            object.__setattr__(self, "family", _family(self.family))
        if self.params is not None:
            object.__setattr__(self, "params", _params(self.params))

    def __getitem__(self, ij):
        return self.c[ij]

    def transpose(self) -> "Mask":
        """Mask with ``c[i, j]`` and ``c[j, i]`` exchanged (no provenance)."""
        return Mask(self.c.T)

    def to_json_dict(self) -> dict:
        out = {}
        if self.family is not None:
            out["family"] = self.family.value
        if self.params is not None:
            out["c32"] = self.params.c32
            out["c33"] = self.params.c33
        out["coefficients"] = self.c.tolist()
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "Mask":
        family = data.get("family")
        params = None
        if "c32" in data and "c33" in data:
            params = FreeParameters(float(data["c32"]), float(data["c33"]))
        return cls(np.asarray(data["coefficients"], dtype=np.float64), family, params)


def discriminant(family, params) -> float:
    """Delta_1 (A1 types), Delta_2 (A2 types) or Delta_3 (B types) at ``params``."""
    family = _family(family)
    a, b = _params(params)
    if family.kind == "A" and family.mu == MU1:
        return (-34.0 + 32.0 * b * SQRT3 - 20.0 * SQRT3 + 32.0 * a * SQRT3
                - 48.0 * b * b + 32.0 * b - 32.0 * b * a + 48.0 * a - 48.0 * a * a)
    if family.kind == "A":
        return (-48.0 * a * a - 32.0 * a * SQRT3 - 32.0 * b * a + 48.0 * a - 34.0
                - 32.0 * b * SQRT3 + 20.0 * SQRT3 - 48.0 * b * b + 32.0 * b)
    return -48.0 * a * a - 32.0 * b * a - 48.0 * b * b + 2.0 - 16.0 * b


def is_feasible(family, params) -> bool:
    return discriminant(family, params) >= DISCRIMINANT_FLOOR


def solve_core_six(family, params) -> tuple[float, float, float, float]:
    """Return ``(c23, c22, c31, c13)`` for the family at ``(c32, c33)``.

    Raises InfeasibleParameters when the discriminant is negative.
    """
    family = _family(family)
    params = _params(params)
    c32, c33 = params
    delta = discriminant(family, params)
    if delta < DISCRIMINANT_FLOOR:
        raise InfeasibleParameters(
            f"{family.value} has no real mask at c32={c32!r}, c33={c33!r}",
            family=family.value, c32=c32, c33=c33, discriminant=delta,
        )
    root = family.sign * math.sqrt(max(delta, 0.0)) / 8.0
    mu = family.mu
    if family.kind == "A":
        c23 = 0.25 + 2.0 * mu - 0.5 * (c32 + c33) + root
        c22 = 0.75 + 4.0 * mu - c32 - c33 - c23
        c31 = mu - c33
        c13 = c31
    else:
        c23 = -0.5 * (c32 + c33) + root
        c22 = 0.25 - c32 - c33 - c23
        c31 = mu - c33
        c13 = 0.5 - 2.0 * c33 - c31
    return c23, c22, c31, c13


def back_substitute(c13, c22, c23, c31, c32, c33) -> dict[tuple[int, int], float]:
    """The ten coefficients fixed by the averaging and regularity equations."""
    return {
        (0, 0): -c31 - 2 * c33 - c13 + c22,
        (0, 1): -c31 - 2 * c33 + 0.5 + c23 - c13,
        (0, 2): c13 + c33 + 0.5 - c22,
        (0, 3): c33 - c23 + c13,
        (1, 0): -c31 - 2 * c33 + c32 - c13 + 0.5,
        (1, 1): -c13 - c31 - c33 + 1,
        (1, 2): -c32 + c13 + c33 + 0.5,
        (2, 0): c31 + c33 - c22 + 0.5,
        (2, 1): c31 + c33 + 0.5 - c23,
        (3, 0): c31 + c33 - c32,
    }


def assemble(c13, c22, c23, c31, c32, c33) -> np.ndarray:
    """Full 4x4 coefficient array from the six independent coefficients."""
    c = np.empty((4, 4))
    c[1, 3], c[2, 2], c[2, 3] = c13, c22, c23
    c[3, 1], c[3, 2], c[3, 3] = c31, c32, c33
    for ij, value in back_substitute(c13, c22, c23, c31, c32, c33).items():
        c[ij] = value
    return c


def build_mask(family, params: Sequence[float] = (0.0, 0.0)) -> Mask:
    family = _family(family)
    params = _params(params)
    c23, c22, c31, c13 = solve_core_six(family, params)
    return Mask(assemble(c13, c22, c23, c31, params.c32, params.c33), family, params)


def feasible_families(params) -> list[SolutionFamily]:
    return [f for f in FAMILIES if is_feasible(f, params)]


def random_feasible(rng: np.random.Generator, family=None, box=(-1.0, 1.0),
                    max_tries=100_000) -> Mask:
    """Rejection-sample a feasible ``(c32, c33)`` in ``box``² and build the mask.

    With ``family=None`` the family is drawn uniformly per attempt.
    """
    lo, hi = box
    for _ in range(max_tries):
        fam = _family(family) if family is not None else FAMILIES[rng.integers(len(FAMILIES))]
        params = FreeParameters(*rng.uniform(lo, hi, size=2).tolist())
        if is_feasible(fam, params):
            return build_mask(fam, params)
    raise InfeasibleParameters(f"no feasible draw for {family} in {box}", family=str(family))


@dataclass(frozen=True, eq=False)
class FeasibilityGrid:
    """Discriminant sign over a square grid; ``cells[i, j]`` is (c32s[i], c33s[j])."""

    family: SolutionFamily
    c32s: np.ndarray
    c33s: np.ndarray
    cells: np.ndarray

    @property
    def fraction_feasible(self) -> float:
        return float(np.mean(self.cells))


def feasibility_grid(family, lo: float, hi: float, steps: int) -> FeasibilityGrid:
    if steps < 1:
        raise ValueError("steps must be positive")
    if hi < lo:
        raise ValueError("range must satisfy lo <= hi")
    family = _family(family)
    axis = np.linspace(lo, hi, steps)
    cells = np.array([[is_feasible(family, (a, b)) for b in axis] for a in axis])
    return FeasibilityGrid(family, axis, axis.copy(), cells)
