"""Residuals of the fourteen defining equations for a 4x4 mask.

The fourteen are: averaging (sum = 4), sum of squares (= 4), orthogonality
at shifts (1,1), (1,0), (0,1), and the nine order-2 sum rules.  Shifts
other than those three are reported as diagnostics and never gate a pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ZeroShift
from .masks import Mask

DEFAULT_TOL = 1e-10


class ShiftPair(NamedTuple):
    b: int
    d: int

    def key(self) -> str:
        return f"{self.b},{self.d}"


CANONICAL_SHIFTS = (ShiftPair(1, 1), ShiftPair(1, 0), ShiftPair(0, 1))
EXTRA_SHIFTS = tuple(
    ShiftPair(b, d)
    for b in range(-2, 3)
    for d in range(-2, 3)
    if (b, d) != (0, 0) and ShiftPair(b, d) not in CANONICAL_SHIFTS
)


def _coeffs(mask) -> np.ndarray:
    return mask.c if isinstance(mask, Mask) else np.asarray(mask, dtype=np.float64)


def parity_sums(mask) -> tuple[float, float, float, float]:
    """(w1, w2, w3, w4): sums over (even, even), (odd, even), (odd, odd), (even, odd)."""
    c = _coeffs(mask)
    w1 = c[0, 0] + c[0, 2] + c[2, 0] + c[2, 2]
    w2 = c[1, 0] + c[1, 2] + c[3, 0] + c[3, 2]
    w3 = c[1, 1] + c[1, 3] + c[3, 1] + c[3, 3]
    w4 = c[0, 1] + c[0, 3] + c[2, 1] + c[2, 3]
    return float(w1), float(w2), float(w3), float(w4)


def averaging_residual(mask) -> float:
    return sum(parity_sums(mask)) - 4.0


def sum_of_squares_residual(mask) -> float:
    c = _coeffs(mask)
    return float(np.sum(c * c)) - 4.0


def orthogonality_residual(mask, shift) -> float:
    """sum_ij c[i, j] * c[i - 2b, j - 2d], out-of-range entries taken as zero."""
    b, d = shift
    if b == 0 and d == 0:
        raise ZeroShift("shift (0, 0) is the sum-of-squares equation", b=0, d=0)
    c = _coeffs(mask)
    di, dj = 2 * b, 2 * d
    if abs(di) >= 4 or abs(dj) >= 4:
        return 0.0
    # overlap of c[i, j] with c[i - di, j - dj]
    i0, i1 = max(0, di), min(4, 4 + di)
    j0, j1 = max(0, dj), min(4, 4 + dj)
    a = c[i0:i1, j0:j1]
    s = c[i0 - di:i1 - di, j0 - dj:j1 - dj]
    return float(np.sum(a * s))


def regularity_residuals(mask) -> np.ndarray:
    """Nine sum-rule residuals, LHS - RHS, in the usual Reg1..Reg9 order."""
    c = _coeffs(mask)
    w1, w2, w3, w4 = parity_sums(c)
    x_even = 2 * c[2, 1] + 2 * c[2, 3]
    y_even = 2 * c[0, 2] + 2 * c[2, 2]
    return np.array([
        w4 - w1,
        w3 - w1,
        w2 - w1,
        (2 * c[2, 0] + 2 * c[2, 2]) - x_even,
        (c[1, 1] + c[1, 3] + 3 * c[3, 1] + 3 * c[3, 3]) - x_even,
        (c[1, 0] + c[1, 2] + 3 * c[3, 0] + 3 * c[3, 2]) - x_even,
        (c[0, 1] + c[2, 1] + 3 * c[0, 3] + 3 * c[2, 3]) - y_even,
        (c[1, 1] + c[3, 1] + 3 * c[1, 3] + 3 * c[3, 3]) - y_even,
        (2 * c[1, 2] + 2 * c[3, 2]) - y_even,
    ])


@dataclass
class ConstraintReport:
    averaging_residual: float
    sum_of_squares_residual: float
    orthogonality_residuals: dict
    regularity_residuals: np.ndarray
    parity_sums: tuple
    extra_shift_residuals: dict
    max_abs_residual: float
    tol: float = DEFAULT_TOL
    canonical: np.ndarray = field(repr=False, default=None)

    @property
    def max_canonical_residual(self) -> float:
        return float(np.max(np.abs(self.canonical)))

    @property
    def passed(self) -> bool:
        return bool(np.all(np.abs(self.canonical) < self.tol))

    def to_json_dict(self, all_shifts: bool = True) -> dict:
        out = {
            "passed": self.passed,
            "tol": self.tol,
            "averaging_residual": self.averaging_residual,
            "sum_of_squares_residual": self.sum_of_squares_residual,
            "orthogonality_residuals": {s.key(): v for s, v in self.orthogonality_residuals.items()},
            "regularity_residuals": [float(v) for v in self.regularity_residuals],
            "parity_sums": list(self.parity_sums),
            "max_abs_residual": self.max_abs_residual,
        }
        if all_shifts:
            out["extra_shift_residuals"] = {s.key(): v for s, v in self.extra_shift_residuals.items()}
        return out


def verify(mask, tol: float = DEFAULT_TOL) -> ConstraintReport:
    if not tol > 0:
        raise ValueError("tol must be positive")
    avg = averaging_residual(mask)
    sos = sum_of_squares_residual(mask)
    orth = {s: orthogonality_residual(mask, s) for s in CANONICAL_SHIFTS}
    reg = regularity_residuals(mask)
    extra = {s: orthogonality_residual(mask, s) for s in EXTRA_SHIFTS}
    canonical = np.array([avg, sos, *orth.values(), *reg])
    everything = np.concatenate([canonical, list(extra.values())])
    return ConstraintReport(
        averaging_residual=avg,
        sum_of_squares_residual=sos,
        orthogonality_residuals=orth,
        regularity_residuals=reg,
        parity_sums=parity_sums(mask),
        extra_shift_residuals=extra,
        max_abs_residual=float(np.max(np.abs(everything))),
        tol=tol,
        canonical=canonical,
    )
