"""Bivariate Daubechies-type scaling functions with 4x4 refinement masks."""

from .cascade import (
    KEY_POINTS,
    DyadicSurface,
    KeyPointVector,
    cascade,
    key_point_fixed_point,
    refine,
    transition_matrix,
)
from .errors import (
    BidaubError,
    InfeasibleParameters,
    InsufficientRange,
    InvalidKeyVector,
    NoConvergence,
    ZeroShift,
)
from .masks import (
    FAMILIES,
    MU1,
    MU2,
    FreeParameters,
    Mask,
    SolutionFamily,
    back_substitute,
    build_mask,
    discriminant,
    solve_core_six,
)
from .oracle import QuadraticSystem, SolutionSet, solve_all
from .reproduce import LinearFunctional, ReproductionPlan, evaluate, max_error, plan
from .verify import ConstraintReport, ShiftPair, verify

__version__ = "0.1.0"
