import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

from bidaub.cascade import (
    KEY_POINTS,
    DyadicSurface,
    KeyPointVector,
    cascade,
    fourth_eigenvalue,
    key_point_fixed_point,
    level_zero,
    partition_of_unity,
    refine,
    riemann_l2_norm,
    sample_count,
    transition_matrix,
)
from bidaub.errors import NoConvergence
from bidaub.masks import Mask, random_feasible

S2 = math.sqrt(2)


def eig_key_vector(mask):
    w, V = np.linalg.eig(transition_matrix(mask))
    k = int(np.argmin(np.abs(w - 1.0)))
    v = np.real(V[:, k])
    return v / v.sum()


def point_oracle(mask, key):
    """phi at any dyadic point by recursing the dilation equation down to integers."""
    c = mask.c
    at_int = {pq: v for pq, v in zip(KEY_POINTS, key)}

    @lru_cache(maxsize=None)
    def phi(x: Fraction, y: Fraction) -> float:
        if not (0 < x < 3 and 0 < y < 3):
            return 0.0
        if x.denominator == 1 and y.denominator == 1:
            return at_int[(int(x), int(y))]
        return sum(c[i, j] * phi(2 * x - i, 2 * y - j) for i in range(4) for j in range(4))

    return phi


def test_transition_matrix_b1a(golden_masks):
    L = transition_matrix(golden_masks["B1a"])
    np.testing.assert_allclose(L[0], [0.5, S2 / 8, 0.0, -0.25 - S2 / 8], atol=1e-15)
    # every column of L sums to 1 for a valid mask
    for m in golden_masks.values():
        np.testing.assert_allclose(transition_matrix(m).sum(axis=0), 1.0, atol=1e-12)


def test_transition_matrix_index_rule(rng):
    c = rng.normal(size=(4, 4))
    L = transition_matrix(Mask(c))
    assert L[0, 3] == c[0, 0] and L[3, 0] == c[3, 3]
    assert L[1, 2] == c[3, 0] and L[2, 1] == c[0, 3]
    assert L[3, 3] == c[2, 2]


def test_fourth_eigenvalue(golden_masks):
    assert fourth_eigenvalue(golden_masks["B1a"]) == pytest.approx(0.25 - S2 / 4, abs=1e-15)
    for m in golden_masks.values():
        ev = np.sort_complex(np.linalg.eigvals(transition_matrix(m)))
        want = np.sort_complex(np.array([1, 0.5, 0.5, fourth_eigenvalue(m)], dtype=complex))
        np.testing.assert_allclose(ev, want, atol=1e-6)


def test_spectrum_determinants_and_bound(golden_masks, rng):
    masks = list(golden_masks.values()) + [random_feasible(rng) for _ in range(50)]
    for m in masks:
        L = transition_matrix(m)
        lam4 = fourth_eigenvalue(m)
        for lam in (1.0, 0.5, lam4):
            assert abs(np.linalg.det(L - lam * np.eye(4))) < 1e-8
        assert abs(lam4) <= math.sqrt(7) / 4 + 1e-9


def test_fixed_point_matches_eigensolver(golden_masks):
    for m in golden_masks.values():
        key = key_point_fixed_point(m)
        assert key.iterations <= 200
        L = transition_matrix(m)
        assert np.max(np.abs(L @ key.values - key.values)) < 1e-12
        assert key.values.sum() == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(key.values, eig_key_vector(m), atol=1e-10)


def test_key_vector_json_and_properties(golden_masks):
    key = key_point_fixed_point(golden_masks["B2b"])
    assert (key.phi11, key.phi21, key.phi12, key.phi22) == tuple(key.values)
    d = key.to_json_dict()
    assert d["order"] == ["(1,1)", "(2,1)", "(1,2)", "(2,2)"]
    assert d["iterations"] == key.iterations


def test_fixed_point_rejects_lambda_one():
    # c22 + c33 - c32 - c23 = 1 makes the fixed point non-unique
    c = np.zeros((4, 4))
    c[2, 2] = 1.0
    with pytest.warns(RuntimeWarning):
        with pytest.raises(NoConvergence) as info:
            key_point_fixed_point(Mask(c))
    assert info.value.reason == "no_convergence"


def test_fixed_point_no_convergence_budget(golden_masks):
    with pytest.raises(NoConvergence):
        key_point_fixed_point(golden_masks["B1a"], max_iters=3)


def test_invalid_mask_warns():
    c = np.full((4, 4), 0.25)
    with pytest.warns(RuntimeWarning):
        try:
            key_point_fixed_point(Mask(c))
        except NoConvergence:
            pass


def test_half_points_from_dilation(golden_masks):
    m = golden_masks["B1a"]
    c = m.c
    s = cascade(m, 1)
    key = s.key
    assert s.at("1/2", "1/2") == pytest.approx(c[0, 0] * key.phi11, abs=1e-14)
    assert s.at("1/2", "3/2") == pytest.approx(c[0, 1] * key.phi12 + c[0, 2] * key.phi11, abs=1e-14)


@pytest.mark.parametrize("family", ["A1a", "A2b", "B1b", "B2a"])
def test_cascade_matches_recursive_oracle(golden_masks, family):
    m = golden_masks[family]
    s = cascade(m, 3)
    phi = point_oracle(m, tuple(eig_key_vector(m)))
    xs = s.coordinates()
    for p in range(0, s.size, 3):
        for q in range(0, s.size, 2):
            want = phi(Fraction(p, s.step), Fraction(q, s.step))
            assert s.values[p, q] == pytest.approx(want, abs=1e-10), (xs[p], xs[q])


def test_level_six_invariants(golden_masks):
    for m in golden_masks.values():
        s = cascade(m, 6)
        assert s.values.shape == (193, 193)
        V = s.values
        assert np.all(V[0, :] == 0) and np.all(V[-1, :] == 0)
        assert np.all(V[:, 0] == 0) and np.all(V[:, -1] == 0)
        assert s.discrepancy < 1e-10
        np.testing.assert_allclose(partition_of_unity(s), 1.0, atol=1e-8)


def test_refinement_keeps_parent_values(golden_masks):
    m = golden_masks["A2a"]
    s2 = cascade(m, 2)
    s3 = refine(s2)
    np.testing.assert_allclose(s3.values[::2, ::2], s2.values, atol=1e-12)
    assert s3.level == 3 and s3.key is s2.key


def test_level_zero_layout(golden_masks):
    m = golden_masks["B2b"]
    key = key_point_fixed_point(m)
    s = level_zero(m, key)
    assert s.values.shape == (4, 4)
    for (p, q), v in zip(KEY_POINTS, key.values):
        assert s.values[p, q] == v
    assert s.discrepancy is None


def test_surface_validation_and_lookup(golden_masks):
    m = golden_masks["B1a"]
    with pytest.raises(ValueError):
        DyadicSurface(1, np.zeros((4, 4)), m)
    s = cascade(m, 2)
    assert s.step == 4 and s.spacing == 0.25 and s.size == 13
    assert s.index_of(0.75) == 3
    with pytest.raises(ValueError):
        s.index_of("1/8")
    assert s.at(-1, 1) == 0.0 and s.at(4, 4) == 0.0
    with pytest.raises(ValueError):
        s.values[1, 1] = 0.0


def test_surface_copies_input(golden_masks):
    arr = np.zeros((4, 4))
    s = DyadicSurface(0, arr, golden_masks["B1a"])
    arr[1, 1] = 5
    assert s.values[1, 1] == 0


def test_levels_out_of_range(golden_masks):
    with pytest.raises(ValueError):
        cascade(golden_masks["B1a"], 11)
    with pytest.raises(ValueError):
        cascade(golden_masks["B1a"], -1)


def test_riemann_norm_near_one(golden_masks):
    s = cascade(golden_masks["B2b"], 6)
    assert abs(riemann_l2_norm(s) - 1.0) < 0.05


def test_sample_count():
    assert sample_count(0) == 16
    assert sample_count(6) == 193 ** 2


def test_key_point_vector_is_read_only():
    k = KeyPointVector([0.1, 0.2, 0.3, 0.4])
    with pytest.raises(ValueError):
        k.values[0] = 1.0
