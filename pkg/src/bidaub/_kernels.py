"""Hot loops, each with a numba and a pure-numpy implementation.

The numba path is used when numba imports and ``BIDAUB_DISABLE_JIT`` is
unset (or "0"/"false").  The flag is read at call time so tests and the
benchmark can switch backends inside one process.

Kernels
-------
refine          one dyadic level of the dilation equation
translate_sum   weighted sum of integer translates of a sampled surface
newton_batch    damped Newton on a 4x4 quadratic system from many starts
"""

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False

JIT_ENV = "BIDAUB_DISABLE_JIT"

# Newton status codes
CONVERGED = 0
SINGULAR = 1
STALLED = 2
DIVERGED = 3
MAX_ITERS = 4

_ARMIJO = 1e-4
_MAX_HALVINGS = 30
_BLOWUP = 1e8


def jit_enabled() -> bool:
    if not HAVE_NUMBA:
        return False
    return os.environ.get(JIT_ENV, "").strip().lower() in ("", "0", "false", "no")


def backend() -> str:
    return "numba" if jit_enabled() else "numpy"


def _njit(func):
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func


# -- refine -----------------------------------------------------------------

def refine_numpy(c, parent, step):
    n = parent.shape[0]
    child = np.zeros((2 * n - 1, 2 * n - 1))
    for i in range(4):
        for j in range(4):
            if c[i, j] != 0.0:
                child[i * step:i * step + n, j * step:j * step + n] += c[i, j] * parent
    return child


@_njit
def _refine_jit(c, parent, step):
    n = parent.shape[0]
    m = 2 * n - 1
    child = np.zeros((m, m))
    for p in range(m):
        for q in range(m):
            acc = 0.0
            for i in range(4):
                pi = p - i * step
                if pi < 0 or pi >= n:
                    continue
                for j in range(4):
                    qj = q - j * step
                    if qj < 0 or qj >= n:
                        continue
                    acc += c[i, j] * parent[pi, qj]
            child[p, q] = acc
    return child


def refine_numba(c, parent, step):
    return _refine_jit(np.ascontiguousarray(c, dtype=np.float64),
                       np.ascontiguousarray(parent, dtype=np.float64), int(step))


def refine(c, parent, step):
    """Level k -> k+1: ``child[p, q] = sum_ij c[i, j] * parent[p - i*step, q - j*step]``.

    ``step`` is 2**k and ``parent`` is (3*step + 1) square.
    """
    if jit_enabled():
        return refine_numba(c, parent, step)
    return refine_numpy(np.asarray(c, dtype=np.float64), np.asarray(parent, dtype=np.float64), step)


# -- translate_sum ----------------------------------------------------------

def translate_sum_numpy(values, coeffs, step):
    n = values.shape[0]
    nu, nv = coeffs.shape
    out = np.zeros(((nu - 1) * step + n, (nv - 1) * step + n))
    for u in range(nu):
        for v in range(nv):
            a = coeffs[u, v]
            if a != 0.0:
                out[u * step:u * step + n, v * step:v * step + n] += a * values
    return out


@_njit
def _translate_sum_jit(values, coeffs, step):
    n = values.shape[0]
    nu, nv = coeffs.shape
    out = np.zeros(((nu - 1) * step + n, (nv - 1) * step + n))
    for u in range(nu):
        for v in range(nv):
            a = coeffs[u, v]
            if a == 0.0:
                continue
            for p in range(n):
                for q in range(n):
                    out[u * step + p, v * step + q] += a * values[p, q]
    return out


def translate_sum_numba(values, coeffs, step):
    return _translate_sum_jit(np.ascontiguousarray(values, dtype=np.float64),
                              np.ascontiguousarray(coeffs, dtype=np.float64), int(step))


def translate_sum(values, coeffs, step):
    """``out[u*step + p, v*step + q] += coeffs[u, v] * values[p, q]``.

    ``values`` samples phi on its support at spacing 1/step; the result
    samples ``sum_uv coeffs[u, v] * phi(x - u, y - v)`` on the union of the
    translated supports, with the first translate at the origin.
    """
    if jit_enabled():
        return translate_sum_numba(values, coeffs, step)
    return translate_sum_numpy(np.asarray(values, dtype=np.float64),
                               np.asarray(coeffs, dtype=np.float64), step)


# -- newton_batch -----------------------------------------------------------
# Residual e of the system is  z @ Q[e] @ z + g[e] @ z + h[e]  (Q[e] symmetric),
# so the Jacobian row e is  2 Q[e] @ z + g[e].

def _residuals_numpy(Q, g, h, Z):
    return np.einsum("ni,eij,nj->ne", Z, Q, Z) + Z @ g.T + h


def _jacobians_numpy(Q, g, Z):
    return 2.0 * np.einsum("eij,nj->nei", Q, Z) + g[None, :, :]


def newton_batch_numpy(Q, g, h, starts, max_iters, tol):
    Z = np.array(starts, dtype=np.float64)
    n = Z.shape[0]
    status = np.full(n, MAX_ITERS, dtype=np.int64)
    active = np.ones(n, dtype=bool)
    for _ in range(max_iters):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        z = Z[idx]
        r = _residuals_numpy(Q, g, h, z)
        done = np.max(np.abs(r), axis=1) < tol
        status[idx[done]] = CONVERGED
        active[idx[done]] = False
        keep = ~done
        idx, z, r = idx[keep], z[keep], r[keep]
        if idx.size == 0:
            break
        J = _jacobians_numpy(Q, g, z)
        # same singularity test as the scalar path: relative pivot size
        scale = np.max(np.abs(J), axis=(1, 2))
        try:
            dz = np.linalg.solve(J, -r[:, :, None])[:, :, 0]
            ok = np.all(np.isfinite(dz), axis=1)
        except np.linalg.LinAlgError:
            dz = np.zeros_like(z)
            ok = np.zeros(idx.size, dtype=bool)
            for k in range(idx.size):
                try:
                    dz[k] = np.linalg.solve(J[k], -r[k])
                    ok[k] = np.all(np.isfinite(dz[k]))
                except np.linalg.LinAlgError:
                    pass
        ok &= np.abs(np.linalg.det(J)) > 1e-14 * scale ** 4
        status[idx[~ok]] = SINGULAR
        active[idx[~ok]] = False
        idx, z, r, dz = idx[ok], z[ok], r[ok], dz[ok]
        f0 = np.sum(r * r, axis=1)
        t = np.ones(idx.size)
        accepted = np.zeros(idx.size, dtype=bool)
        for _ in range(_MAX_HALVINGS):
            pending = ~accepted
            if not pending.any():
                break
            zt = z[pending] + t[pending, None] * dz[pending]
            rt = _residuals_numpy(Q, g, h, zt)
            ft = np.sum(rt * rt, axis=1)
            good = ft <= (1.0 - _ARMIJO * t[pending]) * f0[pending]
            pidx = np.flatnonzero(pending)
            accepted[pidx[good]] = True
            t[pidx[~good]] *= 0.5
        stalled = ~accepted
        status[idx[stalled]] = STALLED
        active[idx[stalled]] = False
        moved = idx[accepted]
        Z[moved] = z[accepted] + t[accepted, None] * dz[accepted]
        blown = np.max(np.abs(Z[moved]), axis=1) > _BLOWUP
        status[moved[blown]] = DIVERGED
        active[moved[blown]] = False
    # starts still active used up max_iters without a final check
    idx = np.flatnonzero(active)
    if idx.size:
        r = _residuals_numpy(Q, g, h, Z[idx])
        done = np.max(np.abs(r), axis=1) < tol
        status[idx[done]] = CONVERGED
    return Z, status


@_njit
def _residual_jit(Q, g, h, z, out):
    for e in range(4):
        acc = h[e]
        for i in range(4):
            acc += g[e, i] * z[i]
            row = 0.0
            for j in range(4):
                row += Q[e, i, j] * z[j]
            acc += z[i] * row
        out[e] = acc


@_njit
def _solve4_jit(A, b, x):
    # Gaussian elimination with partial pivoting on copies; False if singular.
    M = A.copy()
    y = b.copy()
    n = 4
    for k in range(n):
        p = k
        big = abs(M[k, k])
        for i in range(k + 1, n):
            if abs(M[i, k]) > big:
                big = abs(M[i, k])
                p = i
        if big == 0.0:
            return False
        if p != k:
            for j in range(n):
                tmp = M[k, j]
                M[k, j] = M[p, j]
                M[p, j] = tmp
            tmp = y[k]
            y[k] = y[p]
            y[p] = tmp
        for i in range(k + 1, n):
            f = M[i, k] / M[k, k]
            for j in range(k, n):
                M[i, j] -= f * M[k, j]
            y[i] -= f * y[k]
    for i in range(n - 1, -1, -1):
        acc = y[i]
        for j in range(i + 1, n):
            acc -= M[i, j] * x[j]
        x[i] = acc / M[i, i]
    return True


@_njit
def _det4_jit(A):
    M = A.copy()
    det = 1.0
    for k in range(4):
        p = k
        for i in range(k + 1, 4):
            if abs(M[i, k]) > abs(M[p, k]):
                p = i
        if M[p, k] == 0.0:
            return 0.0
        if p != k:
            for j in range(4):
                tmp = M[k, j]
                M[k, j] = M[p, j]
                M[p, j] = tmp
            det = -det
        det *= M[k, k]
        for i in range(k + 1, 4):
            f = M[i, k] / M[k, k]
            for j in range(k, 4):
                M[i, j] -= f * M[k, j]
    return det


@_njit
def _newton_batch_jit(Q, g, h, starts, max_iters, tol):
    n = starts.shape[0]
    Z = starts.copy()
    status = np.full(n, 4, dtype=np.int64)
    r = np.empty(4)
    rt = np.empty(4)
    J = np.empty((4, 4))
    dz = np.empty(4)
    zt = np.empty(4)
    neg = np.empty(4)
    for s in range(n):
        z = Z[s]
        for it in range(max_iters + 1):
            _residual_jit(Q, g, h, z, r)
            big = 0.0
            for e in range(4):
                if abs(r[e]) > big:
                    big = abs(r[e])
            if big < tol:
                status[s] = 0
                break
            if it == max_iters:
                break
            scale = 0.0
            for e in range(4):
                for i in range(4):
                    acc = g[e, i]
                    for j in range(4):
                        acc += 2.0 * Q[e, i, j] * z[j]
                    J[e, i] = acc
                    if abs(acc) > scale:
                        scale = abs(acc)
            if abs(_det4_jit(J)) <= 1e-14 * scale ** 4:
                status[s] = 1
                break
            for e in range(4):
                neg[e] = -r[e]
            if not _solve4_jit(J, neg, dz):
                status[s] = 1
                break
            finite = True
            for i in range(4):
                if not np.isfinite(dz[i]):
                    finite = False
            if not finite:
                status[s] = 1
                break
            f0 = 0.0
            for e in range(4):
                f0 += r[e] * r[e]
            t = 1.0
            accepted = False
            for _ in range(30):
                for i in range(4):
                    zt[i] = z[i] + t * dz[i]
                _residual_jit(Q, g, h, zt, rt)
                ft = 0.0
                for e in range(4):
                    ft += rt[e] * rt[e]
                if ft <= (1.0 - 1e-4 * t) * f0:
                    accepted = True
                    break
                t *= 0.5
            if not accepted:
                status[s] = 2
                break
            zmax = 0.0
            for i in range(4):
                z[i] = zt[i]
                if abs(z[i]) > zmax:
                    zmax = abs(z[i])
            if zmax > 1e8:
                status[s] = 3
                break
    return Z, status


def newton_batch_numba(Q, g, h, starts, max_iters, tol):
    return _newton_batch_jit(np.ascontiguousarray(Q, dtype=np.float64),
                             np.ascontiguousarray(g, dtype=np.float64),
                             np.ascontiguousarray(h, dtype=np.float64),
                             np.array(starts, dtype=np.float64), int(max_iters), float(tol))


def newton_batch(Q, g, h, starts, max_iters=100, tol=1e-10):
    """Damped Newton from every row of ``starts``.

    Returns the final points and a status code per start (CONVERGED,
    SINGULAR, STALLED, DIVERGED, MAX_ITERS).  A start converges when the
    sup-norm of its residual drops below ``tol``.  Steps are halved until
    the squared residual norm satisfies an Armijo decrease.
    """
    if jit_enabled():
        return newton_batch_numba(Q, g, h, starts, max_iters, tol)
    return newton_batch_numpy(np.asarray(Q, dtype=np.float64), np.asarray(g, dtype=np.float64),
                              np.asarray(h, dtype=np.float64), starts, max_iters, tol)
