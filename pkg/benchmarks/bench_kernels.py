#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--levels K] [--starts S]

Each kernel is run once untimed per backend (to pay numba's compile or
cache-load cost), then timed ``--repeat`` times; the best time is reported
together with the largest difference between the two backends' outputs.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bidaub import _kernels
from bidaub.cascade import cascade
from bidaub.masks import build_mask
from bidaub.oracle import QuadraticSystem


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def _converged(result):
    # NaN out starts that did not converge; rounding can send a path near a
    # singular Jacobian to different roots on the two backends, so compare
    # only starts that land on the same root
    Z, status = result
    return np.where((status == _kernels.CONVERGED)[:, None], Z, np.nan)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--levels", type=int, default=8)
    ap.add_argument("--starts", type=int, default=5000)
    args = ap.parse_args(argv)

    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend is available")
        return 1

    mask = build_mask("B2b", (0.0, 0.0))
    parent = cascade(mask, args.levels - 1).values
    step = 2 ** (args.levels - 1)
    child_surface = cascade(mask, args.levels)
    coeffs = np.random.default_rng(0).normal(size=(7, 7))
    Q, g, h = QuadraticSystem(0.0, 0.0).forms
    starts = np.random.default_rng(1).uniform(-2, 2, size=(args.starts, 4))

    cases = {
        f"refine (level {args.levels - 1} -> {args.levels})": (
            lambda: _kernels.refine_numpy(mask.c, parent, step),
            lambda: _kernels.refine_numba(mask.c, parent, step),
        ),
        f"translate_sum (7x7 translates, level {args.levels})": (
            lambda: _kernels.translate_sum_numpy(child_surface.values, coeffs, child_surface.step),
            lambda: _kernels.translate_sum_numba(child_surface.values, coeffs, child_surface.step),
        ),
        f"newton_batch ({args.starts} starts)": (
            lambda: _converged(_kernels.newton_batch_numpy(Q, g, h, starts, 100, 1e-10)),
            lambda: _converged(_kernels.newton_batch_numba(Q, g, h, starts, 100, 1e-10)),
        ),
    }

    print(f"{'kernel':<42} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8} {'max diff':>10}")
    for name, (np_fn, nb_fn) in cases.items():
        t_np = best_of(np_fn, args.repeat)
        t_nb = best_of(nb_fn, args.repeat)
        a, b = np_fn(), nb_fn()
        gap = np.max(np.abs(a - b), axis=-1)
        same = gap < 1e-6
        diff = float(np.max(gap[same])) if same.any() else float("nan")
        moved = int(np.sum(~same & ~np.isnan(gap)))
        note = f"  ({moved} of {gap.size} reached a different root)" if moved else ""
        print(f"{name:<42} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f} {diff:>10.1e}{note}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
