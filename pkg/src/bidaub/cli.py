"""bidaub command line interface: build, verify and evaluate 4x4 bivariate masks.

Exit status is 0 on success, 1 on a domain failure (infeasible parameters,
failed verification, no convergence) and 2 on a usage error.  Domain
failures print one ``error=<reason> key=value ...`` line on stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import io
from .cascade import MAX_LEVELS, cascade, riemann_l2_norm
from .errors import BidaubError
from .masks import FAMILIES, build_mask, feasibility_grid
from .oracle import solve_all
from .reproduce import LinearFunctional, max_error, reproduce
from .verify import DEFAULT_TOL, verify

log = logging.getLogger("bidaub")


def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A,B got {text!r}")
    return a, b


def _window(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    try:
        vals = [float(v) for v in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X0,X1[,Y0,Y1] got {text!r}")
    if len(vals) == 2:
        vals = vals * 2
    if len(vals) != 4:
        raise argparse.ArgumentTypeError(f"expected X0,X1[,Y0,Y1] got {text!r}")
    return tuple(vals)


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _levels(text: str) -> int:
    k = int(text)
    if not 0 <= k <= MAX_LEVELS:
        raise argparse.ArgumentTypeError(f"levels must lie in [0, {MAX_LEVELS}]")
    return k


def _min_starts(text: str) -> int:
    n = int(text)
    if n < 100:
        raise argparse.ArgumentTypeError("starts must be at least 100")
    return n


def _emit(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        io.atomic_write(path, text)


def cmd_mask(args) -> int:
    mask = build_mask(args.family, (args.c32, args.c33))
    _emit(args.out, io.dumps(mask.to_json_dict()))
    return 0


def cmd_verify(args) -> int:
    report = verify(io.read_mask(args.mask), args.tol)
    _emit(args.out, io.dumps(report.to_json_dict(all_shifts=args.all_shifts)))
    if not report.passed:
        print(f"error=verification_failed max_canonical_residual={report.max_canonical_residual!r} "
              f"tol={args.tol!r}", file=sys.stderr)
        return 1
    return 0


def cmd_cascade(args) -> int:
    surface = cascade(io.read_mask(args.mask), args.levels)
    io.atomic_write(args.out, io.surface_csv(surface))
    meta = surface.key.to_json_dict()
    meta["level"] = surface.level
    meta["refinement_discrepancy"] = surface.discrepancy
    meta["riemann_l2_norm"] = riemann_l2_norm(surface)
    io.write_json(io.sidecar(args.out, "keypoints"), meta)
    return 0


def cmd_reproduce(args) -> int:
    functional = LinearFunctional(args.k, args.l, args.m)
    surface = cascade(io.read_mask(args.mask), args.levels)
    rec = reproduce(functional, surface, args.window)
    io.atomic_write(args.out, io.reconstruction_csv(rec, functional))
    summary = {
        "max_error": max_error(rec, functional),
        "window": list(args.window),
        "level": surface.level,
        "functional": {"k": args.k, "l": args.l, "m": args.m},
    }
    io.write_json(io.sidecar(args.out, "summary"), summary)
    return 0


def cmd_sweep(args) -> int:
    lo, hi = args.range
    grid = feasibility_grid(args.family, lo, hi, args.steps)
    _emit(args.out, io.feasibility_csv(grid.c32s, grid.c33s, grid.cells))
    return 0


def cmd_oracle(args) -> int:
    result = solve_all(args.c32, args.c33, starts=args.starts, seed=args.seed)
    _emit(args.out, io.dumps(result.to_json_dict()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bidaub", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    families = [f.value for f in FAMILIES]

    p = sub.add_parser("mask", help="build a mask from a family and (c32, c33)")
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--c32", type=float, required=True)
    p.add_argument("--c33", type=float, required=True)
    p.add_argument("--out", help="output JSON path (default stdout)")
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("verify", help="residuals of the fourteen equations")
    p.add_argument("--mask", required=True)
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--all-shifts", action="store_true",
                   help="also report orthogonality at every shift in [-2,2]^2")
    p.add_argument("--out", help="report JSON path (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cascade", help="sample phi on the level-K dyadic grid")
    p.add_argument("--mask", required=True)
    p.add_argument("--levels", type=_levels, required=True)
    p.add_argument("--out", required=True, help="surface CSV; key values go to <stem>.keypoints.json")
    p.set_defaults(func=cmd_cascade)

    p = sub.add_parser("reproduce", help="rebuild k*x + l*y + m from translates of phi")
    p.add_argument("--mask", required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--l", type=float, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--levels", type=_levels, default=5)
    p.add_argument("--window", type=_window, default=(3.0, 6.0, 3.0, 6.0),
                   help="X0,X1[,Y0,Y1] (default 3,6)")
    p.add_argument("--out", required=True, help="reconstruction CSV; summary goes to <stem>.summary.json")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("sweep", help="map where a family's discriminant is non-negative")
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--range", type=_pair, required=True, help="A,B (write --range=-2,2 for negatives)")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="multistart Newton on the reduced quadratic system")
    p.add_argument("--c32", type=float, required=True)
    p.add_argument("--c33", type=float, required=True)
    p.add_argument("--starts", type=_min_starts, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="JSON path (default stdout)")
    p.set_defaults(func=cmd_oracle)
    return parser


def _reason_line(exc: BidaubError) -> str:
    parts = [f"error={exc.reason}"]
    parts += [f"{k}={v!r}" if isinstance(v, float) else f"{k}={v}" for k, v in exc.details.items()]
    return " ".join(parts)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if getattr(args, "steps", 1) < 1:
        parser.error("--steps must be positive")
    try:
        return args.func(args)
    except BidaubError as exc:
        log.debug("domain failure", exc_info=True)
        print(_reason_line(exc), file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error=io_or_value message={str(exc)!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
