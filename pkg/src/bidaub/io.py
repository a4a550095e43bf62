"""File formats: mask/report/solution JSON and surface/reconstruction CSV.

Floats are written in 17-significant-digit scientific notation so every
double survives a round trip.  Grid coordinates are dyadic and are written
as their exact decimal expansion.  Files are written to a temporary name in
the target directory and then renamed into place.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from decimal import Decimal
from pathlib import Path

import numpy as np

from .cascade import DyadicSurface
from .masks import Mask
from .reproduce import LinearFunctional, Reconstruction


def fmt_float(value: float) -> str:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"cannot serialise non-finite value {value!r}")
    return f"{value:.16e}"


def fmt_dyadic(value: float) -> str:
    """Exact decimal form of a double, e.g. 1.015625, 0.5, 3."""
    return format(Decimal(float(value)), "f")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with every float in 17-digit scientific notation."""
    def enc(o, depth):
        pad = " " * (indent * (depth + 1))
        end = " " * (indent * depth)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(str(k))}: {enc(v, depth + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            if all(isinstance(v, (int, float, np.floating, np.integer)) and not isinstance(v, bool)
                   for v in o):
                return "[" + ", ".join(enc(v, depth + 1) for v in o) + "]"
            return "[\n" + ",\n".join(pad + enc(v, depth + 1) for v in o) + "\n" + end + "]"
        if isinstance(o, (bool, np.bool_)):
            return "true" if o else "false"
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return fmt_float(o)
        if o is None:
            return "null"
        return json.dumps(o)

    return enc(obj, 0) + "\n"


def atomic_write(path, text: str) -> None:
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path, obj) -> None:
    atomic_write(path, dumps(obj))


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def write_mask(path, mask: Mask) -> None:
    write_json(path, mask.to_json_dict())


def read_mask(path) -> Mask:
    return Mask.from_json_dict(read_json(path))


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def surface_csv(surface: DyadicSurface) -> str:
    coords = [fmt_dyadic(v) for v in surface.coordinates()]
    V = surface.values
    rows = ((coords[p], coords[q], fmt_float(V[p, q]))
            for p in range(surface.size) for q in range(surface.size))
    return _csv_text(["x", "y", "phi"], rows)


def read_surface_csv(path) -> dict:
    """``{(x, y): phi}`` with coordinates as Decimal, for checking exports."""
    out = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out[(Decimal(row["x"]), Decimal(row["y"]))] = float(row["phi"])
    return out


def reconstruction_csv(rec: Reconstruction, functional: LinearFunctional) -> str:
    exact = rec.exact(functional)
    xs = [fmt_dyadic(v) for v in rec.x]
    ys = [fmt_dyadic(v) for v in rec.y]
    rows = []
    for p in range(len(rec.x)):
        for q in range(len(rec.y)):
            got, want = rec.values[p, q], exact[p, q]
            rows.append((xs[p], ys[q], fmt_float(got), fmt_float(want), fmt_float(got - want)))
    return _csv_text(["x", "y", "reconstructed", "exact", "error"], rows)


def feasibility_csv(c32s, c33s, cells) -> str:
    rows = ((fmt_float(a), fmt_float(b), "true" if cells[i, j] else "false")
            for i, a in enumerate(c32s) for j, b in enumerate(c33s))
    return _csv_text(["c32", "c33", "feasible"], rows)


def sidecar(path, suffix: str) -> Path:
    """``out.csv`` -> ``out.<suffix>.json``."""
    path = Path(path)
    return path.with_name(f"{path.stem}.{suffix}.json")
