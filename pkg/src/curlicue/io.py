"""Deterministic CSV, JSON and SVG output."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, is_dataclass
from pathlib import Path

import numpy as np

from .core import Curlicue
from .curvature import CurvatureSeries

SCHEMA_VERSION = 1


def fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(float(x), ".17g")


# ---------------------------------------------------------------- JSON

def _plain(obj):
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: _plain(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    return obj


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, dict)) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _emit(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (pad + json.dumps(k) + ": " + _emit(v, indent, level + 1) for k, v in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with keys in insertion order and floats at 17 significant digits.

    Non-finite floats become ``null``.
    """
    return _emit(_plain(obj), indent, 0) + "\n"


def write_report(report: dict, path) -> None:
    doc = {"schema": SCHEMA_VERSION}
    doc.update(report)
    text = dumps(doc)
    if path is None or str(path) == "-":
        import sys

        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------- CSV

VERTEX_HEADER = ["n", "u", "z_re", "z_im", "diam"]


def write_vertices_csv(curve: Curlicue, path) -> None:
    """One row per vertex: ``n, u_n, Re z_n, Im z_n, Diam Gamma_n``.

    ``u`` is blank for the final vertex when the orbit is one point short.
    """
    u = curve.orbit.values if curve.orbit is not None else None
    diam = curve.diameters
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(VERTEX_HEADER)
        for k, zk in enumerate(curve.z.tolist()):
            uk = fmt(u[k]) if u is not None and k < len(u) else ""
            w.writerow([k, uk, fmt(zk.real), fmt(zk.imag), fmt(diam[k])])


def read_vertices_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(z, diam)`` from a vertex CSV."""
    zs, ds = [], []
    with open(path, newline="") as fh:
        r = csv.DictReader(fh)
        if r.fieldnames != VERTEX_HEADER:
            raise ValueError(f"unexpected header {r.fieldnames}")
        for row in r:
            zs.append(complex(float(row["z_re"]), float(row["z_im"])))
            ds.append(float(row["diam"]))
    return np.array(zs), np.array(ds)


def write_curvature_csv(series: CurvatureSeries, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "eta", "r"])
        for k, (e, r) in enumerate(zip(series.eta.tolist(), series.r.tolist()), start=1):
            w.writerow([k, fmt(e), fmt(r) if math.isfinite(r) else "inf"])


def write_section_csv(theta: np.ndarray, z: np.ndarray, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["theta", "z_re", "z_im"])
        for t, zk in zip(theta.tolist(), z.tolist()):
            w.writerow([fmt(t), fmt(zk.real), fmt(zk.imag)])


# ---------------------------------------------------------------- SVG

def svg_text(z: np.ndarray) -> str:
    """A single-polyline SVG of the points ``z`` (y axis pointing up)."""
    z = np.asarray(z, dtype=complex)
    if len(z) == 0:
        raise ValueError("nothing to draw")
    x, y = z.real, -z.imag
    xmin, xmax = float(x.min()), float(x.max())
    ymin, ymax = float(y.min()), float(y.max())
    w, h = xmax - xmin, ymax - ymin
    span = max(w, h) or 1.0
    # a degenerate (flat) extent borrows from the other axis so the box is never empty
    if w == 0:
        w = span
        xmin -= span / 2
    if h == 0:
        h = span
        ymin -= span / 2
    mx, my = 0.05 * w, 0.05 * h
    vx, vy, vw, vh = xmin - mx, ymin - my, w + 2 * mx, h + 2 * my
    stroke = 0.001 * math.hypot(vw, vh)
    pts = " ".join(f"{fmt(a)},{fmt(b)}" for a, b in zip(x.tolist(), y.tolist()))
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{fmt(vx)} {fmt(vy)} {fmt(vw)} {fmt(vh)}">\n'
        f'<polyline fill="none" stroke="black" stroke-width="{fmt(stroke)}" '
        f'stroke-linejoin="round" points="{pts}"/>\n'
        "</svg>\n"
    )


def render_svg(curve: Curlicue, path) -> None:
    Path(path).write_text(svg_text(curve.z))
