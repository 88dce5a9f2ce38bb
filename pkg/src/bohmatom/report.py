"""Deterministic CSV, JSON and SVG output.

Floats serialize with Python's shortest round-trip repr, so parsing an
emitted file reproduces the in-memory doubles bit-exactly and diffs are
stable across platforms.  The SVG writer is deliberately bespoke: output
bytes depend only on the input data.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ProjectionError
from .trajectories import Trajectory

SCHEMA_VERSION = 1

__all__ = [
    "SCHEMA_VERSION",
    "fmt",
    "simple_csv",
    "trajectory_csv",
    "parse_trajectory_csv",
    "json_document",
    "FieldSlice",
    "emit_svg",
]


def fmt(x: float) -> str:
    """Shortest decimal that round-trips to the same double."""
    return repr(float(x))


def simple_csv(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


# Column order is part of the file contract.
TRAJECTORY_COLUMNS = ("t", "x", "y", "z", "vx", "vy", "vz")


def trajectory_csv(traj: Trajectory) -> str:
    rows = []
    for s in traj.samples:
        x, y, z = s.position.to_cartesian()
        rows.append((s.t, x, y, z) + s.velocity.components)
    return simple_csv(TRAJECTORY_COLUMNS, rows)


def parse_trajectory_csv(text: str) -> list[tuple[float, ...]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != ",".join(TRAJECTORY_COLUMNS):
        raise ValueError("not a trajectory CSV (header mismatch)")
    return [tuple(float(v) for v in ln.split(",")) for ln in lines[1:]]


def json_document(command: str, spec: dict, results) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "spec": {"command": command, **spec}, "results": results}
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


@dataclass(frozen=True)
class FieldSlice:
    """A 1D slice of a field quantity, ready to plot."""

    label: str
    xlabel: str
    ylabel: str
    x: tuple[float, ...]
    y: tuple[float, ...]


# --- SVG ---------------------------------------------------------------------

_W, _H, _MARGIN = 640, 480, 60.0


def emit_svg(obj) -> str:
    """Standalone SVG 1.1 document for a trajectory or a field slice.

    Trajectories must be planar (constant z) and non-empty; the drawing is
    the (x, y) polyline with equal axis scales.  Field slices draw the
    sampled curve.  Byte-deterministic for fixed input.
    """
    if isinstance(obj, Trajectory):
        if not obj.samples:
            raise ProjectionError("empty trajectory cannot be projected")
        pts = [s.position.to_cartesian() for s in obj.samples]
        zs = [p[2] for p in pts]
        scale = max(max(abs(p[0]) for p in pts), max(abs(p[1]) for p in pts), 1e-30)
        if max(zs) - min(zs) > 1e-9 * scale:
            raise ProjectionError("trajectory is not planar (z varies)")
        qn = obj.qn
        label = f"n={qn.n} l={qn.l} j={_frac(qn.j)} m={_frac(qn.m)}"
        return _svg_canvas(
            [(label, [p[0] for p in pts], [p[1] for p in pts])],
            xlabel="x (a)",
            ylabel="y (a)",
            square=True,
        )
    if isinstance(obj, FieldSlice):
        if not obj.x:
            raise ProjectionError("empty field slice cannot be drawn")
        return _svg_canvas(
            [(obj.label, list(obj.x), list(obj.y))],
            xlabel=obj.xlabel,
            ylabel=obj.ylabel,
            square=False,
        )
    raise ProjectionError(f"cannot render {type(obj).__name__} as SVG")


def _frac(x: float) -> str:
    two = round(2 * x)
    return f"{two}/2" if two % 2 else str(two // 2)


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _pad_range(lo: float, hi: float) -> tuple[float, float]:
    if hi - lo < 1e-12 * max(abs(lo), abs(hi), 1.0):
        pad = max(abs(lo), 1.0) * 0.1
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def _svg_canvas(curves, xlabel: str, ylabel: str, square: bool) -> str:
    width = _H if square else _W
    height = _H
    xs_all = [v for _, xs, _ in curves for v in xs]
    ys_all = [v for _, _, ys in curves for v in ys]
    xlo, xhi = _pad_range(min(xs_all), max(xs_all))
    ylo, yhi = _pad_range(min(ys_all), max(ys_all))
    if square:
        half = max(xhi - xlo, yhi - ylo) / 2.0
        xc, yc = (xlo + xhi) / 2.0, (ylo + yhi) / 2.0
        xlo, xhi = xc - half, xc + half
        ylo, yhi = yc - half, yc + half

    px_w = width - 2.0 * _MARGIN
    px_h = height - 2.0 * _MARGIN

    def to_px(x: float, y: float) -> tuple[float, float]:
        return (
            _MARGIN + (x - xlo) / (xhi - xlo) * px_w,
            height - _MARGIN - (y - ylo) / (yhi - ylo) * px_h,
        )

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        # axes
        f'<line x1="{_MARGIN}" y1="{height - _MARGIN}" x2="{width - _MARGIN}" '
        f'y2="{height - _MARGIN}" stroke="black" stroke-width="1"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{height - _MARGIN}" stroke="black" stroke-width="1"/>',
    ]
    for tx in _ticks(xlo, xhi):
        px, _ = to_px(tx, ylo)
        parts.append(
            f'<line x1="{px:.2f}" y1="{height - _MARGIN}" x2="{px:.2f}" '
            f'y2="{height - _MARGIN + 5}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{height - _MARGIN + 18}" font-size="10" '
            f'text-anchor="middle">{tx:.6g}</text>'
        )
    for ty in _ticks(ylo, yhi):
        _, py = to_px(xlo, ty)
        parts.append(
            f'<line x1="{_MARGIN - 5}" y1="{py:.2f}" x2="{_MARGIN}" '
            f'y2="{py:.2f}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN - 8}" y="{py + 3:.2f}" font-size="10" '
            f'text-anchor="end">{ty:.6g}</text>'
        )
    parts.append(
        f'<text x="{width / 2:.2f}" y="{height - 15}" font-size="12" '
        f'text-anchor="middle">{xlabel}</text>'
    )
    parts.append(
        f'<text x="18" y="{height / 2:.2f}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 18 {height / 2:.2f})">{ylabel}</text>'
    )

    colors = ("#1f6fb2", "#b23a1f", "#2a7d2a", "#7d2a7d")
    for idx, (label, xs, ys) in enumerate(curves):
        pix = [to_px(x, y) for x, y in zip(xs, ys)]
        points = " ".join(f"{x:.3f},{y:.3f}" for x, y in pix)
        color = colors[idx % len(colors)]
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{width - _MARGIN:.2f}" y="{_MARGIN - 10 + 14 * idx:.2f}" '
            f'font-size="12" text-anchor="end" fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
