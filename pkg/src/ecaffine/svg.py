"""Orthographic SVG rendering of closed sphere traces."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NotClosed
from .trace import SphereTrace

__all__ = ["view_basis", "project", "emit_svg", "count_lobes"]

CLOSE_TOL = 1e-6


def view_basis(elevation: float = 90.0, azimuth: float = 0.0):
    """Unit view direction and screen axes for a camera at the given angles (degrees).

    ``elevation=90`` looks straight down the Killing axis.
    """
    el, az = math.radians(elevation), math.radians(azimuth)
    v = np.array([math.cos(el) * math.cos(az), math.cos(el) * math.sin(az), math.sin(el)])
    up = np.array([0.0, 0.0, 1.0]) if abs(v[2]) < 0.99 else np.array([-math.sin(az), math.cos(az), 0.0])
    e1 = np.cross(up, v)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(v, e1)
    return v, e1, e2


def project(x: np.ndarray, elevation: float = 90.0, azimuth: float = 0.0):
    """Screen coordinates and depth (positive towards the viewer)."""
    v, e1, e2 = view_basis(elevation, azimuth)
    return x @ e1, x @ e2, x @ v


def _runs(mask):
    # maximal runs of equal visibility, as (start, stop, visible)
    out = []
    start = 0
    for i in range(1, mask.size + 1):
        if i == mask.size or mask[i] != mask[start]:
            out.append((start, i, bool(mask[start])))
            start = i
    return out


def emit_svg(
    trace: SphereTrace,
    elevation: float = 90.0,
    azimuth: float = 0.0,
    size: int = 480,
    max_points: int = 4000,
) -> str:
    """SVG 1.1 document showing the trace on its sphere.

    Points on the far hemisphere are drawn dimmed and dashed. The output
    depends only on the inputs, so repeated calls are byte-identical.
    """
    R = trace.params.R
    if trace.closure_gap > CLOSE_TOL * R:
        raise NotClosed(f"closure gap {trace.closure_gap:.3e} exceeds {CLOSE_TOL} R")
    if size < 16:
        raise DomainError("size too small")
    stride = max(1, math.ceil(len(trace.x) / max_points))
    x = trace.x[::stride]
    if not np.array_equal(x[-1], trace.x[-1]):
        x = np.vstack([x, trace.x[-1]])
    u, w, depth = project(x, elevation, azimuth)
    half = 0.5 * size
    scale = 0.45 * size / R
    px = half + scale * u
    py = half - scale * w
    front = depth >= 0
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#ffffff"/>',
        f'<circle cx="{half:.3f}" cy="{half:.3f}" r="{scale * R:.3f}" fill="#f2f4f8" stroke="#8890a0" stroke-width="1"/>',
    ]
    for a, b, vis in _runs(front):
        # include the next point so consecutive runs join up
        stop = min(b + 1, px.size)
        pts = " ".join(f"{px[i]:.3f},{py[i]:.3f}" for i in range(a, stop))
        if vis:
            style = 'stroke="#1f3a93" stroke-width="1.6" fill="none"'
        else:
            style = 'stroke="#1f3a93" stroke-opacity="0.3" stroke-width="1" stroke-dasharray="3,2" fill="none"'
        parts.append(f'<polyline points="{pts}" {style}/>')
    p = trace.params
    parts.append(
        f'<text x="8" y="{size - 8}" font-family="monospace" font-size="11" fill="#404040">'
        f"R={p.R:.6g} C1={p.C1:.6g} C2={p.C2:.10g} q={trace.q}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def count_lobes(trace: SphereTrace) -> int:
    """Number of lobes the curve makes around its axis.

    Counts the excursions of the height along the axis above its mid-range
    level, treating the closed curve as cyclic. The distance from the axis is
    not used because it doubles up whenever the curve crosses the equator. A
    curve at constant height (a circle) has no lobes.
    """
    h = trace.x[:-1, 2]
    lo, hi = float(h.min()), float(h.max())
    if hi - lo <= 1e-9 * trace.params.R:
        return 0
    above = h > 0.5 * (lo + hi)
    # rising edges on the cyclic sequence
    return int(np.count_nonzero(above & ~np.roll(above, 1)))
