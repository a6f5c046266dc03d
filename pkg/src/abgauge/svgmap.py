"""Deterministic SVG arrow maps of vector fields in the z = const plane.

Output is static markup with all coordinates printed at fixed precision, so
identical inputs produce byte-identical files.  Each arrow element carries
the world coordinates and field magnitude it encodes as data attributes.
"""

from __future__ import annotations

import math
from pathlib import Path

from .analytic_fields import FieldExpr, SolenoidSpec
from .errors import DomainViolation

_CANVAS = 480.0


def _fmt(v: float) -> str:
    out = f"{v:.6f}"
    return "0.000000" if out == "-0.000000" else out


def emit_field_map(field: FieldExpr, window, resolution, out_path,
                   solenoid: SolenoidSpec = None, z_plane: float = 0.0) -> Path:
    """Render an arrow map of the field over a rectangular window.

    window is (xmin, xmax, ymin, ymax); resolution an int or (nx, ny) cell
    count.  Grid cells whose center leaves the field's valid domain are
    masked (no arrow).  When a solenoid is given its cross-section circle is
    drawn.  Returns the written path.
    """
    xmin, xmax, ymin, ymax = (float(v) for v in window)
    if xmax <= xmin or ymax <= ymin:
        raise DomainViolation("window must have positive extent")
    if isinstance(resolution, int):
        nx = ny = resolution
    else:
        nx, ny = resolution
    if nx < 2 or ny < 2:
        raise DomainViolation("resolution must be at least 2 cells per axis")

    width = _CANVAS
    height = _CANVAS * (ymax - ymin) / (xmax - xmin)
    sx = width / (xmax - xmin)
    sy = height / (ymax - ymin)

    def to_px(x, y):
        return (x - xmin) * sx, (ymax - y) * sy

    cell_px = min(width / nx, height / ny)
    centers = []
    for j in range(ny):
        cy = ymin + (j + 0.5) * (ymax - ymin) / ny
        for i in range(nx):
            cx = xmin + (i + 0.5) * (xmax - xmin) / nx
            centers.append((cx, cy))

    samples = []
    max_mag = 0.0
    for cx, cy in centers:
        p = (cx, cy, z_plane)
        if not field.domain_ok(p):
            samples.append(None)
            continue
        vec = field(p)
        mag = math.hypot(float(vec[0]), float(vec[1]))
        samples.append((cx, cy, float(vec[0]), float(vec[1]), mag))
        max_mag = max(max_mag, mag)

    scale = (0.45 * cell_px / max_mag) if max_mag > 0 else 1.0

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" '
        'fill="white"/>',
    ]
    if solenoid is not None:
        ox, oy = to_px(0.0, 0.0)
        parts.append(
            f'<circle cx="{_fmt(ox)}" cy="{_fmt(oy)}" r="{_fmt(solenoid.R * sx)}" '
            'fill="none" stroke="#888888" stroke-width="1.5"/>')

    for entry in samples:
        if entry is None:
            continue
        cx, cy, vx, vy, mag = entry
        px, py = to_px(cx, cy)
        # Screen y grows downward, so the y component flips.
        dx = vx * scale
        dy = -vy * scale
        x1, y1 = px - 0.5 * dx, py - 0.5 * dy
        x2, y2 = px + 0.5 * dx, py + 0.5 * dy
        parts.append(
            f'<line class="arrow" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="#1f4e8c" stroke-width="1.0" '
            f'data-cx="{_fmt(cx)}" data-cy="{_fmt(cy)}" data-mag="{_fmt(mag)}"/>')
        length = math.hypot(dx, dy)
        if length > 1e-6:
            ux, uy = dx / length, dy / length
            head = min(4.0, 0.35 * length)
            hx, hy = x2 - head * ux, y2 - head * uy
            nx_, ny_ = -uy, ux
            parts.append(
                '<polygon class="arrowhead" points="'
                f'{_fmt(x2)},{_fmt(y2)} '
                f'{_fmt(hx + 0.4 * head * nx_)},{_fmt(hy + 0.4 * head * ny_)} '
                f'{_fmt(hx - 0.4 * head * nx_)},{_fmt(hy - 0.4 * head * ny_)}" '
                'fill="#1f4e8c"/>')

    parts.append('</svg>')
    out = Path(out_path)
    out.write_text("\n".join(parts) + "\n", encoding="utf-8")
    return out
