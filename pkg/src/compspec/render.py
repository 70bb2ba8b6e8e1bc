"""Deterministic SVG 1.1 rendering of spectral regions.

Identical reports produce identical bytes: all numbers are formatted
with a fixed precision and primitives are emitted in canonical order.
"""

from __future__ import annotations

import cmath
import math

from .spectrum import Disk, GeometricTail, Points, Spiral, SpectralRegion

__all__ = ["region_svg", "write_svg"]

_SIZE = 480
_HALF_SPAN = 1.6  # world units from center to edge

_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    f'width="{_SIZE}" height="{_SIZE}" '
    f'viewBox="0 0 {_SIZE} {_SIZE}">\n'
    '<!-- compspec spectral region; schema compspec/1 -->\n'
)


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _px(z: complex) -> tuple[str, str]:
    scale = _SIZE / (2.0 * _HALF_SPAN)
    return (_fmt(_SIZE / 2.0 + z.real * scale),
            _fmt(_SIZE / 2.0 - z.imag * scale))


def _px_len(r: float) -> str:
    return _fmt(r * _SIZE / (2.0 * _HALF_SPAN))


def region_svg(r: SpectralRegion, title: str = "spectrum") -> str:
    parts = [_HEADER, f"<title>{title}</title>\n"]
    cx, cy = _px(0.0 + 0.0j)
    parts.append(
        f'<circle cx="{cx}" cy="{cy}" r="{_px_len(1.0)}" fill="none" '
        'stroke="#bbbbbb" stroke-width="1" stroke-dasharray="4 3"/>\n')
    disks = sorted((p for p in r.primitives if isinstance(p, Disk)),
                   key=lambda d: -d.radius)
    spirals = sorted((p for p in r.primitives if isinstance(p, Spiral)),
                     key=lambda s: (s.a.real, s.a.imag))
    tails = sorted((p for p in r.primitives if isinstance(p, GeometricTail)),
                   key=lambda t: (t.base.real, t.base.imag))
    points = [p for p in r.primitives if isinstance(p, Points)]
    for d in disks:
        parts.append(
            f'<circle cx="{cx}" cy="{cy}" r="{_px_len(d.radius)}" '
            'fill="#4477aa" fill-opacity="0.45" stroke="#225588" '
            'stroke-width="1.5"/>\n')
    for sp in spirals:
        t_end = -math.log(1e-4) / sp.a.real
        steps = 600
        coords = []
        for k in range(steps + 1):
            z = cmath.exp(-sp.a * (t_end * k / steps))
            x, y = _px(z)
            coords.append(f"{x},{y}")
        parts.append(
            f'<polyline points="{" ".join(coords)}" fill="none" '
            'stroke="#aa3333" stroke-width="2"/>\n')
    for tl in tails:
        w = 1.0 + 0.0j
        while abs(w) > 1e-12:
            x, y = _px(w)
            parts.append(
                f'<rect x="{_fmt(float(x) - 3)}" y="{_fmt(float(y) - 3)}" '
                'width="6" height="6" fill="none" stroke="#338833" '
                'stroke-width="1.2"/>\n')
            if abs(tl.base) == 0.0:
                break
            w *= tl.base
        x, y = _px(0.0 + 0.0j)
        parts.append(
            f'<rect x="{_fmt(float(x) - 3)}" y="{_fmt(float(y) - 3)}" '
            'width="6" height="6" fill="none" stroke="#338833" '
            'stroke-width="1.2"/>\n')
    for pts in points:
        for v in pts.values:
            x, y = _px(v)
            parts.append(
                f'<circle cx="{x}" cy="{y}" r="3.5" fill="#222222"/>\n')
    parts.append("</svg>\n")
    return "".join(parts)


def write_svg(r: SpectralRegion, path: str, title: str = "spectrum") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(region_svg(r, title=title))
