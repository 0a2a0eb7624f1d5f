"""Deterministic CSV and SVG emission.

CSV rows use RFC-4180-style quoting with "\n" line endings; floats are
formatted with repr so identical inputs give byte-identical files.  SVG
output is hand-rolled SVG 1.1: polylines and simple path overlays, no
plotting dependency.
"""
from __future__ import annotations

import numpy as np


def _format_cell(value) -> str:
    if isinstance(value, (float, np.floating)):
        # np.float64 subclasses float but has a different repr; normalize
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    text = str(value)
    if any(ch in text for ch in (",", '"', "\n")):
        text = '"' + text.replace('"', '""') + '"'
    return text


def write_csv(path, header, rows) -> None:
    """Write a CSV file with one header line and `\n` line endings."""
    lines = [",".join(_format_cell(h) for h in header)]
    for row in rows:
        lines.append(",".join(_format_cell(c) for c in row))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


class SvgCanvas:
    """Minimal SVG 1.1 document: polylines, circles and raster cells on a
    fixed world-to-pixel affine map."""

    def __init__(self, width=640, height=640, world=(-2.0, 2.0, -2.0, 2.0)):
        self.width = int(width)
        self.height = int(height)
        self.world = tuple(float(w) for w in world)
        self.elements: list[str] = []

    def _pix(self, x: float, y: float) -> tuple[float, float]:
        x0, x1, y0, y1 = self.world
        px = (x - x0) / (x1 - x0) * self.width
        py = (y1 - y) / (y1 - y0) * self.height
        return px, py

    def polyline(self, points, stroke="black", width=1.0) -> None:
        coords = " ".join(
            f"{px:.3f},{py:.3f}" for px, py in (self._pix(x, y) for x, y in points)
        )
        self.elements.append(
            f'<polyline fill="none" stroke="{stroke}" stroke-width="{width}" '
            f'points="{coords}"/>'
        )

    def circle(self, center, radius_world, stroke="black", fill="none") -> None:
        cx, cy = self._pix(*center)
        x0, x1, _, _ = self.world
        r = radius_world / (x1 - x0) * self.width
        self.elements.append(
            f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{r:.3f}" '
            f'stroke="{stroke}" fill="{fill}"/>'
        )

    def dot(self, point, color="black", radius_px=1.5) -> None:
        px, py = self._pix(*point)
        self.elements.append(
            f'<circle cx="{px:.3f}" cy="{py:.3f}" r="{radius_px}" '
            f'stroke="none" fill="{color}"/>'
        )

    def cell(self, x, y, dx, dy, color) -> None:
        px, py = self._pix(x, y + dy)
        qx, qy = self._pix(x + dx, y)
        self.elements.append(
            f'<rect x="{px:.3f}" y="{py:.3f}" width="{qx - px:.3f}" '
            f'height="{qy - py:.3f}" fill="{color}" stroke="none"/>'
        )

    def save(self, path) -> None:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">\n'
        )
        body = "\n".join(self.elements)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(head + body + "\n</svg>\n")


GRAY_RAMP = ["#f7f7f7", "#cccccc", "#969696", "#636363", "#252525"]


def count_color(count: int) -> str:
    """Grayscale color for a small nonnegative integer count."""
    if count < 0:
        return "#ff0000"
    return GRAY_RAMP[min(count, len(GRAY_RAMP) - 1)]
