"""Hand-rolled SVG emission for symbol-region figures.

No plotting dependency: figures are assembled from circles, polylines and
point clouds with fixed 6-decimal coordinate formatting, so identical
inputs produce byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import Arc, Segment

_W, _H = 640, 640
_MARGIN = 40.0


def _fmt(x: float) -> str:
    return f"{x:.6f}"


@dataclass
class SvgFigure:
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    elements: list = field(default_factory=list)

    def _map(self, x: float, y: float):
        sx = (_W - 2 * _MARGIN) / (self.xmax - self.xmin)
        sy = (_H - 2 * _MARGIN) / (self.ymax - self.ymin)
        s = min(sx, sy)
        cx = 0.5 * (self.xmin + self.xmax)
        cy = 0.5 * (self.ymin + self.ymax)
        return (_W / 2 + (x - cx) * s, _H / 2 - (y - cy) * s)

    def add_axes(self):
        x0, y0 = self._map(self.xmin, 0.0)
        x1, _ = self._map(self.xmax, 0.0)
        self.elements.append(
            f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
            f'y2="{_fmt(y0)}" stroke="#888888" stroke-width="1"/>')
        xv, yv0 = self._map(0.0, self.ymin)
        _, yv1 = self._map(0.0, self.ymax)
        self.elements.append(
            f'<line x1="{_fmt(xv)}" y1="{_fmt(yv0)}" x2="{_fmt(xv)}" '
            f'y2="{_fmt(yv1)}" stroke="#888888" stroke-width="1"/>')

    def add_points(self, zs, color: str, radius: float = 0.8):
        for z in zs:
            px, py = self._map(z.real, z.imag)
            self.elements.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="{_fmt(radius)}" '
                f'fill="{color}"/>')

    def add_circle(self, center: complex, radius: float, color: str,
                   width: float = 1.5):
        px, py = self._map(center.real, center.imag)
        pr, _ = self._map(center.real + radius, center.imag)
        self.elements.append(
            f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="{_fmt(pr - px)}" '
            f'fill="none" stroke="{color}" stroke-width="{width}"/>')

    def add_piece_outline(self, piece, color: str, width: float = 1.0):
        if isinstance(piece, Arc):
            n = max(16, int(piece.length * 64))
            pts = [piece.point_at(i / n) for i in range(n + 1)]
        elif isinstance(piece, Segment):
            pts = [piece.p0, piece.p1]
        else:
            raise TypeError(f"unknown piece {piece!r}")
        coords = " ".join(
            "{},{}".format(*map(_fmt, self._map(z.real, z.imag)))
            for z in pts)
        self.elements.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"/>')

    def add_legend(self, entries):
        y = _MARGIN / 2.0
        x = _MARGIN
        for label, color in entries:
            self.elements.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y - 8)}" width="12" '
                f'height="12" fill="{color}"/>')
            self.elements.append(
                f'<text x="{_fmt(x + 16)}" y="{_fmt(y + 2)}" '
                f'font-family="monospace" font-size="12">{label}</text>')
            x += 16.0 + 8.0 * len(label) + 24.0

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" '
                f'height="{_H}" viewBox="0 0 {_W} {_H}">\n'
                f'<rect width="{_W}" height="{_H}" fill="white"/>\n')
        return head + "\n".join(self.elements) + "\n</svg>\n"


def bounds_for(points, radius: float) -> tuple:
    xs = [z.real for z in points] + [radius, -radius]
    ys = [z.imag for z in points] + [radius, -radius]
    pad = 0.1 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    return (min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad)
