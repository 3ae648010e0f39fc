"""Deterministic SVG rendering of diagrams: the labeled 4g-gon with
identification arrows, curve chords, and crossing markers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .diagrams import CrownDiagram, LefschetzFibration
from .geometry import (
    NotInGeneralPosition,
    chart_vertices,
    curve_segments,
    intersections,
    side_letter,
)
from .words import code_str

PALETTE = ("#c0392b", "#2471a3", "#1e8449", "#b7950b", "#7d3c98",
           "#d35400", "#148f77", "#6c3483", "#a04000", "#1a5276")


@dataclass(frozen=True)
class RenderSpec:
    width: int = 800
    height: int = 800
    colors: tuple[str, ...] = PALETTE
    show_labels: bool = True
    show_crossings: bool = True
    highlight: tuple[str, ...] = ()


def _fmt(x: float) -> str:
    return f"{x:.6f}"


class _Canvas:
    def __init__(self, spec: RenderSpec):
        self.spec = spec
        self.parts: list[str] = []
        half = min(spec.width, spec.height) / 2
        self.scale = half * 0.82
        self.cx = spec.width / 2
        self.cy = spec.height / 2

    def pt(self, p) -> tuple[float, float]:
        return (self.cx + float(p[0]) * self.scale,
                self.cy - float(p[1]) * self.scale)

    def line(self, a, b, stroke, width="1.5", dash=None, cls=None):
        x1, y1 = self.pt(a)
        x2, y2 = self.pt(b)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        extra += f' class="{cls}"' if cls else ""
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="{width}"{extra} />')

    def circle(self, p, r, fill):
        x, y = self.pt(p)
        self.parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="{fill}" />')

    def text(self, p, s, size=14, fill="#333333", anchor="middle"):
        x, y = self.pt(p)
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}" fill="{fill}" '
            f'text-anchor="{anchor}" font-family="monospace">{s}</text>')


def render_svg(d: CrownDiagram | LefschetzFibration, spec: RenderSpec = RenderSpec()) -> str:
    """SVG of the diagram; identical input gives identical bytes."""
    chart = d.chart
    curves = d.curves if isinstance(d, CrownDiagram) else d.cycles
    cv = _Canvas(spec)
    verts = chart_vertices(chart.genus)
    n = len(verts)

    # polygon outline with per-side labels and orientation arrows
    for k in range(n):
        a, b = verts[k], verts[(k + 1) % n]
        cv.line(a, b, "#222222", "2")
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        if spec.show_labels:
            out = (mid[0] * Fraction(112, 100), mid[1] * Fraction(112, 100))
            cv.text(out, code_str(side_letter(k)), size=15)
        # arrow marker: from 45% to 55% of the side, pointing ccw
        p1 = (a[0] + (b[0] - a[0]) * Fraction(45, 100), a[1] + (b[1] - a[1]) * Fraction(45, 100))
        p2 = (a[0] + (b[0] - a[0]) * Fraction(55, 100), a[1] + (b[1] - a[1]) * Fraction(55, 100))
        cv.line(p1, p2, "#222222", "5")

    for idx, c in enumerate(curves):
        color = spec.colors[idx % len(spec.colors)]
        width = "3" if c.name in spec.highlight else "1.5"
        for seg in curve_segments(chart, c):
            cv.line(seg[0], seg[1], color, width)

    if spec.show_crossings:
        for i in range(len(curves)):
            for j in range(i + 1, len(curves)):
                try:
                    pts = intersections(chart, curves[i], curves[j])
                except NotInGeneralPosition:
                    continue
                for p in pts:
                    cv.circle(p, 3, "#111111")

    if spec.show_labels:
        for idx, c in enumerate(curves):
            color = spec.colors[idx % len(spec.colors)]
            y = Fraction(-92, 100) - Fraction(idx * 6, 100)
            cv.text((Fraction(-120, 100), y), c.name, size=13, fill=color, anchor="start")

    body = "\n".join(cv.parts)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
            f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">\n'
            f'<rect width="100%" height="100%" fill="#fdfdfd" />\n{body}\n</svg>\n')
