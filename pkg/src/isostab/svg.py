"""Deterministic SVG rendering of instances and results.

Input segments draw in black, critical chains in blue, interval boundaries as
tick marks, and the minimal polygon (or stabbing line) in red with an area
caption.  Output is a pure function of the inputs: same result, same bytes.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .geom import Point, Segment, Scalar, scalar_str
from .solver import SolveResult


def _fmt(v: Scalar) -> str:
    """Deterministic coordinate text: exact when short, else fixed 9 digits."""
    f = Fraction(v)
    if f.denominator == 1:
        return str(f.numerator)
    scaled = f * 10**9
    q = scaled.numerator // scaled.denominator
    s = f"{q / 10**9:.9f}".rstrip("0").rstrip(".")
    return s if s else "0"


class RenderError(ValueError):
    pass


def render_svg(segments: Sequence[Segment], result: SolveResult,
               width: int = 640) -> str:
    """SVG for a solved instance; rejected results cannot be rendered."""
    if result.status == "rejected":
        raise RenderError("rejected results have nothing to draw")
    xs: list[Scalar] = []
    ys: list[Scalar] = []
    for s in segments:
        (p, q) = s.endpoints()
        xs.extend([p.x, q.x])
        ys.extend([p.y, q.y])
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    spanx = maxx - minx or Fraction(1)
    spany = maxy - miny or Fraction(1)
    mx = spanx * Fraction(5, 100)
    my = spany * Fraction(5, 100)
    minx, maxx = minx - mx, maxx + mx
    miny, maxy = miny - my, maxy + my

    def X(v: Scalar) -> str:
        return _fmt(v)

    def Y(v: Scalar) -> str:
        # flip so the y axis points up in the image
        return _fmt(maxy + miny - v)

    sw = _fmt((spanx + spany) / 400)
    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'viewBox="{_fmt(minx)} {_fmt(miny)} {_fmt(maxx - minx)} {_fmt(maxy - miny)}">'
    )
    for s in segments:
        p, q = s.endpoints()
        out.append(f'<line x1="{X(p.x)}" y1="{Y(p.y)}" x2="{X(q.x)}" y2="{Y(q.y)}" '
                   f'stroke="black" stroke-width="{sw}"/>')
    if result.chains:
        for cid in sorted(result.chains, key=lambda c: c.value):
            ch = result.chains[cid]
            if len(ch.vertices) < 2:
                continue
            pts = " ".join(f"{X(v.x)},{Y(v.y)}" for v in ch.vertices)
            out.append(f'<polyline points="{pts}" fill="none" stroke="blue" '
                       f'stroke-width="{sw}" stroke-opacity="0.6"/>')
    if result.partitions:
        tick = (spanx + spany) / 160
        for role in sorted(result.partitions, key=lambda r: r.value):
            part = result.partitions[role]
            host = part.host
            for b in part.boundaries():
                p = host.point_at(b)
                if host.is_horizontal:
                    out.append(f'<line x1="{X(p.x)}" y1="{Y(p.y - tick)}" '
                               f'x2="{X(p.x)}" y2="{Y(p.y + tick)}" '
                               f'stroke="gray" stroke-width="{sw}"/>')
                else:
                    out.append(f'<line x1="{X(p.x - tick)}" y1="{Y(p.y)}" '
                               f'x2="{X(p.x + tick)}" y2="{Y(p.y)}" '
                               f'stroke="gray" stroke-width="{sw}"/>')
    if result.status == "line":
        line = result.line
        if line.vertical:
            p1 = Point(line.x, miny)
            p2 = Point(line.x, maxy)
        else:
            p1 = Point(minx, line.a * minx + line.b)
            p2 = Point(maxx, line.a * maxx + line.b)
        out.append(f'<line x1="{X(p1.x)}" y1="{Y(p1.y)}" x2="{X(p2.x)}" '
                   f'y2="{Y(p2.y)}" stroke="red" stroke-width="{sw}"/>')
        caption = "zero-area stabber: a line meets every segment"
    else:
        best = result.best
        d = "M " + " L ".join(f"{X(v.x)} {Y(v.y)}" for v in best.polygon.vertices) + " Z"
        out.append(f'<path d="{d}" fill="red" fill-opacity="0.12" stroke="red" '
                   f'stroke-width="{sw}"/>')
        caption = f"area = {scalar_str(best.area)}  config {best.family.value}:{best.code}"
    fs = _fmt((spanx + spany) / 50)
    out.append(f'<text x="{X(minx + mx)}" y="{Y(miny + my)}" font-size="{fs}" '
               f'fill="red">{caption}</text>')
    out.append("</svg>")
    return "\n".join(out)
