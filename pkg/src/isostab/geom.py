"""Exact 2-D primitives on rational coordinates.

Every predicate and construction in this module is exact: coordinates are
`fractions.Fraction` (or plain ints, which interoperate), and no tolerance
parameter exists anywhere.  All downstream modules rely on that.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Scalar = Fraction
ScalarLike = Union[Fraction, int]

CCW = 1
COLLINEAR = 0
CW = -1


def as_scalar(v) -> Fraction:
    """Coerce ints, Fractions and exact decimal/ratio strings to Fraction.

    Decimal strings are parsed as exact decimal fractions (never via float).
    """
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)  # handles "2.5", "-3", "7/3"
    if isinstance(v, float):
        raise TypeError("binary floats are not exact; pass str/int/Fraction")
    raise TypeError(f"cannot interpret {v!r} as an exact scalar")


def scalar_str(v: ScalarLike) -> str:
    """Render a rational exactly: terminating decimal when possible, else p/q."""
    v = as_scalar(v)
    num, den = v.numerator, v.denominator
    if den == 1:
        return str(num)
    d = den
    twos = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    fives = 0
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{num}/{den}"
    digits = max(twos, fives)
    scaled = num * 10**digits // den
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled)).rjust(digits + 1, "0")
    whole, frac = s[:-digits] if digits else s, s[len(s) - digits:] if digits else ""
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


@dataclass(frozen=True)
class Point:
    x: Scalar
    y: Scalar

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"Point({scalar_str(self.x)}, {scalar_str(self.y)})"

    def key(self):
        return (self.x, self.y)


def pt(x, y) -> Point:
    return Point(as_scalar(x), as_scalar(y))


class Orient(enum.Enum):
    H = "h"
    V = "v"


@dataclass(frozen=True)
class Segment:
    """An isothetic segment.

    `fixed` is the y of a horizontal segment / the x of a vertical one;
    `lo < hi` is the varying-coordinate range (zero length is rejected at
    ingestion, so `top/bot` and `left/right` are always well defined for the
    matching orientation).
    """
    orient: Orient
    fixed: Scalar
    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"segment range must satisfy lo < hi, got {self.lo} >= {self.hi}")

    @property
    def is_horizontal(self) -> bool:
        return self.orient is Orient.H

    @property
    def is_vertical(self) -> bool:
        return self.orient is Orient.V

    def left(self) -> Point:
        if not self.is_horizontal:
            raise ValueError("left() defined only for horizontal segments")
        return Point(self.lo, self.fixed)

    def right(self) -> Point:
        if not self.is_horizontal:
            raise ValueError("right() defined only for horizontal segments")
        return Point(self.hi, self.fixed)

    def top(self) -> Point:
        if not self.is_vertical:
            raise ValueError("top() defined only for vertical segments")
        return Point(self.fixed, self.hi)

    def bot(self) -> Point:
        if not self.is_vertical:
            raise ValueError("bot() defined only for vertical segments")
        return Point(self.fixed, self.lo)

    def endpoints(self) -> tuple[Point, Point]:
        if self.is_horizontal:
            return (self.left(), self.right())
        return (self.bot(), self.top())

    def contains_point(self, p: Point) -> bool:
        if self.is_horizontal:
            return p.y == self.fixed and self.lo <= p.x <= self.hi
        return p.x == self.fixed and self.lo <= p.y <= self.hi

    def __repr__(self):
        kind = "H" if self.is_horizontal else "V"
        return f"Segment({kind} {scalar_str(self.fixed)} [{scalar_str(self.lo)},{scalar_str(self.hi)}])"


def hseg(y, x1, x2) -> Segment:
    return Segment(Orient.H, as_scalar(y), as_scalar(x1), as_scalar(x2))


def vseg(x, y1, y2) -> Segment:
    return Segment(Orient.V, as_scalar(x), as_scalar(y1), as_scalar(y2))


def orient2d(a: Point, b: Point, c: Point) -> int:
    """Exact sign of the cross product (b-a) x (c-a): CCW=1, CW=-1, 0 collinear."""
    det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if det > 0:
        return CCW
    if det < 0:
        return CW
    return COLLINEAR


def cross(o: Point, a: Point, b: Point) -> Scalar:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def cross2(a: Point, b: Point) -> Scalar:
    """Shoelace term x_a*y_b - x_b*y_a."""
    return a.x * b.y - b.x * a.y


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment ab (all exact)."""
    if orient2d(a, b, p) != COLLINEAR:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed-segment intersection test; touching counts."""
    d1 = orient2d(c, d, a)
    d2 = orient2d(c, d, b)
    d3 = orient2d(a, b, c)
    d4 = orient2d(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
       ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and on_segment(a, c, d):
        return True
    if d2 == 0 and on_segment(b, c, d):
        return True
    if d3 == 0 and on_segment(c, a, b):
        return True
    if d4 == 0 and on_segment(d, a, b):
        return True
    return False


class CollinearOverlap(Exception):
    """Raised when a queried line is collinear with a segment's supporting line."""


def line_extension_intersect(p1: Point, p2: Point, s: Segment) -> Optional[Point]:
    """Intersection of the infinite line through p1,p2 with the closed segment s.

    Returns None when the line misses s or is parallel off its support;
    raises CollinearOverlap when the line coincides with s's supporting line
    (the caller decides what an overlap means).
    """
    if p1 == p2:
        raise ValueError("p1 and p2 must be distinct")
    dx = p2.x - p1.x
    dy = p2.y - p1.y
    if s.is_vertical:
        if dx == 0:
            if p1.x == s.fixed:
                raise CollinearOverlap()
            return None
        t = (s.fixed - p1.x) / dx
        y = p1.y + t * dy
        if s.lo <= y <= s.hi:
            return Point(s.fixed, y)
        return None
    else:
        if dy == 0:
            if p1.y == s.fixed:
                raise CollinearOverlap()
            return None
        t = (s.fixed - p1.y) / dy
        x = p1.x + t * dx
        if s.lo <= x <= s.hi:
            return Point(x, s.fixed)
        return None


class DegenerateHull(Exception):
    pass


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Monotone-chain hull, CCW, collinear interior points removed.

    Degenerate inputs (all collinear / coincident) return the reduced chain:
    one or two points.  Callers that need a proper polygon must check.
    """
    pts = sorted(set((p.x, p.y) for p in points))
    pts = [Point(x, y) for x, y in pts]
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        # every point collinear: keep the two extremes
        return [pts[0], pts[-1]]
    return hull


@dataclass(frozen=True)
class Polygon:
    """A strictly convex CCW polygon (canonical: no collinear triples,
    cycle rotated so the lexicographically smallest vertex comes first)."""
    vertices: tuple[Point, ...]

    @staticmethod
    def from_points(vertices: Sequence[Point], canonical: bool = True) -> "Polygon":
        vs = list(vertices)
        if canonical:
            vs = canonicalize_ring(vs)
        return Polygon(tuple(vs))

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        v = self.vertices
        n = len(v)
        for i in range(n):
            yield v[i], v[(i + 1) % n]

    def signed_area2(self) -> Scalar:
        v = self.vertices
        n = len(v)
        total = Fraction(0)
        for i in range(n):
            total += cross2(v[i], v[(i + 1) % n])
        return total

    def area(self) -> Scalar:
        return self.signed_area2() / 2

    def contains_point(self, p: Point) -> bool:
        """True iff p is inside or on the boundary (polygon must be convex CCW)."""
        for a, b in self.edges():
            if orient2d(a, b, p) == CW:
                return False
        return True

    def is_convex_ccw(self) -> bool:
        v = self.vertices
        n = len(v)
        if n < 3:
            return False
        for i in range(n):
            if orient2d(v[i], v[(i + 1) % n], v[(i + 2) % n]) != CCW:
                return False
        return True


def canonicalize_ring(vertices: Sequence[Point]) -> list[Point]:
    """Drop consecutive duplicates and collinear middles; rotate the cycle so
    the lexicographically smallest vertex starts the list."""
    vs = list(vertices)
    # drop consecutive duplicates (cyclically)
    out: list[Point] = []
    for p in vs:
        if not out or out[-1] != p:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    # drop collinear middles repeatedly (cyclically)
    changed = True
    while changed and len(out) >= 3:
        changed = False
        nxt: list[Point] = []
        n = len(out)
        for i in range(n):
            a, b, c = out[(i - 1) % n], out[i], out[(i + 1) % n]
            if orient2d(a, b, c) == COLLINEAR:
                changed = True
            else:
                nxt.append(b)
        out = nxt
    if not out:
        return []
    start = min(range(len(out)), key=lambda i: out[i].key())
    return out[start:] + out[:start]


def polygon_area(vertices: Sequence[Point]) -> Scalar:
    """Exact shoelace area of a vertex ring; 0 for degenerate (<3 distinct)."""
    vs = canonicalize_ring(vertices)
    if len(vs) < 3:
        return Fraction(0)
    return Polygon(tuple(vs)).area()


def segment_intersects_polygon(s: Segment, poly: Polygon) -> bool:
    """True iff s meets the convex CCW polygon (interior or boundary)."""
    a, b = s.endpoints()
    if poly.contains_point(a) or poly.contains_point(b):
        return True
    for p, q in poly.edges():
        if segments_intersect(a, b, p, q):
            return True
    return False


def segment_intersects_ring(s: Segment, vertices: Sequence[Point]) -> bool:
    """Stab test against a raw CCW vertex ring (no canonicalization needed)."""
    a, b = s.endpoints()
    inside_a = True
    inside_b = True
    n = len(vertices)
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        if p == q:
            continue
        sa = orient2d(p, q, a)
        sb = orient2d(p, q, b)
        if sa == CW:
            inside_a = False
        if sb == CW:
            inside_b = False
        if segments_intersect(a, b, p, q):
            return True
    return inside_a or inside_b


def rotate90(p: Point) -> Point:
    """Rotate a point 90 degrees counterclockwise about the origin."""
    return Point(-p.y, p.x)


def mirror_y(p: Point) -> Point:
    """Reflect a point across the y-axis."""
    return Point(-p.x, p.y)


def rotate_segment90(s: Segment) -> Segment:
    """Rotate a segment 90 degrees CCW: H y=c [a,b] -> V x=-c [a,b]."""
    if s.is_horizontal:
        return Segment(Orient.V, -s.fixed, s.lo, s.hi)
    return Segment(Orient.H, s.fixed, -s.hi, -s.lo)


def mirror_segment_y(s: Segment) -> Segment:
    if s.is_horizontal:
        return Segment(Orient.H, s.fixed, -s.hi, -s.lo)
    return Segment(Orient.V, -s.fixed, s.lo, s.hi)
