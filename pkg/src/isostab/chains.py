"""Critical chains, line-transversal detection, and chain-overlap augmentation.

Each critical chain is the arc of a convex hull of specific segment endpoints
(right/bot, left/bot, left/top or right/top of every segment, where defined).
Any convex stabber's boundary must stay on the outer side of all four chains,
so they lower-bound the shape of every candidate polygon.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geom import (
    Point, Segment, Scalar, convex_hull, orient2d, CCW, CW, COLLINEAR,
    on_segment,
)
from .extremes import Role


class ChainId(enum.Enum):
    RB = "RB"   # right()/bot() points; bounds the upper-left boundary
    RT = "RT"   # right()/top(); bounds the lower-left
    LT = "LT"   # left()/top(); bounds the lower-right
    LB = "LB"   # left()/bot(); bounds the upper-right


# chain joining two cyclically-adjacent roles (CCW: T -> L -> B -> R -> T)
CHAIN_BETWEEN = {
    (Role.TOP, Role.LEFT): ChainId.RB,
    (Role.LEFT, Role.BOTTOM): ChainId.RT,
    (Role.BOTTOM, Role.RIGHT): ChainId.LT,
    (Role.RIGHT, Role.TOP): ChainId.LB,
}

# chains adjacent to each role: (incoming, outgoing) along CCW traversal
ROLE_CHAINS = {
    Role.TOP: (ChainId.LB, ChainId.RB),
    Role.LEFT: (ChainId.RB, ChainId.RT),
    Role.BOTTOM: (ChainId.RT, ChainId.LT),
    Role.RIGHT: (ChainId.LT, ChainId.LB),
}


@dataclass(frozen=True)
class CriticalChain:
    id: ChainId
    vertices: tuple[Point, ...]

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        v = self.vertices
        return [(v[i], v[i + 1]) for i in range(len(v) - 1)]

    def index_of(self, p: Point) -> Optional[int]:
        for i, v in enumerate(self.vertices):
            if v == p:
                return i
        return None


def chain_point_set(segments: Sequence[Segment], cid: ChainId) -> list[Point]:
    pts: list[Point] = []
    for s in segments:
        if s.is_horizontal:
            if cid in (ChainId.RB, ChainId.RT):
                pts.append(s.right())
            else:
                pts.append(s.left())
        else:
            if cid in (ChainId.RB, ChainId.LB):
                pts.append(s.bot())
            else:
                pts.append(s.top())
    return pts


def _extreme_index(hull: Sequence[Point], main, tie) -> int:
    best = 0
    for i in range(1, len(hull)):
        p, q = hull[i], hull[best]
        if main(p) > main(q) or (main(p) == main(q) and tie(p) > tie(q)):
            best = i
    return best


# per chain: (main key, tie key) for the arc start and end, chosen so the arc
# is the maximal run of hull edges facing the chain's outward quadrant
_ARC_RULES = {
    ChainId.RB: ((lambda p: p.y, lambda p: p.x), (lambda p: -p.x, lambda p: -p.y)),
    ChainId.LB: ((lambda p: p.x, lambda p: -p.y), (lambda p: p.y, lambda p: -p.x)),
    ChainId.LT: ((lambda p: -p.y, lambda p: -p.x), (lambda p: p.x, lambda p: p.y)),
    ChainId.RT: ((lambda p: -p.x, lambda p: p.y), (lambda p: -p.y, lambda p: p.x)),
}


def build_chain(segments: Sequence[Segment], cid: ChainId) -> CriticalChain:
    """Hull arc of the chain's point set between its two anchor extremes,
    in counterclockwise polygon order."""
    pts = chain_point_set(segments, cid)
    if not pts:
        return CriticalChain(cid, ())
    hull = convex_hull(pts)
    if len(hull) == 1:
        return CriticalChain(cid, (hull[0],))
    (smain, stie), (emain, etie) = _ARC_RULES[cid]
    if len(hull) == 2:
        start = _extreme_index(hull, smain, stie)
        end = _extreme_index(hull, emain, etie)
        if start == end:
            return CriticalChain(cid, (hull[start],))
        return CriticalChain(cid, (hull[start], hull[end]))
    start = _extreme_index(hull, smain, stie)
    end = _extreme_index(hull, emain, etie)
    arc = [hull[start]]
    i = start
    while i != end:
        i = (i + 1) % len(hull)
        arc.append(hull[i])
    return CriticalChain(cid, tuple(arc))


def build_all_chains(segments: Sequence[Segment]) -> dict[ChainId, CriticalChain]:
    return {cid: build_chain(segments, cid) for cid in ChainId}


def augment_chains_overlap(a: CriticalChain, b: CriticalChain) -> tuple[CriticalChain, CriticalChain]:
    """Insert into each chain the other chain's vertices that lie on it.

    When two adjacent chains overlap along a collinear run (which happens
    next to a synthetic extreme span), this makes the shared corner vertices
    available to both chains without changing either chain's shape.
    Idempotent; a no-op when the chains do not overlap.
    """
    def inject(host: CriticalChain, donor: CriticalChain) -> CriticalChain:
        verts = list(host.vertices)
        if len(verts) < 2:
            return host
        for q in donor.vertices:
            if q in verts:
                continue
            for i in range(len(verts) - 1):
                if on_segment(q, verts[i], verts[i + 1]):
                    verts.insert(i + 1, q)
                    break
        return CriticalChain(host.id, tuple(verts))

    return inject(a, b), inject(b, a)


# alias matching the degenerate-input terminology used around the solver
augment_chains_TI = augment_chains_overlap


@dataclass(frozen=True)
class StabLine:
    """A line transversal: y = a*x + b, or a vertical line x = c."""
    vertical: bool
    a: Scalar = Fraction(0)
    b: Scalar = Fraction(0)
    x: Scalar = Fraction(0)

    def stabs(self, s: Segment) -> bool:
        if self.vertical:
            if s.is_horizontal:
                return s.lo <= self.x <= s.hi
            return s.fixed == self.x
        p, q = s.endpoints()
        fp = p.y - self.a * p.x - self.b
        fq = q.y - self.a * q.x - self.b
        return (fp <= 0 <= fq) or (fq <= 0 <= fp)

    def __repr__(self):
        if self.vertical:
            return f"StabLine(x = {self.x})"
        return f"StabLine(y = {self.a}*x + {self.b})"


def _upper_hull(points: list[Point]) -> list[Point]:
    pts = sorted(set((p.x, p.y) for p in points))
    pts = [Point(x, y) for x, y in pts]
    if len(pts) <= 1:
        return pts
    upper: list[Point] = []
    for p in pts:
        while len(upper) >= 2 and \
                (upper[-1].x - upper[-2].x) * (p.y - upper[-2].y) - \
                (upper[-1].y - upper[-2].y) * (p.x - upper[-2].x) >= 0:
            upper.pop()
        upper.append(p)
    return upper


def _lower_hull(points: list[Point]) -> list[Point]:
    pts = sorted(set((p.x, p.y) for p in points))
    pts = [Point(x, y) for x, y in pts]
    if len(pts) <= 1:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and \
                (lower[-1].x - lower[-2].x) * (p.y - lower[-2].y) - \
                (lower[-1].y - lower[-2].y) * (p.x - lower[-2].x) <= 0:
            lower.pop()
        lower.append(p)
    return lower


def _sandwich_line(below: list[Point], above: list[Point]) -> Optional[tuple[Scalar, Scalar]]:
    """Exact feasibility of: all `below` weakly under y=ax+b, all `above`
    weakly over it.  Maximizes the concave gap U(a)-L(a) over the candidate
    breakpoint slopes of both envelopes (plus the unbounded tails)."""
    if not below or not above:
        return None

    def L(a: Scalar) -> Scalar:
        return max(p.y - a * p.x for p in below)

    def U(a: Scalar) -> Scalar:
        return min(p.y - a * p.x for p in above)

    bu = _upper_hull(below)      # active set of L as a varies
    al = _lower_hull(above)      # active set of U
    slopes: set[Scalar] = set()
    for hull in (bu, al):
        for i in range(len(hull) - 1):
            p, q = hull[i], hull[i + 1]
            if q.x != p.x:
                slopes.add(Fraction(q.y - p.y, 1) / (q.x - p.x))
    slopes.add(Fraction(0))
    cand = sorted(slopes)

    best_a = None
    best_g = None
    for a in cand:
        g = U(a) - L(a)
        if best_g is None or g > best_g:
            best_g, best_a = g, a
    if best_g is not None and best_g >= 0:
        a = best_a
        return a, (L(a) + U(a)) / 2

    # unbounded tails: gap slope settles to a constant beyond the extreme
    # breakpoints; if it points upward the strip opens up eventually
    lo_a, hi_a = cand[0], cand[-1]
    for a0, step in ((hi_a, Fraction(1)), (lo_a, Fraction(-1))):
        a1 = a0 + step
        g0 = U(a0) - L(a0)
        g1 = U(a1) - L(a1)
        slope = (g1 - g0) / step
        if slope * step > 0:
            # strictly improving outward; jump far enough to close the gap
            need = (-g1) / (slope * step)
            if need < 0:
                a = a1
            else:
                a = a1 + (need.__ceil__() + 1) * step
            if U(a) - L(a) >= 0:
                return a, (L(a) + U(a)) / 2
    return None


def detect_line_stabber(segments: Sequence[Segment]) -> Optional[StabLine]:
    """Return a line transversal of all segments, if one exists.

    Non-vertical transversals are characterized by sandwiching one pair of
    endpoint hulls (right/bot under the line with left/top above it, or the
    mirrored pair).  Vertical transversals are checked separately on the
    common x-span.
    """
    if not segments:
        return None
    s_rb = chain_point_set(segments, ChainId.RB)
    s_lt = chain_point_set(segments, ChainId.LT)
    s_lb = chain_point_set(segments, ChainId.LB)
    s_rt = chain_point_set(segments, ChainId.RT)

    got = _sandwich_line(s_rb, s_lt)
    if got is not None:
        line = StabLine(vertical=False, a=got[0], b=got[1])
        if all(line.stabs(s) for s in segments):
            return line
    got = _sandwich_line(s_lb, s_rt)
    if got is not None:
        line = StabLine(vertical=False, a=got[0], b=got[1])
        if all(line.stabs(s) for s in segments):
            return line

    xlo = max(s.lo if s.is_horizontal else s.fixed for s in segments)
    xhi = min(s.hi if s.is_horizontal else s.fixed for s in segments)
    if xlo <= xhi:
        xs = {s.fixed for s in segments if s.is_vertical}
        if len(xs) <= 1:
            x = next(iter(xs)) if xs else (xlo + xhi) / 2
            line = StabLine(vertical=True, x=x)
            if all(line.stabs(s) for s in segments):
                return line
    return None
