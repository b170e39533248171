"""Partitioning extreme segments into tangency-equivalence subintervals.

Extending each edge of an adjacent critical chain until it cuts the hosting
extreme segment splits the host into intervals; all polygon-edge endpoints
inside one interval share the same tangency vertex on that chain.  Supporting
lines of the other extreme segments add further cut points (these carry no
tangent information; they only enrich the set of candidate vertex positions).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .geom import Point, Scalar, orient2d, CCW, CW, COLLINEAR
from .extremes import Span, Role
from .chains import CriticalChain, ChainId, ROLE_CHAINS


class CutOrigin(enum.Enum):
    INITIAL = "initial"
    CHAIN_EDGE_EXTENSION = "chain_edge_extension"
    EXTREME_SEGMENT_CUT = "extreme_segment_cut"


@dataclass
class Interval:
    lo: Scalar                      # positions along the host axis (x for a
    hi: Scalar                      # horizontal host, y for a vertical one)
    tangent: dict[ChainId, Point] = field(default_factory=dict)
    origin: CutOrigin = CutOrigin.INITIAL

    def copy(self) -> "Interval":
        return Interval(self.lo, self.hi, dict(self.tangent), self.origin)


@dataclass
class IntervalPartition:
    host: Span
    intervals: list[Interval]

    @staticmethod
    def initial(host: Span) -> "IntervalPartition":
        return IntervalPartition(host, [Interval(host.lo, host.hi)])

    def boundaries(self) -> list[Scalar]:
        out = [self.intervals[0].lo]
        out.extend(iv.hi for iv in self.intervals)
        return out

    def locate(self, pos: Scalar) -> int:
        """Index of the interval containing pos (boundary points resolve to
        the interval starting there, except the final hi)."""
        for i, iv in enumerate(self.intervals):
            if iv.lo <= pos < iv.hi or (iv.hi == pos == self.host.hi):
                return i
        if pos == self.host.lo == self.host.hi:
            return 0
        raise ValueError(f"position {pos} outside host")

    def split_at(self, pos: Scalar, origin: CutOrigin) -> bool:
        """Insert a boundary at pos if strictly inside an interval.
        Returns True when a split actually happened (idempotent otherwise)."""
        for i, iv in enumerate(self.intervals):
            if iv.lo < pos < iv.hi:
                left = Interval(iv.lo, pos, dict(iv.tangent), iv.origin)
                right = Interval(pos, iv.hi, dict(iv.tangent), origin)
                self.intervals[i:i + 1] = [left, right]
                return True
        return False

    def set_tangent_all(self, cid: ChainId, p: Point) -> None:
        for iv in self.intervals:
            iv.tangent[cid] = p

    def set_tangent_from(self, pos: Scalar, toward_lo: bool, cid: ChainId, p: Point) -> None:
        """Assign tangent p to every interval on one side of pos (inclusive
        of the interval whose boundary is exactly pos on that side)."""
        for iv in self.intervals:
            if toward_lo:
                if iv.hi <= pos:
                    iv.tangent[cid] = p
            else:
                if iv.lo >= pos:
                    iv.tangent[cid] = p

    def tangent_at(self, pos: Scalar, cid: ChainId) -> Optional[Point]:
        iv = self.intervals[self.locate(pos)]
        return iv.tangent.get(cid)


def _host_line_cut(a: Point, b: Point, host: Span) -> Optional[Scalar]:
    """Position where the infinite line a-b cuts the host span, or None.
    Collinear overlap returns None (no single cut point)."""
    dx = b.x - a.x
    dy = b.y - a.y
    if host.is_horizontal:
        if dy == 0:
            return None
        t = (host.fixed - a.y) / dy
        x = a.x + t * dx
        return x if host.lo <= x <= host.hi else None
    else:
        if dx == 0:
            return None
        t = (host.fixed - a.x) / dx
        y = a.y + t * dy
        return y if host.lo <= y <= host.hi else None


def wrap_tangent_index(chain: CriticalChain, q: Point, incoming: bool) -> Optional[int]:
    """Vertex of the chain where a taut connection through q touches it.

    For an outgoing chain the polygon travels q -> vertex -> rest of chain;
    incoming is the mirror.  The tangent vertex keeps every chain vertex
    weakly on the polygon side (left of the directed edge).  Returns None
    when no vertex qualifies (q is on the wrong side of the chain).
    """
    verts = chain.vertices
    n = len(verts)
    if n == 0:
        return None
    if n == 1:
        return 0
    best = None
    for i, w in enumerate(verts):
        if w == q:
            ok = True  # q sits exactly on the chain vertex
        else:
            ok = True
            for v in verts:
                if v == w:
                    continue
                side = orient2d(q, w, v) if not incoming else orient2d(w, q, v)
                if side == CW:
                    ok = False
                    break
        if ok:
            if incoming:
                best = i          # prefer the latest qualifying vertex
            elif best is None:
                best = i          # outgoing: prefer the earliest
    return best


def set_intervals_by_chain(partition: IntervalPartition, chain: CriticalChain,
                           incoming: bool) -> None:
    """Cut the host by the extensions of the chain's edges and maintain the
    per-interval tangent vertex for that chain.

    Edges are processed in chain (counterclockwise) order starting from the
    first edge whose extension cuts the host interior; each cut assigns the
    edge's far endpoint as the tangent of everything on the advancing side.
    """
    host = partition.host
    verts = chain.vertices
    if len(verts) == 0:
        return
    if len(verts) == 1:
        partition.set_tangent_all(chain.id, verts[0])
        return

    edges = [(verts[i], verts[i + 1]) for i in range(len(verts) - 1)]
    cuts: list[tuple[int, Scalar]] = []
    for idx, (a, b) in enumerate(edges):
        pos = _host_line_cut(a, b, host)
        if pos is not None:
            cuts.append((idx, pos))

    first_interior = None
    for idx, pos in cuts:
        if host.lo < pos < host.hi:
            first_interior = idx
            break
    if first_interior is None:
        # no edge partitions the host: a single tangent serves every point
        mid = host.point_at((host.lo + host.hi) / 2)
        t = wrap_tangent_index(chain, mid, incoming)
        if t is not None:
            partition.set_tangent_all(chain.id, verts[t])
        return

    a0, _ = edges[first_interior]
    partition.set_tangent_all(chain.id, a0)

    lo_end = host.point_at(host.lo)
    hi_end = host.point_at(host.hi)
    for idx, pos in cuts:
        if idx < first_interior:
            continue
        a, b = edges[idx]
        # which side of the cut takes the new tangent b: the side whose
        # points q keep a weakly left of the taut edge through q and b
        if incoming:
            side_lo = orient2d(b, lo_end, a)
            side_hi = orient2d(b, hi_end, a)
        else:
            side_lo = orient2d(lo_end, b, a)
            side_hi = orient2d(hi_end, b, a)
        if side_lo == CCW and side_hi != CCW:
            toward_lo = True
        elif side_hi == CCW and side_lo != CCW:
            toward_lo = False
        elif side_lo == CCW and side_hi == CCW:
            # cut at a host endpoint: the whole host advances
            toward_lo = pos == host.hi
        else:
            continue
        if host.lo < pos < host.hi:
            partition.split_at(pos, CutOrigin.CHAIN_EDGE_EXTENSION)
        partition.set_tangent_from(pos, toward_lo, chain.id, b)


def set_intervals_by_extreme(partition: IntervalPartition, other: Span) -> bool:
    """Split the host where the other extreme segment's supporting line cuts
    its interior.  No tangent bookkeeping; returns True if a split happened."""
    host = partition.host
    if other.orient is host.orient:
        return False  # parallel supporting lines never cut (collinear skipped)
    pos = other.fixed
    if host.lo < pos < host.hi:
        return partition.split_at(pos, CutOrigin.EXTREME_SEGMENT_CUT)
    return False


def build_partition(host: Span, role: Role, chains: dict[ChainId, CriticalChain],
                    other_hosts: list[Span]) -> IntervalPartition:
    """Full partition of one extreme segment: cuts from both adjacent chains
    followed by the other extreme segments' supporting lines."""
    part = IntervalPartition.initial(host)
    incoming_id, outgoing_id = ROLE_CHAINS[role]
    set_intervals_by_chain(part, chains[incoming_id], incoming=True)
    set_intervals_by_chain(part, chains[outgoing_id], incoming=False)
    for other in other_hosts:
        if other.key() != host.key():
            set_intervals_by_extreme(part, other)
    return part
