"""Classifying candidate connections between extreme vertices.

A connection joins two extreme vertices and is a single clear edge (type 0),
a single edge tangent to the underlying chain at one vertex (type 1), or a
multi-edge path that follows part of a chain (type 2).  Connections that skip
extreme segments ("bypass") must additionally touch or enclose every skipped
segment, and may cross a chain only at the terminal edge next to the skipped
segment; everything here is an exact predicate.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .geom import (
    Point, Segment, orient2d, segments_intersect, on_segment,
    CCW, CW, COLLINEAR,
)
from .extremes import Span
from .chains import CriticalChain


class ConnectionType(enum.Enum):
    CASE0 = 0
    CASE1 = 1
    CASE2 = 2


@dataclass(frozen=True)
class ConnectionSpec:
    ctype: ConnectionType
    frm: str                      # role id of the starting extreme vertex
    to: str
    a: Point
    b: Point
    via: tuple[Point, ...]        # chain contacts, in chain order
    bypassed: frozenset[str] = frozenset()

    def __post_init__(self):
        if len(self.bypassed) > 2:
            raise ValueError("a connection cannot bypass three extreme segments")
        if self.ctype is ConnectionType.CASE0 and self.via:
            raise ValueError("type-0 connections carry no via points")
        if self.ctype is ConnectionType.CASE1 and len(self.via) != 1:
            raise ValueError("type-1 connections carry exactly one via point")
        if self.ctype is ConnectionType.CASE2 and not self.via:
            raise ValueError("type-2 connections need at least one via point")


BypassArg = Union[Span, Segment, Sequence[Union[Span, Segment]], None]


def _as_span_list(bypassed: BypassArg) -> list[Span]:
    if bypassed is None:
        return []
    if isinstance(bypassed, Span):
        return [bypassed]
    if isinstance(bypassed, Segment):
        return [Span.of_segment(bypassed)]
    return [b if isinstance(b, Span) else Span.of_segment(b) for b in bypassed]


def _span_touched(a: Point, b: Point, w: Span) -> bool:
    p, q = w.endpoints()
    if p == q:
        return on_segment(p, a, b)
    return segments_intersect(a, b, p, q)


def _span_contained_left(a: Point, b: Point, w: Span) -> bool:
    p, q = w.endpoints()
    return orient2d(a, b, p) != CW and orient2d(a, b, q) != CW


def _edge_chain_contact_ok(a: Point, b: Point, chain: CriticalChain,
                           allowed_edges: frozenset[int],
                           allowed_points: tuple[Point, ...],
                           check_sides: bool = True) -> bool:
    """True iff the segment ab touches the chain only on allowed edges or at
    allowed points; with check_sides, additionally no disallowed chain vertex
    may be cut off to the outer (right) side of the directed edge a->b."""
    verts = chain.vertices
    n = len(verts)
    if n == 0:
        return True
    if n == 1:
        v = verts[0]
        return (not on_segment(v, a, b)) or v in allowed_points or v == a or v == b
    exempt_vertices = set()
    for e in allowed_edges:
        exempt_vertices.add(e)
        exempt_vertices.add(e + 1)
    for i in range(n - 1):
        p, q = verts[i], verts[i + 1]
        if not segments_intersect(a, b, p, q):
            continue
        if i in allowed_edges:
            continue
        # contact on a disallowed edge is legal only at an allowed point
        collinear = orient2d(a, b, p) == COLLINEAR and orient2d(a, b, q) == COLLINEAR
        if collinear:
            return False
        ok = False
        for ap in allowed_points:
            if on_segment(ap, p, q) and on_segment(ap, a, b):
                # the unique crossing point must be exactly ap
                others = [x for x in (p, q) if on_segment(x, a, b) and x != ap]
                if not others:
                    ok = True
                break
        if not ok:
            return False
    if check_sides:
        for i, v in enumerate(verts):
            if i in exempt_vertices:
                continue
            if orient2d(a, b, v) == CW:
                return False
    return True


def _first_last_allowance(chains: Sequence[CriticalChain],
                          has_bypass: bool) -> list[frozenset[int]]:
    """Chain edges a bypassing connection may cross: the terminal edge next
    to each skipped extreme segment (no allowance without a bypass)."""
    out = []
    k = len(chains)
    for idx, ch in enumerate(chains):
        n_edges = max(0, len(ch.vertices) - 1)
        allowed: set[int] = set()
        if has_bypass and n_edges > 0:
            if idx < k - 1:
                allowed.add(n_edges - 1)   # far terminal, next to a skipped segment
            if idx > 0:
                allowed.add(0)             # near terminal of a later chain
        out.append(frozenset(allowed))
    return out


def is_case0(a: Point, b: Point, chain: CriticalChain) -> bool:
    """Single edge with no chain contact at all."""
    return _edge_chain_contact_ok(a, b, chain, frozenset(), ())


def is_case0_comm_endpoint(a: Point, b: Point, chain: CriticalChain,
                           shared: Point) -> bool:
    """Like is_case0 but the shared vertex of two adjacent clear connections
    may itself sit on the chain."""
    if shared != a and shared != b:
        return is_case0(a, b, chain)
    return _edge_chain_contact_ok(a, b, chain, frozenset(), (shared,))


def is_case0_bypass(a: Point, b: Point, bypassed: BypassArg,
                    chains: Sequence[CriticalChain],
                    shared: Optional[Point] = None) -> bool:
    """Clear edge joining vertices across skipped extreme segments.

    Each skipped segment must be touched by the edge or lie weakly on its
    interior (left) side; the edge must stay off the involved chains except
    for the terminal chain edge next to a skipped segment (and the optional
    shared endpoint)."""
    spans = _as_span_list(bypassed)
    for w in spans:
        if not (_span_touched(a, b, w) or _span_contained_left(a, b, w)):
            return False
    allowed_pts = (shared,) if shared is not None else ()
    allowances = _first_last_allowance(chains, bool(spans))
    for ch, allowed in zip(chains, allowances):
        if not _edge_chain_contact_ok(a, b, ch, allowed, allowed_pts):
            return False
    return True


def is_case0_bypass_comm_endpoint(a: Point, b: Point, bypassed: BypassArg,
                                  chains: Sequence[CriticalChain],
                                  shared: Point) -> bool:
    return is_case0_bypass(a, b, bypassed, chains, shared=shared)


def is_case1_bypass(a: Point, b: Point, pivot: Point, bypassed: BypassArg,
                    chains: Sequence[CriticalChain]) -> bool:
    """Single edge through a chain vertex at which it is tangent.

    a, pivot, b must be collinear (precondition); tangency requires both
    chain neighbours of the pivot weakly on the interior side.  With skipped
    segments the same contact-or-containment rule as the clear bypass holds.
    """
    if orient2d(a, pivot, b) != COLLINEAR:
        raise ValueError("a, pivot, b must be collinear")
    if not on_segment(pivot, a, b):
        return False
    home = None
    pidx = None
    for ch in chains:
        idx = ch.index_of(pivot)
        if idx is not None:
            home, pidx = ch, idx
            break
    if home is None:
        return False
    for nb in (pidx - 1, pidx + 1):
        if 0 <= nb < len(home.vertices):
            if orient2d(a, b, home.vertices[nb]) == CW:
                return False
    spans = _as_span_list(bypassed)
    for w in spans:
        if not (_span_touched(a, b, w) or _span_contained_left(a, b, w)):
            return False
    allowances = _first_last_allowance(chains, bool(spans))
    for ch, allowed in zip(chains, allowances):
        if not _edge_chain_contact_ok(a, b, ch, allowed, (pivot,)):
            return False
    return True


def _concat_chain_vertices(chains: Sequence[CriticalChain]) -> list[Point]:
    out: list[Point] = []
    for ch in chains:
        for v in ch.vertices:
            if not out or out[-1] != v:
                out.append(v)
    return out


def is_case2_bypass(spec: ConnectionSpec, bypassed: BypassArg,
                    chains: Sequence[CriticalChain]) -> bool:
    """Multi-edge connection: entry edge, a contiguous chain run, exit edge.

    The run must be a contiguous subsequence of the involved chains in
    forward order (precondition), the whole path convex and tangentially
    supported at its terminal contacts, with the usual skip containment.
    """
    if not spec.via:
        raise ValueError("type-2 connection requires via points")
    seq = _concat_chain_vertices(chains)
    via = list(spec.via)
    start = None
    for i in range(len(seq) - len(via) + 1):
        if seq[i:i + len(via)] == via:
            start = i
            break
    if start is None:
        rev = via[::-1]
        for i in range(len(seq) - len(rev) + 1):
            if seq[i:i + len(rev)] == rev:
                return False            # contiguous but traversed backwards
        raise ValueError("via points are not a contiguous chain run")
    path = [spec.a] + via + [spec.b]
    for i in range(len(path) - 2):
        if orient2d(path[i], path[i + 1], path[i + 2]) == CW:
            return False
    # tangential support just outside the run
    if start - 1 >= 0:
        if orient2d(spec.a, via[0], seq[start - 1]) == CW:
            return False
    after = start + len(via)
    if after < len(seq):
        if orient2d(via[-1], spec.b, seq[after]) == CW:
            return False
    spans = _as_span_list(bypassed)
    edges = list(zip(path[:-1], path[1:]))
    for w in spans:
        touched = any(_span_touched(p, q, w) for p, q in edges)
        contained = all(_span_contained_left(p, q, w) for p, q in edges)
        if not (touched or contained):
            return False
    via_set = set(via)
    for v in seq:
        if v in via_set:
            continue
        for p, q in edges:
            if orient2d(p, q, v) == CW and not on_segment(v, p, q):
                # a chain vertex strictly cut off by the path
                if not _vertex_cutoff_allowed(v, chains, spans):
                    return False
    return True


def _vertex_cutoff_allowed(v: Point, chains: Sequence[CriticalChain],
                           spans: list[Span]) -> bool:
    """Only terminal chain vertices sitting on a skipped segment may end up
    outside a bypassing path."""
    if not spans:
        return False
    for ch in chains:
        if len(ch.vertices) == 0:
            continue
        if v == ch.vertices[0] or v == ch.vertices[-1]:
            if any(w.contains_point(v) for w in spans):
                return True
    return False


def classify_edge(a: Point, b: Point, chain: CriticalChain) -> Optional[ConnectionType]:
    """Exclusive verdict of a single straight edge against one chain:
    clear (0), tangent at one vertex (1), or None when it cuts the chain."""
    if is_case0(a, b, chain):
        return ConnectionType.CASE0
    contacts = [v for v in chain.vertices if on_segment(v, a, b)]
    if len(contacts) == 1:
        try:
            if is_case1_bypass(a, b, contacts[0], None, [chain]):
                return ConnectionType.CASE1
        except ValueError:
            pass
    return None
