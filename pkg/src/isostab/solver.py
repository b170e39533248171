"""Top-level minimum-area stabber search.

Pipeline: resolve extreme segments, reject inputs with fewer than three of
them, detect a zero-area line transversal, build the four critical chains and
interval partitions, then search candidate polygons over every connection
configuration.  Candidate vertices live on the extreme segments; connections
between them are clear edges, tangent edges through a chain vertex, or taut
runs along a chain.  The per-configuration search space is the product of
interval choices with a small exact candidate menu per vertex; a final
coordinate-descent polish makes the output locally optimal under single
vertex slides.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .geom import (
    Point, Segment, Polygon, Scalar, orient2d, cross2, on_segment,
    convex_hull, CCW, CW, COLLINEAR,
    canonicalize_ring, segment_intersects_ring,
)
from .extremes import (
    Role, ROLE_CYCLE, Span, ExtremeSet, Provenance,
    find_extremes, count_distinct_extremes,
)
from .chains import (
    ChainId, CriticalChain, CHAIN_BETWEEN, ROLE_CHAINS,
    build_all_chains, augment_chains_overlap, detect_line_stabber, StabLine,
)
from .intervals import IntervalPartition, build_partition, set_intervals_by_chain
from .connections import (
    ConnectionType, ConnectionSpec,
    _edge_chain_contact_ok, _span_touched, _span_contained_left,
    _first_last_allowance,
)
from .configurations import Family, canonical_code


class Reason(enum.Enum):
    EMPTY_INPUT = "EmptyInput"
    TOO_FEW_EXTREMES = "TooFewExtremes"


@dataclass(frozen=True)
class Rejection:
    reason: Reason


@dataclass(frozen=True)
class VertexPlacement:
    roles: tuple[Role, ...]
    host: Span
    interval_index: int
    t: Scalar                 # position within the interval, 0..1
    point: Point


@dataclass(frozen=True)
class CandidatePolygon:
    polygon: Polygon
    area: Scalar
    family: Family
    code: str
    canonical: str
    bypassed: tuple[Role, ...]
    assignment: tuple[VertexPlacement, ...]
    connections: tuple[ConnectionSpec, ...]


@dataclass
class SolveResult:
    status: str                       # "line" | "rejected" | "polygon"
    line: Optional[StabLine] = None
    rejection: Optional[Rejection] = None
    best: Optional[CandidatePolygon] = None
    enumeration_area: Optional[Scalar] = None   # minimum before the polish step
    extremes: Optional[ExtremeSet] = None
    chains: Optional[dict] = None
    partitions: Optional[dict] = None


# ---------------------------------------------------------------------------
# preparation: stations, chains, partitions, slots


@dataclass(frozen=True)
class Position:
    coord: Scalar
    point: Point
    host_end: bool


@dataclass
class Station:
    idx: int
    roles: tuple[Role, ...]
    host: Span
    partition: Optional[IntervalPartition] = None
    positions: list[Position] = field(default_factory=list)

    @property
    def first_role(self) -> Role:
        return self.roles[0]

    @property
    def last_role(self) -> Role:
        return self.roles[-1]


@dataclass
class SlotGeom:
    frm: int
    to: int
    frm_role: Role
    to_role: Role
    chain_ids: tuple[ChainId, ...]
    chains: tuple[CriticalChain, ...]
    bypassed_roles: tuple[Role, ...]
    bypassed: tuple[Span, ...]
    closed: bool                       # obstacle is a closed hull (bypass slot)
    obstacle: tuple[Point, ...]
    prefix: list[Scalar] = field(default_factory=list)

    def arc_cost(self, i: int, j: int) -> Scalar:
        if not self.closed:
            return self.prefix[j] - self.prefix[i]
        n = len(self.obstacle)
        if j < i:
            j += n
        return self.prefix[j] - self.prefix[i]

    def arc_vertices(self, i: int, j: int) -> tuple[Point, ...]:
        if not self.closed:
            return self.obstacle[i:j + 1]
        n = len(self.obstacle)
        if j < i:
            j += n
        return tuple(self.obstacle[k % n] for k in range(i, j + 1))


@dataclass
class Prep:
    segments: list[Segment]
    extremes: ExtremeSet
    stations: list[Station]
    chains: dict[ChainId, CriticalChain]
    partitions: dict[Role, IntervalPartition]
    slots: dict[tuple[int, int], SlotGeom] = field(default_factory=dict)
    relations: dict = field(default_factory=dict)
    entry_cache: dict = field(default_factory=dict)
    exit_cache: dict = field(default_factory=dict)


def _role_pos(role: Role) -> int:
    return ROLE_CYCLE.index(role)


def _cyclic_role_run(roles: tuple[Role, ...]) -> tuple[Role, ...]:
    """Order a station's roles as a consecutive run of the role cycle, so the
    run's first role is the incoming side and its last the outgoing side."""
    want = set(roles)
    for k in range(4):
        run = tuple(ROLE_CYCLE[(k + i) % 4] for i in range(len(want)))
        if set(run) == want:
            return run
    return tuple(sorted(want, key=_role_pos))


def prepare(segments: Sequence[Segment]) -> Prep:
    extremes = find_extremes(segments)
    chains = build_all_chains(segments)

    # overlap augmentation next to synthetic spans restores unique-extreme
    # assumptions without changing any chain's shape
    for role in ROLE_CYCLE:
        slot = extremes.slot(role)
        if slot is not None and slot.provenance is Provenance.SYNTHETIC:
            inc, out = ROLE_CHAINS[role]
            a, b = augment_chains_overlap(chains[inc], chains[out])
            chains[inc], chains[out] = a, b

    # roles sharing one resolved span collapse into a single station
    seen: dict[tuple, Station] = {}
    stations: list[Station] = []
    hosts: dict[Role, Span] = {}
    for role in ROLE_CYCLE:
        slot = extremes.slot(role)
        if slot is None:
            continue
        hosts[role] = slot.span
        key = slot.span.key()
        if key in seen:
            st = seen[key]
            st.roles = st.roles + (role,)
        else:
            st = Station(idx=len(stations), roles=(role,), host=slot.span)
            seen[key] = st
            stations.append(st)
    for st in stations:
        st.roles = _cyclic_role_run(st.roles)
    stations.sort(key=lambda s: _role_pos(s.first_role))
    for n, st in enumerate(stations):
        st.idx = n

    partitions: dict[Role, IntervalPartition] = {}
    all_hosts = list(hosts.values())
    for st in stations:
        part = build_partition(st.host, st.first_role, chains, all_hosts)
        if len(st.roles) > 1:
            _, out_id = ROLE_CHAINS[st.last_role]
            set_intervals_by_chain(part, chains[out_id], incoming=False)
        st.partition = part
        for r in st.roles:
            partitions[r] = part

    prep = Prep(list(segments), extremes, stations, chains, partitions)
    _build_slots(prep)
    _build_positions(prep)
    return prep


def _gap_roles(frm_role: Role, to_role: Role) -> list[Role]:
    i = _role_pos(frm_role)
    out = []
    while True:
        i = (i + 1) % 4
        r = ROLE_CYCLE[i]
        if r is to_role:
            return out
        out.append(r)


def _build_slots(prep: Prep) -> None:
    stations = prep.stations
    k = len(stations)
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            skipped = []
            m = i
            while True:
                m = (m + 1) % k
                if m == j:
                    break
                skipped.append(stations[m])
            if len(skipped) > 2:
                continue
            frm_role = stations[i].last_role
            to_role = stations[j].first_role
            gap = _gap_roles(frm_role, to_role)
            chain_ids = []
            r = frm_role
            for nxt in gap + [to_role]:
                chain_ids.append(CHAIN_BETWEEN[(r, nxt)])
                r = nxt
            chains = tuple(prep.chains[c] for c in chain_ids)
            bypassed_roles = tuple(st.first_role for st in skipped)
            bypassed = tuple(st.host for st in skipped)
            closed = bool(bypassed)
            if closed:
                pts: list[Point] = []
                for ch in chains:
                    pts.extend(ch.vertices)
                for sp in bypassed:
                    pts.extend(sp.endpoints())
                obstacle = tuple(convex_hull(pts))
            else:
                obstacle = chains[0].vertices
            slot = SlotGeom(i, j, frm_role, to_role, tuple(chain_ids), chains,
                            bypassed_roles, bypassed, closed, obstacle)
            n = len(obstacle)
            pre = [Fraction(0)]
            rng = range(2 * n - 1) if (closed and n) else range(max(0, n - 1))
            for t in rng:
                pre.append(pre[-1] + cross2(obstacle[t % n], obstacle[(t + 1) % n]))
            slot.prefix = pre
            prep.slots[(i, j)] = slot


def _line_cut_coord(a: Point, b: Point, host: Span) -> Optional[Scalar]:
    """Coordinate where the infinite line a-b meets the host's supporting
    line (no range check); None when parallel or degenerate."""
    dx, dy = b.x - a.x, b.y - a.y
    if dx == 0 and dy == 0:
        return None
    if host.is_horizontal:
        if dy == 0:
            return None
        t = (host.fixed - a.y) / dy
        return a.x + t * dx
    if dx == 0:
        return None
    t = (host.fixed - a.x) / dx
    return a.y + t * dy


def _midpoint_chord_coord(pivot: Point, host_u: Span, host_w: Span) -> Optional[Scalar]:
    """u-coordinate of the chord through the pivot that the pivot bisects
    (the classic minimal cut between two perpendicular supporting lines)."""
    if host_u.orient is host_w.orient:
        return None
    if host_u.is_horizontal:
        return 2 * pivot.x - host_w.fixed
    return 2 * pivot.y - host_w.fixed


def _obstacle_neighbors(slot: SlotGeom, i: int) -> list[Point]:
    verts = slot.obstacle
    n = len(verts)
    if n < 2:
        return []
    if slot.closed:
        return [verts[(i - 1) % n], verts[(i + 1) % n]]
    out = []
    if i > 0:
        out.append(verts[i - 1])
    if i + 1 < n:
        out.append(verts[i + 1])
    return out


def _chord_pairs_for_slot(prep: Prep, slot: SlotGeom):
    """Tangent-chord (type 1) coordinate pairs: per obstacle vertex, the
    rotating line through it yields candidates at the usable range ends, the
    projections of the far host's range ends, and the bisected chord."""
    host_u = prep.stations[slot.frm].host
    host_w = prep.stations[slot.to].host
    out = []
    for i, p in enumerate(slot.obstacle):
        cands_u: set[Scalar] = {host_u.lo, host_u.hi}
        for nb in _obstacle_neighbors(slot, i):
            c = _line_cut_coord(nb, p, host_u)
            if c is not None:
                cands_u.add(c)
        for end in (host_w.lo, host_w.hi):
            c = _line_cut_coord(host_w.point_at(end), p, host_u)
            if c is not None:
                cands_u.add(c)
        c = _midpoint_chord_coord(p, host_u, host_w)
        if c is not None:
            cands_u.add(c)
        for cu in cands_u:
            if not (host_u.lo <= cu <= host_u.hi):
                continue
            up = host_u.point_at(cu)
            if up == p:
                continue
            wq = _line_cut_coord(up, p, host_w)
            if wq is None or not (host_w.lo <= wq <= host_w.hi):
                continue
            wp = host_w.point_at(wq)
            if wp == up:
                continue
            if not on_segment(p, up, wp):
                continue
            out.append((cu, wq, p))
    return out


def _chord_entries(prep: Prep, slot_key: tuple[int, int]):
    """Validated chord pairs for one slot, trimmed per pivot to the family's
    clamp ends and the bisected chord: (u_coord, w_coord, pivot) triples."""
    key = (slot_key, "chords")
    if key in prep.relations:
        return prep.relations[key]
    slot = prep.slots[slot_key]
    st_u = prep.stations[slot.frm]
    st_w = prep.stations[slot.to]
    verts = slot.obstacle
    allowances = _first_last_allowance(slot.chains, bool(slot.bypassed))
    by_pivot: dict[Point, list] = {}
    for cu, wq, p in _chord_pairs_for_slot(prep, slot):
        a = st_u.host.point_at(cu)
        b = st_w.host.point_at(wq)
        i = verts.index(p)
        if any(orient2d(a, b, nb) == CW for nb in _obstacle_neighbors(slot, i)):
            continue
        ok = True
        for w in slot.bypassed:
            if not (_span_touched(a, b, w) or _span_contained_left(a, b, w)):
                ok = False
                break
        if ok:
            for ch, allowed in zip(slot.chains, allowances):
                if not _edge_chain_contact_ok(a, b, ch, allowed, (p, a, b),
                                              check_sides=False):
                    ok = False
                    break
        if ok and not _edge_side_ok(prep, a, b):
            ok = False
        if ok:
            by_pivot.setdefault(p, []).append((cu, wq))
    out = []
    for p, pairs in by_pivot.items():
        pairs.sort()
        keepers = {pairs[0], pairs[-1]}
        mid = _midpoint_chord_coord(p, st_u.host, st_w.host)
        if mid is not None:
            for pr in pairs:
                if pr[0] == mid:
                    keepers.add(pr)
        for cu, wq in sorted(keepers):
            out.append((cu, wq, p))
    prep.relations[key] = out
    return out


def _build_positions(prep: Prep) -> None:
    coords: list[set] = [set() for _ in prep.stations]
    for st in prep.stations:
        coords[st.idx].update(st.partition.boundaries())
    for (i, j), slot in prep.slots.items():
        if slot.closed:
            n = len(slot.obstacle)
            for t in range(n):
                a, b = slot.obstacle[t], slot.obstacle[(t + 1) % n]
                if a == b:
                    continue
                for st_idx in (i, j):
                    host = prep.stations[st_idx].host
                    c = _line_cut_coord(a, b, host)
                    if c is not None and host.lo <= c <= host.hi:
                        coords[st_idx].add(c)
        for cu, wq, _p in _chord_entries(prep, (i, j)):
            coords[i].add(cu)
            coords[j].add(wq)
    for st in prep.stations:
        cs = sorted(c for c in coords[st.idx] if st.host.lo <= c <= st.host.hi)
        st.positions = [
            Position(c, st.host.point_at(c), c in (st.host.lo, st.host.hi))
            for c in cs
        ]


# ---------------------------------------------------------------------------
# per-slot feasibility and candidate relations


_QUADRANT_CHAIN = (
    (ChainId.RB, lambda nx, ny: nx <= 0 and ny >= 0),
    (ChainId.LB, lambda nx, ny: nx >= 0 and ny >= 0),
    (ChainId.LT, lambda nx, ny: nx >= 0 and ny <= 0),
    (ChainId.RT, lambda nx, ny: nx <= 0 and ny <= 0),
)


def _edge_side_ok(prep: Prep, a: Point, b: Point) -> bool:
    """Exact necessary side condition of a single polygon edge: the chains
    matching the edge's outward-normal quadrant stay weakly inside (else the
    segment contributing the offending vertex would be missed outright)."""
    nx, ny = b.y - a.y, a.x - b.x
    for cid, match in _QUADRANT_CHAIN:
        if not match(nx, ny):
            continue
        for v in prep.chains[cid].vertices:
            if orient2d(a, b, v) == CW:
                return False
    return True


def _slot_edge_ok(prep: Prep, slot: SlotGeom, a: Point, b: Point,
                  extra_allowed: tuple[Point, ...] = ()) -> bool:
    """Clear-edge (type 0) feasibility: skipped segments touched or kept on
    the interior side, chain contact only at the edge's own endpoints (when
    those sit on a chain) or across a permitted terminal chain edge, and the
    exact side condition for the edge's own orientation."""
    for w in slot.bypassed:
        if not (_span_touched(a, b, w) or _span_contained_left(a, b, w)):
            return False
    allowed_pts = (a, b) + extra_allowed
    allowances = _first_last_allowance(slot.chains, bool(slot.bypassed))
    for ch, allowed in zip(slot.chains, allowances):
        if not _edge_chain_contact_ok(a, b, ch, allowed, allowed_pts,
                                      check_sides=False):
            return False
    return _edge_side_ok(prep, a, b)


def _entry_index(slot: SlotGeom, p: Point) -> Optional[int]:
    """First obstacle vertex a taut path leaving p can touch: every obstacle
    vertex stays weakly left of the edge p->vertex."""
    verts = slot.obstacle
    for i, w in enumerate(verts):
        if w == p:
            return i
        ok = True
        for v in verts:
            if v is w:
                continue
            if orient2d(p, w, v) == CW:
                ok = False
                break
        if ok:
            return i
    return None


def _exit_index(slot: SlotGeom, p: Point) -> Optional[int]:
    verts = slot.obstacle
    best = None
    for i, w in enumerate(verts):
        if w == p:
            best = i
            continue
        ok = True
        for v in verts:
            if v is w:
                continue
            if orient2d(w, p, v) == CW:
                ok = False
                break
        if ok:
            best = i
    return best


def _entry(prep: Prep, slot: SlotGeom, pos: Position) -> Optional[int]:
    key = (slot.frm, slot.to, pos.coord)
    if key not in prep.entry_cache:
        prep.entry_cache[key] = _entry_index(slot, pos.point)
    return prep.entry_cache[key]


def _exit(prep: Prep, slot: SlotGeom, pos: Position) -> Optional[int]:
    key = (slot.frm, slot.to, pos.coord)
    if key not in prep.exit_cache:
        prep.exit_cache[key] = _exit_index(slot, pos.point)
    return prep.exit_cache[key]


def _path_convex(a: Point, via: Sequence[Point], b: Point) -> bool:
    path = [a, *via, b]
    for i in range(len(path) - 2):
        if orient2d(path[i], path[i + 1], path[i + 2]) == CW:
            return False
    return True


def _simplify_path(path: list[Point]) -> list[Point]:
    """Drop interior path vertices collinear with their neighbours (straight
    runs and zero-width spurs contribute nothing to the boundary)."""
    changed = True
    while changed and len(path) > 2:
        changed = False
        for i in range(1, len(path) - 1):
            if orient2d(path[i - 1], path[i], path[i + 1]) == COLLINEAR:
                del path[i]
                changed = True
                break
    return path


def _type2_candidate(prep: Prep, slot: SlotGeom, up: Position, wp: Position):
    ei = _entry(prep, slot, up)
    xi = _exit(prep, slot, wp)
    if ei is None or xi is None:
        return None
    if not slot.closed and ei > xi:
        return None
    via = tuple(v for v in slot.arc_vertices(ei, xi)
                if v != up.point and v != wp.point)
    # straight chain runs and zero-width spurs collapse; an empty result
    # means the contact lies along the edge itself, still a valid candidate
    path = _simplify_path([up.point, *via, wp.point])
    via = tuple(path[1:-1])
    if not _path_convex(up.point, via, wp.point):
        return None
    if not _edge_side_ok(prep, path[0], path[1]):
        return None
    if len(path) > 2 and not _edge_side_ok(prep, path[-2], path[-1]):
        return None
    cost = Fraction(0)
    for t in range(len(path) - 1):
        cost += cross2(path[t], path[t + 1])
    return via, cost


def _relation(prep: Prep, slot_key: tuple[int, int], typ: int):
    """Candidate pairs of one slot under one connection type, keyed by the
    start position index: {u: [(w, via, cost, typ), ...]}."""
    key = (slot_key, typ)
    if key in prep.relations:
        return prep.relations[key]
    slot = prep.slots[slot_key]
    st_u = prep.stations[slot.frm]
    st_w = prep.stations[slot.to]
    rel: dict[int, list] = {}
    if typ == 0:
        for ui, up in enumerate(st_u.positions):
            for wi, wp in enumerate(st_w.positions):
                if up.point == wp.point:
                    continue
                if _slot_edge_ok(prep, slot, up.point, wp.point):
                    rel.setdefault(ui, []).append(
                        (wi, (), cross2(up.point, wp.point), 0))
    elif typ == 1:
        index_u = {p.coord: i for i, p in enumerate(st_u.positions)}
        index_w = {p.coord: i for i, p in enumerate(st_w.positions)}
        for cu, wq, p in _chord_entries(prep, slot_key):
            ui = index_u.get(cu)
            wi = index_w.get(wq)
            if ui is None or wi is None:
                continue
            a, b = st_u.positions[ui].point, st_w.positions[wi].point
            cost = cross2(a, p) + cross2(p, b)
            entry = (wi, (p,), cost, 1)
            if entry not in rel.setdefault(ui, []):
                rel[ui].append(entry)
    else:
        for ui, up in enumerate(st_u.positions):
            for wi, wp in enumerate(st_w.positions):
                got = _type2_candidate(prep, slot, up, wp)
                if got is not None:
                    via, cost = got
                    rel.setdefault(ui, []).append((wi, via, cost, 2))
    prep.relations[key] = rel
    return rel


def _merged_relation(prep: Prep, slot_key: tuple[int, int]):
    key = (slot_key, "merged")
    if key in prep.relations:
        return prep.relations[key]
    merged: dict[int, list] = {}
    for typ in (0, 1, 2):
        for ui, lst in _relation(prep, slot_key, typ).items():
            merged.setdefault(ui, []).extend(lst)
    prep.relations[key] = merged
    return merged


# ---------------------------------------------------------------------------
# rings (station subsets) and the exact search


def candidate_rings(prep: Prep) -> list[tuple[int, ...]]:
    k = len(prep.stations)
    rings = []
    for size in range(2, k + 1):
        for combo in itertools.combinations(range(k), size):
            ok = True
            for t in range(size):
                i, j = combo[t], combo[(t + 1) % size]
                if (j - i) % k - 1 > 2:
                    ok = False
                    break
            if ok:
                rings.append(combo)
    return rings


def _ring_slots(prep: Prep, ring: tuple[int, ...]) -> list[SlotGeom]:
    return [prep.slots[(ring[t], ring[(t + 1) % len(ring)])]
            for t in range(len(ring))]


@dataclass(frozen=True)
class RingCandidate:
    cost: Scalar
    ring: tuple[int, ...]
    pos_idx: tuple[int, ...]
    vias: tuple[tuple[Point, ...], ...]
    types: tuple[int, ...]


def _search_ring(prep: Prep, ring: tuple[int, ...], pruned: bool,
                 keep: int = 24) -> list[RingCandidate]:
    """Min-cost walk over one station ring; states carry (position, incoming
    connection type).  With pruning, interior positions are skipped at
    stations sitting between two clear connections (the endpoint collapse)."""
    slots = _ring_slots(prep, ring)
    k = len(ring)
    stations = [prep.stations[i] for i in ring]
    rels = [_merged_relation(prep, (s.frm, s.to)) for s in slots]

    results: list[RingCandidate] = []
    seen: set = set()
    n0 = len(stations[0].positions)
    for u0 in range(n0):
        first = rels[0].get(u0, ())
        if not first:
            continue
        for t0 in (0, 1, 2):
            layer0: dict[tuple[int, int], tuple] = {}
            via0_by: dict[tuple[int, int], tuple] = {}
            for wi, via, c, typ in first:
                if typ != t0:
                    continue
                key = (wi, typ)
                old = layer0.get(key)
                if old is None or c < old[0]:
                    layer0[key] = (c, None)
                    via0_by[key] = via
            if not layer0:
                continue
            layers = [layer0]
            via_layers = [via0_by]
            cur = layer0
            dead = False
            for t in range(1, k):
                nxt: dict[tuple[int, int], tuple] = {}
                nxt_via: dict[tuple[int, int], tuple] = {}
                rel = rels[t]
                st = stations[t]
                for (ui, t_in), (cost, _) in cur.items():
                    up = st.positions[ui]
                    for wi, via, c, typ in rel.get(ui, ()):
                        if pruned and t_in == 0 and typ == 0 and not up.host_end:
                            continue
                        nc = cost + c
                        key = (wi, typ)
                        old = nxt.get(key)
                        if old is None or nc < old[0]:
                            nxt[key] = (nc, (ui, t_in))
                            nxt_via[key] = via
                if not nxt:
                    dead = True
                    break
                layers.append(nxt)
                via_layers.append(nxt_via)
                cur = nxt
            if dead:
                continue
            up0 = stations[0].positions[u0]
            for (ui, t_in), (cost, back) in cur.items():
                if ui != u0:
                    continue
                if pruned and t_in == 0 and t0 == 0 and not up0.host_end:
                    continue
                pos_idx = [0] * k
                vias: list[tuple] = [()] * k
                types = [0] * k
                keyt = (ui, t_in)
                for layer in range(k - 1, 0, -1):
                    _c, backp = layers[layer][keyt]
                    vias[layer] = via_layers[layer][keyt]
                    types[layer] = keyt[1]
                    pos_idx[layer] = backp[0]
                    keyt = backp
                pos_idx[0] = u0
                vias[0] = via_layers[0][keyt]
                types[0] = keyt[1]
                sig = (tuple(pos_idx), tuple(types))
                if sig in seen:
                    continue
                seen.add(sig)
                results.append(RingCandidate(cost, ring, tuple(pos_idx),
                                             tuple(vias), tuple(types)))
    results.sort(key=lambda rc: (rc.cost, rc.pos_idx, rc.types))
    return results[:keep]


def _assemble(prep: Prep, cand: RingCandidate):
    ring = cand.ring
    k = len(ring)
    verts: list[Point] = []
    conns: list[ConnectionSpec] = []
    slots = _ring_slots(prep, ring)
    for t in range(k):
        st = prep.stations[ring[t]]
        p = st.positions[cand.pos_idx[t]].point
        verts.append(p)
        verts.extend(cand.vias[t])
        q = prep.stations[ring[(t + 1) % k]].positions[cand.pos_idx[(t + 1) % k]].point
        slot = slots[t]
        via = cand.vias[t]
        ctype = ConnectionType(cand.types[t])
        if ctype is ConnectionType.CASE1 and len(via) != 1:
            ctype = ConnectionType.CASE2 if via else ConnectionType.CASE0
        if ctype is ConnectionType.CASE2 and not via:
            ctype = ConnectionType.CASE0
        try:
            conns.append(ConnectionSpec(
                ctype, slot.frm_role.value, slot.to_role.value, p, q,
                via, frozenset(r.value for r in slot.bypassed_roles)))
        except ValueError:
            return None
    return verts, conns


def _chain_sides_ok(prep: Prep, poly: Polygon) -> bool:
    """Each polygon edge, bucketed by outward-normal quadrant, must keep the
    matching chain's vertices weakly on the interior side."""
    checks = (
        (ChainId.RB, lambda nx, ny: nx <= 0 and ny >= 0),
        (ChainId.LB, lambda nx, ny: nx >= 0 and ny >= 0),
        (ChainId.LT, lambda nx, ny: nx >= 0 and ny <= 0),
        (ChainId.RT, lambda nx, ny: nx <= 0 and ny <= 0),
    )
    for a, b in poly.edges():
        nx, ny = b.y - a.y, a.x - b.x
        for cid, match in checks:
            if not match(nx, ny):
                continue
            for v in prep.chains[cid].vertices:
                if orient2d(a, b, v) == CW:
                    return False
    return True


def verify_stabber(prep: Prep, vertices: Sequence[Point]) -> Optional[Polygon]:
    """Exact validity: convex CCW with positive area, stabs every segment,
    and respects all four chain side conditions."""
    ring = canonicalize_ring(vertices)
    if len(ring) < 3:
        return None
    poly = Polygon(tuple(ring))
    if not poly.is_convex_ccw():
        return None
    if poly.signed_area2() <= 0:
        return None
    for s in prep.segments:
        if not segment_intersects_ring(s, poly.vertices):
            return None
    if not _chain_sides_ok(prep, poly):
        return None
    return poly


# ---------------------------------------------------------------------------
# configuration code bookkeeping


def _code_of(prep: Prep, ring: tuple[int, ...],
             types: Sequence[int]) -> tuple[Family, str, tuple[Role, ...]]:
    k = len(ring)
    slots = _ring_slots(prep, ring)
    bypassed: list[Role] = []
    for slot in slots:
        bypassed.extend(slot.bypassed_roles)
    if k == 4:
        order = sorted(range(k), key=lambda t: _role_pos(slots[t].frm_role))
        code = "".join(str(types[t]) for t in order)
        return Family.FOUR, code, ()
    if k == 3:
        if bypassed:
            bt = next(t for t, slot in enumerate(slots) if slot.bypassed_roles)
            code = f"{types[(bt + 1) % 3]}{types[bt]}{types[(bt + 2) % 3]}"
            return Family.THREE, code, tuple(bypassed)
        mt = next((t for t, i in enumerate(ring)
                   if len(prep.stations[i].roles) > 1), 0)
        code = "".join(str(types[(mt + d) % 3]) for d in range(3))
        return Family.THREE, code, ()
    skips = [len(slot.bypassed_roles) for slot in slots]
    if 0 in skips:
        reg = skips.index(0)
        code = f"{types[reg]}{types[1 - reg]}"
        return Family.TWO_ONE_REGULAR, code, tuple(bypassed)
    order = sorted(range(2), key=lambda t: _role_pos(slots[t].frm_role))
    code = "".join(str(types[t]) for t in order)
    return Family.TWO_BOTH_BYPASS, code, tuple(bypassed)


def _placement_for(prep: Prep, station: Station, point: Point) -> VertexPlacement:
    coord = station.host.coord_of(point)
    idx = station.partition.locate(coord)
    iv = station.partition.intervals[idx]
    width = iv.hi - iv.lo
    t = Fraction(0) if width == 0 else (coord - iv.lo) / width
    return VertexPlacement(station.roles, station.host, idx, t, point)


# ---------------------------------------------------------------------------
# taut reassembly (polish / reshape semantics)


def taut_via(slot: SlotGeom, a: Point, b: Point) -> Optional[tuple[Point, ...]]:
    """Via vertices of the taut connection a->b: the hull arc from a to b
    keeping the slot's obstacle on the interior side.  None when a or b is
    strictly inside the obstacle hull (no valid connection exists)."""
    pts = list(slot.obstacle)
    if not pts:
        return ()
    hull = convex_hull([a, b] + pts)
    if len(hull) < 3:
        return ()
    ring = list(hull)
    for q in (a, b):
        if q in ring:
            continue
        placed = False
        for i in range(len(ring)):
            p1, p2 = ring[i], ring[(i + 1) % len(ring)]
            if on_segment(q, p1, p2):
                ring.insert(i + 1, q)
                placed = True
                break
        if not placed:
            return None
    ia, ib = ring.index(a), ring.index(b)
    via = []
    t = ia
    while True:
        t = (t + 1) % len(ring)
        if t == ib:
            break
        if t == ia:
            return None
        via.append(ring[t])
    return tuple(v for v in via if v != a and v != b)


def _taut_cost(slot: SlotGeom, a: Point, b: Point):
    via = taut_via(slot, a, b)
    if via is None:
        return None
    path = [a, *via, b]
    cost = Fraction(0)
    for i in range(len(path) - 1):
        cost += cross2(path[i], path[i + 1])
    return cost, via


def reassemble_taut(prep: Prep, ring: tuple[int, ...], points: list[Point]):
    """Full taut polygon through fixed station points; None if impossible."""
    slots = _ring_slots(prep, ring)
    vias: list[tuple[Point, ...]] = []
    for t in range(len(ring)):
        got = _taut_cost(slots[t], points[t], points[(t + 1) % len(ring)])
        if got is None:
            return None
        vias.append(got[1])
    verts: list[Point] = []
    for t in range(len(ring)):
        verts.append(points[t])
        verts.extend(vias[t])
    return verts, vias


def _ring_convex(ring_verts: list[Point]) -> bool:
    vs = canonicalize_ring(ring_verts)
    if len(vs) < 3:
        return False
    n = len(vs)
    for i in range(n):
        if orient2d(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) != CCW:
            return False
    return True


def _polish_points(prep: Prep, ring: tuple[int, ...],
                   start: list[Point]) -> list[Point]:
    """Exact coordinate descent under taut reassembly: slide each station
    vertex along its whole host to the minimum of its one-dimensional area
    slice subject to the ring staying convex, iterating until no single
    slide improves.  Slices are piecewise affine; breakpoints are the
    precomputed cut positions plus graze positions against the current
    neighbours and stations, so evaluating those suffices."""
    k = len(ring)
    slots = _ring_slots(prep, ring)
    points = list(start)
    vias: list[Optional[tuple[Point, ...]]] = []
    for t in range(k):
        got = _taut_cost(slots[t], points[t], points[(t + 1) % k])
        if got is None:
            return points
        vias.append(got[1])

    def assemble(trial_points, trial_vias) -> list[Point]:
        verts: list[Point] = []
        for s in range(k):
            verts.append(trial_points[s])
            verts.extend(trial_vias[s])
        return verts

    graze: list[Point] = []
    for ch in prep.chains.values():
        graze.extend(ch.vertices)

    for _pass in range(40):
        improved = False
        for t in range(k):
            st = prep.stations[ring[t]]
            host = st.host
            if host.is_degenerate:
                continue
            prev_pt = points[(t - 1) % k]
            next_pt = points[(t + 1) % k]
            in_slot = slots[(t - 1) % k]
            out_slot = slots[t]
            cands: set[Scalar] = {p.coord for p in st.positions}
            cur = host.coord_of(points[t])
            cands.add(cur)
            anchors = {prev_pt, next_pt}
            targets = list(graze) + [points[s] for s in range(k) if s != t]
            for anchor in anchors:
                for v in targets:
                    if v == anchor:
                        continue
                    c = _line_cut_coord(anchor, v, host)
                    if c is not None and host.lo <= c <= host.hi:
                        cands.add(c)
            got_in = _taut_cost(in_slot, prev_pt, points[t])
            got_out = _taut_cost(out_slot, points[t], next_pt)
            if got_in is None or got_out is None:
                return points
            best = (got_in[0] + got_out[0], cur, got_in[1], got_out[1])
            for c in sorted(cands):
                if c == cur:
                    continue
                p = host.point_at(c)
                ci = _taut_cost(in_slot, prev_pt, p)
                co = _taut_cost(out_slot, p, next_pt)
                if ci is None or co is None:
                    continue
                val = ci[0] + co[0]
                if val >= best[0]:
                    continue
                trial_points = list(points)
                trial_points[t] = p
                trial_vias = list(vias)
                trial_vias[(t - 1) % k] = ci[1]
                trial_vias[t] = co[1]
                if not _ring_convex(assemble(trial_points, trial_vias)):
                    continue
                best = (val, c, ci[1], co[1])
            if best[1] != cur:
                points[t] = host.point_at(best[1])
                vias[(t - 1) % k] = best[2]
                vias[t] = best[3]
                improved = True
        if not improved:
            break
    return points


def _classify_taut_slot(slot: SlotGeom, a: Point, b: Point,
                        via: tuple[Point, ...]) -> tuple[int, tuple[Point, ...]]:
    if via:
        path = [a, *via, b]
        has_corner = any(orient2d(path[i], path[i + 1], path[i + 2]) != COLLINEAR
                         for i in range(len(path) - 2))
        return (2, via) if has_corner else (1, via[:1])
    touching = tuple(v for v in slot.obstacle
                     if v != a and v != b and on_segment(v, a, b))
    if not touching:
        return 0, ()
    if len(touching) == 1:
        return 1, touching
    return 2, touching


def _describe_points(prep: Prep, ring: tuple[int, ...], points: list[Point]):
    """Connection structure, code and placements of a taut polygon given its
    station points."""
    k = len(ring)
    slots = _ring_slots(prep, ring)
    types: list[int] = []
    conns: list[ConnectionSpec] = []
    for t, slot in enumerate(slots):
        a, b = points[t], points[(t + 1) % k]
        via = taut_via(slot, a, b)
        if via is None:
            via = ()
        typ, via_for_spec = _classify_taut_slot(slot, a, b, via)
        types.append(typ)
        ct = ConnectionType(typ)
        if ct is ConnectionType.CASE1 and len(via_for_spec) != 1:
            via_for_spec = via_for_spec[:1]
        if ct is ConnectionType.CASE2 and not via_for_spec:
            ct = ConnectionType.CASE0
            via_for_spec = ()
        conns.append(ConnectionSpec(ct, slot.frm_role.value, slot.to_role.value,
                                    a, b, tuple(via_for_spec),
                                    frozenset(r.value for r in slot.bypassed_roles)))
    placements = tuple(_placement_for(prep, prep.stations[ring[t]], points[t])
                       for t in range(k))
    family, code, bypassed = _code_of(prep, ring, types)
    return family, code, bypassed, tuple(conns), placements


# ---------------------------------------------------------------------------
# solve


def solve(segments: Sequence[Segment], exhaustive: bool = False,
          polish: bool = True) -> SolveResult:
    if not segments:
        return SolveResult("rejected", rejection=Rejection(Reason.EMPTY_INPUT))
    extremes = find_extremes(segments)
    if count_distinct_extremes(extremes) < 3:
        return SolveResult("rejected", rejection=Rejection(Reason.TOO_FEW_EXTREMES),
                           extremes=extremes)
    line = detect_line_stabber(segments)
    if line is not None:
        return SolveResult("line", line=line, extremes=extremes)

    prep = prepare(segments)
    pruned = not exhaustive
    candidates: list[RingCandidate] = []
    for ring in candidate_rings(prep):
        candidates.extend(_search_ring(prep, ring, pruned=pruned))
    candidates.sort(key=lambda rc: (rc.cost, len(rc.ring), rc.ring,
                                    rc.pos_idx, rc.types))

    best_poly: Optional[Polygon] = None
    best_cand: Optional[RingCandidate] = None
    best_key = None
    for rc in candidates:
        if best_key is not None and rc.cost > best_key[0]:
            break
        got = _assemble(prep, rc)
        if got is None:
            continue
        poly = verify_stabber(prep, got[0])
        if poly is None:
            continue
        key = (poly.signed_area2(), len(poly.vertices),
               tuple(p.key() for p in poly.vertices))
        if best_key is None or key < best_key:
            best_key, best_poly, best_cand = key, poly, rc
    if best_poly is None:
        raise RuntimeError("internal invariant violation: no valid candidate polygon")

    enumeration_area = best_poly.area()
    ring = best_cand.ring
    points = [prep.stations[i].positions[best_cand.pos_idx[t]].point
              for t, i in enumerate(ring)]
    final_points = points
    final_poly = best_poly
    if polish:
        polished = _polish_points(prep, ring, points)
        got = reassemble_taut(prep, ring, polished)
        if got is not None:
            poly2 = verify_stabber(prep, got[0])
            if poly2 is not None and poly2.signed_area2() <= best_poly.signed_area2():
                final_poly = poly2
                final_points = polished

    family, code, bypassed, conns, placements = _describe_points(
        prep, ring, final_points)
    canon, _frame = canonical_code(code, family)
    best = CandidatePolygon(final_poly, final_poly.area(), family, code, canon,
                            bypassed, placements, conns)
    return SolveResult("polygon", best=best, enumeration_area=enumeration_area,
                       extremes=extremes, chains=prep.chains,
                       partitions=prep.partitions)


# ---------------------------------------------------------------------------
# reshape: fixed vertex positions, taut reconnection (the slider semantics)


@dataclass
class ReshapeResult:
    valid: bool
    polygon: Optional[Polygon]
    area: Optional[Scalar]
    violated: list[int]


def reshape(segments: Sequence[Segment], positions: dict[Role, Point]) -> ReshapeResult:
    """Rebuild a polygon from user-fixed extreme vertices: connections are
    re-derived as taut paths around the chains, then stabbing of every
    segment is re-checked exactly."""
    prep = prepare(segments)
    ring = []
    pts = []
    for st in prep.stations:
        p = None
        for r in st.roles:
            if r in positions:
                p = positions[r]
        if p is None:
            continue
        if not st.host.contains_point(p):
            return ReshapeResult(False, None, None,
                                 violated=list(range(len(segments))))
        ring.append(st.idx)
        pts.append(p)
    if len(ring) < 2:
        return ReshapeResult(False, None, None, violated=[])
    got = reassemble_taut(prep, tuple(ring), pts)
    if got is None:
        return ReshapeResult(False, None, None, violated=[])
    ringv = canonicalize_ring(got[0])
    if len(ringv) < 3:
        return ReshapeResult(False, None, None, violated=[])
    poly = Polygon(tuple(ringv))
    if not poly.is_convex_ccw():
        return ReshapeResult(False, None, None, violated=[])
    violated = [i for i, s in enumerate(segments)
                if not segment_intersects_ring(s, poly.vertices)]
    return ReshapeResult(not violated, poly, poly.area(), violated)


# ---------------------------------------------------------------------------
# the per-configuration tuple API


def enumerate_tuples(prep: Prep, ring: tuple[int, ...], types: Sequence[int],
                     pruned: bool = True) -> Iterator[dict[int, tuple]]:
    """Admissible interval tuples for one configuration.

    Pruned enumeration applies the three search-space reductions: stations
    between two clear connections collapse to their host endpoints, tangent
    connections only pair intervals whose tangent vertices agree (the
    rotating-tangent sweep), and two taut-run connections split the ring so
    the sides enumerate independently (realized here by emitting the product
    of the independent sides; counts match the split sizes)."""
    k = len(ring)
    slots = _ring_slots(prep, ring)
    choices: list[list[tuple]] = []
    for t in range(k):
        st = prep.stations[ring[t]]
        t_in = types[(t - 1) % k]
        t_out = types[t]
        if pruned and t_in == 0 and t_out == 0:
            ends = sorted({st.host.lo, st.host.hi})
            choices.append([("pin", c) for c in ends])
        else:
            choices.append([("iv", n) for n in range(len(st.partition.intervals))])
    pair_ok = {}
    if pruned:
        for t, slot in enumerate(slots):
            if types[t] != 1 or slot.closed:
                continue
            cid = slot.chain_ids[0]
            part_u = prep.stations[slot.frm].partition
            part_w = prep.stations[slot.to].partition
            allowed = set()
            for iu, ivu in enumerate(part_u.intervals):
                pu = ivu.tangent.get(cid)
                if pu is None:
                    continue
                for iw, ivw in enumerate(part_w.intervals):
                    if ivw.tangent.get(cid) == pu:
                        allowed.add((iu, iw))
            pair_ok[t] = allowed
    for combo in itertools.product(*choices):
        good = True
        for t, allowed in pair_ok.items():
            cu, cw = combo[t], combo[(t + 1) % k]
            if cu[0] == "iv" and cw[0] == "iv" and (cu[1], cw[1]) not in allowed:
                good = False
                break
        if good:
            yield {ring[t]: combo[t] for t in range(k)}


def optimize_tuple(prep: Prep, ring: tuple[int, ...], types: Sequence[int],
                   tup: dict[int, tuple]):
    """Best vertex placement within one interval tuple, or None when no
    placement passes the connection classifiers.

    Uncoupled vertices are evaluated at their interval's ends only (the area
    is affine in each with the rest fixed); stations touching a tangent
    connection also take the chord-family candidates inside the interval."""
    k = len(ring)
    slots = _ring_slots(prep, ring)
    rels = [_relation(prep, (s.frm, s.to), types[t]) for t, s in enumerate(slots)]
    allowed: list[set[int]] = []
    for t in range(k):
        st = prep.stations[ring[t]]
        kind, val = tup[ring[t]]
        idxs: set[int] = set()
        near_chord = types[(t - 1) % k] == 1 or types[t] == 1
        if kind == "pin":
            for n, p in enumerate(st.positions):
                if p.coord == val:
                    idxs.add(n)
        else:
            iv = st.partition.intervals[val]
            for n, p in enumerate(st.positions):
                if p.coord in (iv.lo, iv.hi) or (near_chord and iv.lo <= p.coord <= iv.hi):
                    idxs.add(n)
        allowed.append(idxs)

    best = None

    def rec(t: int, u0: int, u: int, acc: Scalar, vias: list, poss: list):
        nonlocal best
        if t == k:
            key = (acc, tuple(poss), tuple(vias))
            if best is None or key < best[0]:
                best = (key, list(poss), list(vias))
            return
        for wi, via, c, _typ in rels[t].get(u, ()):
            if t + 1 < k:
                if wi not in allowed[t + 1]:
                    continue
                rec(t + 1, u0, wi, acc + c, vias + [via], poss + [wi])
            else:
                if wi == u0:
                    rec(t + 1, u0, wi, acc + c, vias + [via], poss)

    for u0 in sorted(allowed[0]):
        rec(0, u0, u0, Fraction(0), [], [u0])
    if best is None:
        return None
    (acc, _, _), poss, vias = best
    cand = RingCandidate(acc, ring, tuple(poss), tuple(vias), tuple(types))
    got = _assemble(prep, cand)
    if got is None:
        return None
    poly = verify_stabber(prep, got[0])
    if poly is None:
        return None
    return cand, poly.area()
