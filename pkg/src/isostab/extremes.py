"""Finding the four extreme segments and resolving tied candidates.

The four roles (top/left/bottom/right) each pick the segment that binds the
stabber hardest in that direction, per the two-candidate comparison rule.
When several segments tie for a role, the tie is resolved with the
endpoint-marking rule: if the tied collinear segments pairwise intersect they
are replaced by their common intersection; otherwise a synthetic span bridging
the gap is used (the optimal polygon's boundary must cover that whole span).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geom import Orient, Point, Segment, Scalar


class Role(enum.Enum):
    TOP = "t"
    LEFT = "l"
    BOTTOM = "b"
    RIGHT = "r"


# counterclockwise order of the roles around a candidate polygon
ROLE_CYCLE = (Role.TOP, Role.LEFT, Role.BOTTOM, Role.RIGHT)


class Provenance(enum.Enum):
    UNIQUE_VERTICAL = "unique_vertical"
    UNIQUE_HORIZONTAL = "unique_horizontal"
    MERGED_MULTIPLE = "merged_multiple"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True)
class Span:
    """A resolved extreme-slot segment.  Unlike Segment, lo == hi is legal:
    a degenerate span pins the polygon vertex to a single point."""
    orient: Orient
    fixed: Scalar
    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("span needs lo <= hi")

    @property
    def is_horizontal(self) -> bool:
        return self.orient is Orient.H

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def point_at(self, coord: Scalar) -> Point:
        if self.is_horizontal:
            return Point(coord, self.fixed)
        return Point(self.fixed, coord)

    def coord_of(self, p: Point) -> Scalar:
        return p.x if self.is_horizontal else p.y

    def contains_point(self, p: Point) -> bool:
        if self.is_horizontal:
            return p.y == self.fixed and self.lo <= p.x <= self.hi
        return p.x == self.fixed and self.lo <= p.y <= self.hi

    def endpoints(self) -> tuple[Point, Point]:
        return (self.point_at(self.lo), self.point_at(self.hi))

    def key(self):
        return (self.orient.value, self.fixed, self.lo, self.hi)

    @staticmethod
    def of_segment(s: Segment) -> "Span":
        return Span(s.orient, s.fixed, s.lo, s.hi)


@dataclass(frozen=True)
class ExtremeSlot:
    span: Span
    provenance: Provenance
    sources: tuple[Segment, ...]


@dataclass(frozen=True)
class ExtremeSet:
    top: Optional[ExtremeSlot]
    left: Optional[ExtremeSlot]
    bottom: Optional[ExtremeSlot]
    right: Optional[ExtremeSlot]

    def slot(self, role: Role) -> Optional[ExtremeSlot]:
        return {Role.TOP: self.top, Role.LEFT: self.left,
                Role.BOTTOM: self.bottom, Role.RIGHT: self.right}[role]

    def present(self):
        for role in ROLE_CYCLE:
            s = self.slot(role)
            if s is not None:
                yield role, s


def resolve_multiplicity(candidates: Sequence[Segment], role: Role) -> ExtremeSlot:
    """Reduce tied candidates for one role to a single span.

    Collinear ties use the endpoint-marking rule in 1-D: with left/bottom
    endpoints marked and right/top endpoints marked, pairwise-intersecting
    segments have a common intersection (rightmost lower mark to leftmost
    upper mark); non-intersecting ones yield a synthetic bridging span.
    Ties at the same extremal value but on different supporting lines get a
    perpendicular synthetic span covering all of them at that value.
    """
    cands = list(candidates)
    if not cands:
        raise ValueError("no candidates")
    if len(cands) == 1:
        s = cands[0]
        prov = Provenance.UNIQUE_HORIZONTAL if s.is_horizontal else Provenance.UNIQUE_VERTICAL
        return ExtremeSlot(Span.of_segment(s), prov, (s,))
    fixeds = {s.fixed for s in cands}
    if len(fixeds) == 1:
        # collinear: 1-D endpoint marking on the varying axis
        fixed = cands[0].fixed
        orient = cands[0].orient
        rightmost_lower = max(s.lo for s in cands)
        leftmost_upper = min(s.hi for s in cands)
        if rightmost_lower <= leftmost_upper:
            span = Span(orient, fixed, rightmost_lower, leftmost_upper)
            return ExtremeSlot(span, Provenance.MERGED_MULTIPLE, tuple(cands))
        span = Span(orient, fixed, leftmost_upper, rightmost_lower)
        return ExtremeSlot(span, Provenance.SYNTHETIC, tuple(cands))
    # tied extremal value on distinct supporting lines: synthetic span
    # perpendicular to the candidates, at the shared binding value
    if role is Role.TOP:
        value = cands[0].lo      # all tied verticals share bot()
        orient = Orient.H
    elif role is Role.BOTTOM:
        value = cands[0].hi
        orient = Orient.H
    elif role is Role.LEFT:
        value = cands[0].hi      # tied horizontals share right()
        orient = Orient.V
    else:
        value = cands[0].lo
        orient = Orient.V
    lo = min(s.fixed for s in cands)
    hi = max(s.fixed for s in cands)
    return ExtremeSlot(Span(orient, value, lo, hi), Provenance.SYNTHETIC, tuple(cands))


def _pick(role: Role, verticals: list[Segment], horizontals: list[Segment]) -> Optional[ExtremeSlot]:
    """Apply the two-candidate comparison for one role.

    Ties between the vertical-side and horizontal-side candidates follow the
    comparison's 'otherwise' branch: the horizontal wins the top/bottom roles
    and the vertical wins the left/right roles.  (This keeps the resolution
    equivariant under rotations and reflections, unlike a fixed orientation
    preference.)
    """
    if role is Role.TOP:
        vval = max((s.lo for s in verticals), default=None)      # highest bot()
        hval = max((s.fixed for s in horizontals), default=None)  # highest horizontal
        v_wins = vval is not None and (hval is None or vval > hval)
        vtied = [s for s in verticals if s.lo == vval]
        htied = [s for s in horizontals if s.fixed == hval]
    elif role is Role.BOTTOM:
        vval = min((s.hi for s in verticals), default=None)       # lowest top()
        hval = min((s.fixed for s in horizontals), default=None)
        v_wins = vval is not None and (hval is None or vval < hval)
        vtied = [s for s in verticals if s.hi == vval]
        htied = [s for s in horizontals if s.fixed == hval]
    elif role is Role.RIGHT:
        hval = max((s.lo for s in horizontals), default=None)     # rightmost left()
        vval = max((s.fixed for s in verticals), default=None)
        v_wins = vval is not None and (hval is None or vval >= hval)
        htied = [s for s in horizontals if s.lo == hval]
        vtied = [s for s in verticals if s.fixed == vval]
    else:  # LEFT
        hval = min((s.hi for s in horizontals), default=None)     # leftmost right()
        vval = min((s.fixed for s in verticals), default=None)
        v_wins = vval is not None and (hval is None or vval <= hval)
        htied = [s for s in horizontals if s.hi == hval]
        vtied = [s for s in verticals if s.fixed == vval]
    if v_wins:
        return resolve_multiplicity(vtied, role) if vtied else None
    if htied:
        return resolve_multiplicity(htied, role)
    if vtied:
        return resolve_multiplicity(vtied, role)
    return None


def find_extremes(segments: Sequence[Segment]) -> ExtremeSet:
    if not segments:
        raise ValueError("empty instance")
    verticals = [s for s in segments if s.is_vertical]
    horizontals = [s for s in segments if s.is_horizontal]
    return ExtremeSet(
        top=_pick(Role.TOP, verticals, horizontals),
        left=_pick(Role.LEFT, verticals, horizontals),
        bottom=_pick(Role.BOTTOM, verticals, horizontals),
        right=_pick(Role.RIGHT, verticals, horizontals),
    )


def count_distinct_extremes(e: ExtremeSet) -> int:
    keys = {slot.span.key() for _, slot in e.present()}
    return len(keys)
