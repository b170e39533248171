import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from isostab.geom import (
    Point, Polygon, pt, hseg, vseg, orient2d, CCW, CW, COLLINEAR,
    convex_hull, polygon_area, segment_intersects_polygon,
    line_extension_intersect, CollinearOverlap, scalar_str, as_scalar,
    canonicalize_ring,
)
from conftest import brute_force_hull_vertices

coords = st.integers(min_value=-50, max_value=50)


def test_orient2d_basic():
    assert orient2d(pt(0, 0), pt(1, 0), pt(0, 1)) == CCW
    assert orient2d(pt(0, 0), pt(1, 1), pt(2, 2)) == COLLINEAR
    assert orient2d(pt(0, 0), pt(0, 1), pt(1, 1)) == CW


@given(coords, coords, coords, coords, coords, coords)
def test_orient2d_antisymmetric(ax, ay, bx, by, cx, cy):
    a, b, c = pt(ax, ay), pt(bx, by), pt(cx, cy)
    assert orient2d(a, b, c) == -orient2d(b, a, c)
    assert orient2d(a, b, c) == -orient2d(a, c, b)


UNIT_SQUARE = Polygon.from_points([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)])


def test_segment_intersects_polygon_examples():
    assert segment_intersects_polygon(hseg(1, -5, 5), UNIT_SQUARE)   # boundary contact
    assert not segment_intersects_polygon(hseg(3, 0, 1), UNIT_SQUARE)
    assert segment_intersects_polygon(
        vseg(Fraction(1, 2), Fraction(1, 5), Fraction(4, 5)), UNIT_SQUARE)


def _clip_oracle(s, poly) -> bool:
    """Independent halfplane-clipping oracle: clip the segment's parameter
    interval against every edge halfplane; nonempty leftover means contact."""
    a, b = s.endpoints()
    lo, hi = Fraction(0), Fraction(1)
    for p, q in poly.edges():
        # inside: cross(q-p, x-p) >= 0; along x = a + t(b-a) this is affine
        f0 = (q.x - p.x) * (a.y - p.y) - (q.y - p.y) * (a.x - p.x)
        f1 = (q.x - p.x) * (b.y - p.y) - (q.y - p.y) * (b.x - p.x)
        d = f1 - f0
        if d == 0:
            if f0 < 0:
                return False
            continue
        t = -f0 / d
        if d > 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
        if lo > hi:
            return False
    return lo <= hi


def test_segment_intersects_polygon_matches_oracles():
    rng = random.Random(4)
    poly = Polygon.from_points([pt(0, 0), pt(6, 1), pt(7, 6), pt(2, 7), pt(-1, 3)])
    for _ in range(150):
        if rng.random() < 0.5:
            s = hseg(rng.randint(-3, 9), rng.randint(-4, 8), rng.randint(9, 14))
        else:
            s = vseg(rng.randint(-3, 9), rng.randint(-4, 8), rng.randint(9, 14))
        got = segment_intersects_polygon(s, poly)
        assert got == _clip_oracle(s, poly)
        a, b = s.endpoints()
        sampled = any(
            poly.contains_point(Point(a.x + Fraction(k, 100) * (b.x - a.x),
                                      a.y + Fraction(k, 100) * (b.y - a.y)))
            for k in range(0, 101))
        if sampled:          # dense sampling can miss pure touch points
            assert got


def test_polygon_area_examples():
    assert UNIT_SQUARE.area() == 1
    assert polygon_area([pt(0, 0), pt(4, 0), pt(0, 3)]) == 6
    assert polygon_area([pt(0, 0), pt(1, 0), pt(2, 0)]) == 0  # degenerate


def test_line_extension_intersect_examples():
    got = line_extension_intersect(pt(0, 0), pt(1, 1), vseg(2, 0, 4))
    assert got == pt(2, 2)
    assert line_extension_intersect(pt(0, 0), pt(1, 0), vseg(2, 1, 4)) is None
    with pytest.raises(CollinearOverlap):
        line_extension_intersect(pt(0, 0), pt(0, 1), vseg(0, 0, 1))
    with pytest.raises(ValueError):
        line_extension_intersect(pt(1, 1), pt(1, 1), vseg(0, 0, 1))


def test_convex_hull_examples():
    hull = convex_hull([pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2), pt(1, 1)])
    assert set(p.key() for p in hull) == {(0, 0), (2, 0), (2, 2), (0, 2)}
    assert len(hull) == 4
    degenerate = convex_hull([pt(0, 0), pt(1, 0), pt(2, 0)])
    assert [p.key() for p in degenerate] == [(0, 0), (2, 0)]


def test_convex_hull_against_brute_force_oracle():
    rng = random.Random(11)
    pts = [pt(rng.randint(0, 60), rng.randint(0, 60)) for _ in range(100)]
    hull = convex_hull(pts)
    assert set(p.key() for p in hull) == brute_force_hull_vertices(pts)
    # CCW and strictly convex
    n = len(hull)
    for i in range(n):
        assert orient2d(hull[i], hull[(i + 1) % n], hull[(i + 2) % n]) == CCW


@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=18),
       st.data())
@settings(max_examples=60, deadline=None)
def test_hull_area_monotone_under_subsets(points, data):
    pts = [pt(x, y) for x, y in points]
    sub = data.draw(st.lists(st.sampled_from(pts), min_size=1,
                             max_size=len(pts), unique_by=id))
    assert polygon_area(convex_hull(pts)) >= polygon_area(convex_hull(sub))


def test_scalar_str_round_trip():
    cases = [Fraction(1, 3), Fraction(5, 2), Fraction(-7, 20), Fraction(4),
             Fraction(1, 7), Fraction(123456, 100000)]
    for f in cases:
        assert as_scalar(scalar_str(f)) == f
    assert scalar_str(Fraction(5, 2)) == "2.5"
    assert scalar_str(Fraction(1, 3)) == "1/3"


def test_canonicalize_ring_removes_collinear_and_rotates():
    ring = canonicalize_ring([pt(1, 0), pt(2, 0), pt(2, 2), pt(0, 2), pt(0, 0)])
    assert ring[0] == pt(0, 0)
    assert pt(1, 0) not in ring
