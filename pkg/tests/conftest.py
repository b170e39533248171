"""Shared fixtures and independent oracles for the test suite."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from isostab.geom import Point, Segment, Orient, orient2d, on_segment, pt, hseg, vseg


def brute_force_hull_vertices(points) -> set[tuple]:
    """Independent extreme-point oracle: a point is a hull vertex iff it does
    not lie inside or on a segment/triangle spanned by other points.  Works
    over integer coordinate tuples for speed."""
    uniq = sorted({(int(p.x), int(p.y)) for p in points})

    def inside_triangle(px, py, a, b, c):
        d1 = (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0])
        d2 = (c[0] - b[0]) * (py - b[1]) - (c[1] - b[1]) * (px - b[0])
        d3 = (a[0] - c[0]) * (py - c[1]) - (a[1] - c[1]) * (px - c[0])
        if d1 >= 0 and d2 >= 0 and d3 >= 0:
            return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) > 0
        if d1 <= 0 and d2 <= 0 and d3 <= 0:
            return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) < 0
        return False

    def on_seg(px, py, a, b):
        if (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]) != 0:
            return False
        return (min(a[0], b[0]) <= px <= max(a[0], b[0])
                and min(a[1], b[1]) <= py <= max(a[1], b[1]))

    out = set()
    for p in uniq:
        others = [q for q in uniq if q != p]
        px, py = p
        interior = any(on_seg(px, py, a, b)
                       for a, b in itertools.combinations(others, 2))
        if not interior:
            interior = any(inside_triangle(px, py, a, b, c)
                           for a, b, c in itertools.combinations(others, 3))
        if not interior:
            out.add((Fraction(p[0]), Fraction(p[1])))
    return out


def box_instance() -> list[Segment]:
    return [vseg(0, 2, 8), vseg(10, 2, 8), hseg(10, 2, 8), hseg(0, 2, 8)]


def general_position_instance(n: int, seed: int) -> list[Segment]:
    """Random instance with horizontal and vertical coordinate values kept on
    disjoint residues, so no cross-orientation extremal ties occur."""
    rng = random.Random(seed)
    grid = 10 * n
    segs = []
    for _ in range(n):
        length = 2 * rng.randint(1, max(1, n))
        if rng.random() < 0.5:
            y = 2 * rng.randint(0, grid // 2)
            lo = 2 * rng.randint(0, max(0, (grid - length) // 2)) + 1
            segs.append(hseg(y, lo, lo + length))
        else:
            x = 2 * rng.randint(0, grid // 2) + 1
            lo = 2 * rng.randint(0, max(0, (grid - length) // 2))
            segs.append(vseg(x, lo, lo + length))
    return segs


@pytest.fixture
def box():
    return box_instance()
