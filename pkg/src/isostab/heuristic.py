"""Random-hull stabber heuristic and its ratio statistics.

Picking one random point on every segment and taking the convex hull gives a
convex stabber by construction; averaging many runs gives a cheap
approximation whose area can be compared against the exact optimum.  The
heuristic doubles as a sampling oracle for the solver's optimality tests.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geom import Point, Segment, Orient, Scalar, convex_hull, polygon_area, hseg, vseg

SAMPLE_GRID = 2 ** 20   # rational granularity of the per-segment samples


def _rng_for(seed: int, run_index: int) -> random.Random:
    return random.Random((seed, run_index))


def _int_hull(pts: list[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and \
                    (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1]) - \
                    (out[-1][1] - out[-2][1]) * (p[0] - out[-2][0]) <= 0:
                out.pop()
            out.append(p)
        return out
    lower = half(pts)
    upper = half(list(reversed(pts)))
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 3 else [pts[0], pts[-1]]


def random_stabber_hull(segments: Sequence[Segment], seed: int,
                        run_index: int = 0) -> list[Point]:
    """Convex hull of one uniformly sampled point per segment (exact rational
    sample positions, so areas stay exactly comparable).  The result is a
    stabber by construction; all-collinear samples give a degenerate hull.

    Sampling and hulling run over common-denominator integers; only the hull
    vertices are converted back to rational points.
    """
    if not segments:
        raise ValueError("empty instance")
    rng = _rng_for(seed, run_index)
    den = 1
    for s in segments:
        for v in (s.fixed, s.lo, s.hi):
            den = den * v.denominator // math.gcd(den, v.denominator)
    G = SAMPLE_GRID
    scale = den * G
    ipts = []
    for s in segments:
        k = rng.randrange(G + 1)
        lo_n = int(s.lo * den)
        hi_n = int(s.hi * den)
        f_n = int(s.fixed * den) * G
        c = lo_n * (G - k) + hi_n * k
        if s.is_horizontal:
            ipts.append((c, f_n))
        else:
            ipts.append((f_n, c))
    hull = _int_hull(ipts)
    return [Point(Fraction(x, scale), Fraction(y, scale)) for x, y in hull]


class InstanceSampler:
    """Precomputed integer scaling of an instance for fast repeated
    random-hull sampling; areas come back as exact Fractions."""

    def __init__(self, segments: Sequence[Segment]):
        if not segments:
            raise ValueError("empty instance")
        den = 1
        for s in segments:
            for v in (s.fixed, s.lo, s.hi):
                den = den * v.denominator // math.gcd(den, v.denominator)
        G = SAMPLE_GRID
        self.scale = den * G
        self.parts = []
        for s in segments:
            lo_n = int(s.lo * den)
            hi_n = int(s.hi * den)
            f_n = int(s.fixed * den) * G
            self.parts.append((s.is_horizontal, lo_n, hi_n - lo_n, f_n))

    def hull(self, seed: int, run_index: int) -> list[tuple[int, int]]:
        rng = _rng_for(seed, run_index)
        G = SAMPLE_GRID
        rr = rng.randrange
        ipts = []
        for horiz, lo_n, span_n, f_n in self.parts:
            c = lo_n * G + span_n * rr(G + 1)
            ipts.append((c, f_n) if horiz else (f_n, c))
        return _int_hull(ipts)

    def area(self, seed: int, run_index: int) -> Fraction:
        hull = self.hull(seed, run_index)
        if len(hull) < 3:
            return Fraction(0)
        total = 0
        n = len(hull)
        for i in range(n):
            x1, y1 = hull[i]
            x2, y2 = hull[(i + 1) % n]
            total += x1 * y2 - x2 * y1
        return Fraction(abs(total), 2 * self.scale * self.scale)


def sample_hull_area(segments: Sequence[Segment], seed: int,
                     run_index: int) -> Fraction:
    """Exact area of one random-hull stabber (fast path for oracle sweeps)."""
    return InstanceSampler(segments).area(seed, run_index)


@dataclass
class HeuristicReport:
    runs: int
    areas: list[Scalar]
    mean: Scalar
    min: Scalar
    max: Scalar
    ratio_to_optimal: Optional[Scalar]   # optimal area / mean heuristic area


def heuristic_stats(segments: Sequence[Segment], runs: int, seed: int,
                    optimal_area: Optional[Scalar] = None) -> HeuristicReport:
    if runs < 1:
        raise ValueError("runs must be >= 1")
    sampler = InstanceSampler(segments)
    areas = [sampler.area(seed, i) for i in range(runs)]
    mean = sum(areas, Fraction(0)) / runs
    ratio = None
    if optimal_area is not None and mean > 0:
        ratio = optimal_area / mean
    return HeuristicReport(runs, areas, mean, min(areas), max(areas), ratio)


def generate_instance(n: int, seed: int) -> list[Segment]:
    """Random instance family used for experiments: fair orientation coin,
    positions on the integer grid [0, 10n], lengths in [1, 2n]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    grid = 10 * n
    segs = []
    for _ in range(n):
        length = rng.randint(1, min(2 * n, grid))
        fixed = rng.randint(0, grid)
        lo = rng.randint(0, grid - length)
        if rng.random() < 0.5:
            segs.append(hseg(fixed, lo, lo + length))
        else:
            segs.append(vseg(fixed, lo, lo + length))
    return segs
