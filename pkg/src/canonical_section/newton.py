"""Newton polygons over exact rationals.

Points are (degree, valuation) pairs; valuation may be ``math.inf`` for a
vanishing coefficient.  A hull segment of slope -s and horizontal length l
stands for l roots of valuation s.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateInput

Point = tuple[int, Fraction]


def _finite(points: Sequence[tuple[int, Fraction | float]]) -> list[Point]:
    degrees = [d for d, _ in points]
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise DegenerateInput("degrees must be strictly increasing")
    return [(d, Fraction(v)) for d, v in points if v != math.inf]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[tuple[int, Fraction | float]]) -> list[Point]:
    """Vertices of the lower convex hull of the finite points, left to right.

    Collinear interior points are not vertices.
    """
    pts = _finite(points)
    if len(pts) < 2:
        raise DegenerateInput(f"need at least 2 finite points, got {len(pts)}")
    hull: list[Point] = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def slopes(points) -> list[tuple[Fraction, int]]:
    """(slope, horizontal length) for each hull segment."""
    hull = lower_hull(points)
    return [
        (Fraction(b[1] - a[1]) / (b[0] - a[0]), b[0] - a[0])
        for a, b in zip(hull, hull[1:])
    ]


def root_valuations(points) -> list[Fraction | float]:
    """Multiset of root valuations, sorted ascending.

    Degrees listed below the first finite point (zero coefficients at the
    bottom) contribute roots of infinite valuation.
    """
    out: list[Fraction | float] = []
    pts = list(points)
    first_finite = next(d for d, v in pts if v != math.inf) if any(v != math.inf for _, v in pts) else None
    if first_finite is not None and pts and pts[0][0] < first_finite:
        out += [math.inf] * (first_finite - pts[0][0])
    for slope, length in slopes(pts):
        out += [-slope] * length
    return sorted(out)


def hull_height(hull: Sequence[Point], d: int) -> Fraction:
    """Height of the polygon at abscissa d (inside the hull's degree range)."""
    for a, b in zip(hull, hull[1:]):
        if a[0] <= d <= b[0]:
            return a[1] + (b[1] - a[1]) * Fraction(d - a[0], b[0] - a[0])
    if len(hull) == 1 and hull[0][0] == d:
        return hull[0][1]
    raise ValueError(f"degree {d} outside hull range")
