"""Exact rational predicates for straight-line drawings."""

from __future__ import annotations

from fractions import Fraction

Point = tuple[Fraction, Fraction]


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c (1 left, -1 right, 0 collinear)."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """``p`` lies on the closed segment ab (collinearity assumed checked by caller)."""
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def in_open_segment(p: Point, a: Point, b: Point) -> bool:
    return p != a and p != b and orient(a, b, p) == 0 and on_segment(p, a, b)


def proper_crossing(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Segments ab and cd cross at a single point interior to both."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def collinear_overlap(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Collinear segments sharing more than one point."""
    if orient(a, b, c) or orient(a, b, d):
        return False
    if a[0] != b[0]:
        lo1, hi1 = sorted((a[0], b[0]))
        lo2, hi2 = sorted((c[0], d[0]))
    else:
        lo1, hi1 = sorted((a[1], b[1]))
        lo2, hi2 = sorted((c[1], d[1]))
    return min(hi1, hi2) > max(lo1, lo2)


def intersection(a: Point, b: Point, c: Point, d: Point) -> tuple[Point, Fraction, Fraction]:
    """Crossing point of lines ab and cd with its parameters along each segment."""
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    den = rx * sy - ry * sx
    qx, qy = c[0] - a[0], c[1] - a[1]
    t = (qx * sy - qy * sx) / den
    u = (qx * ry - qy * rx) / den
    return (a[0] + t * rx, a[1] + t * ry), t, u


def segments_conflict(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Two drawn edges touch anywhere other than at a shared endpoint."""
    shared = {a, b} & {c, d}
    if collinear_overlap(a, b, c, d):
        return True
    if shared:
        return False
    if proper_crossing(a, b, c, d):
        return True
    return (in_open_segment(c, a, b) or in_open_segment(d, a, b)
            or in_open_segment(a, c, d) or in_open_segment(b, c, d))
