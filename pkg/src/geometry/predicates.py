"""
Exact predicates on integer points.

Python integers are arbitrary precision, so every determinant below is exact.
Rational results (circumcircles) are returned as ``fractions.Fraction``.
"""
from fractions import Fraction
from typing import Tuple

Point = Tuple[int, int]


def orient(a: Point, b: Point, c: Point) -> int:
    """
    Twice the signed area of triangle abc.

    Returns:
        Positive if a, b, c turn counterclockwise, negative if clockwise, 0 if collinear
    """
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def sign(value) -> int:
    return (value > 0) - (value < 0)


def on_segment(a: Point, b: Point, p: Point) -> bool:
    """Whether p lies on the closed segment ab (p assumed collinear with a and b)."""
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_intersect(p1: Point, p2: Point, p3: Point, p4: Point) -> bool:
    """Closed-segment intersection test, touching and collinear overlap included."""
    d1 = sign(orient(p3, p4, p1))
    d2 = sign(orient(p3, p4, p2))
    d3 = sign(orient(p1, p2, p3))
    d4 = sign(orient(p1, p2, p4))

    if d1 * d2 < 0 and d3 * d4 < 0:
        return True

    if d1 == 0 and on_segment(p3, p4, p1):
        return True
    if d2 == 0 and on_segment(p3, p4, p2):
        return True
    if d3 == 0 and on_segment(p1, p2, p3):
        return True
    if d4 == 0 and on_segment(p1, p2, p4):
        return True
    return False


def segments_cross(p1: Point, p2: Point, p3: Point, p4: Point) -> bool:
    """Proper crossing: the open segments meet in exactly one interior point."""
    d1 = sign(orient(p3, p4, p1))
    d2 = sign(orient(p3, p4, p2))
    d3 = sign(orient(p1, p2, p3))
    d4 = sign(orient(p1, p2, p4))
    return d1 * d2 < 0 and d3 * d4 < 0


def in_cone(prev: Point, apex: Point, nxt: Point, target: Point) -> bool:
    """
    Whether the direction apex->target lies strictly inside the interior angle at apex.

    The polygon is assumed counterclockwise, so the interior is to the left of
    prev->apex->nxt.
    """
    if orient(apex, nxt, prev) >= 0:
        # convex vertex
        return orient(apex, target, prev) > 0 and orient(target, apex, nxt) > 0
    return not (orient(apex, target, nxt) >= 0 and orient(target, apex, prev) >= 0)


def incircle(a: Point, b: Point, c: Point, d: Point) -> int:
    """
    In-circle determinant.

    Positive iff d lies strictly inside the circle through a, b, c when a, b, c
    are counterclockwise; zero iff the four points are co-circular.
    """
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]

    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy

    return (
        alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady)
    )


def circumcircle(a: Point, b: Point, c: Point) -> Tuple[Fraction, Fraction, Fraction]:
    """
    Exact circumcenter and squared radius of a non-degenerate triangle.

    Returns:
        (cx, cy, r2) as Fractions
    """
    d = 2 * orient(a, b, c)
    if d == 0:
        raise ValueError(f"Degenerate triangle {a}, {b}, {c} has no circumcircle")
    a2 = a[0] * a[0] + a[1] * a[1]
    b2 = b[0] * b[0] + b[1] * b[1]
    c2 = c[0] * c[0] + c[1] * c[1]
    # orient(a, b, c) expanded around the origin gives the same determinant
    ux = Fraction(a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1]), d)
    uy = Fraction(a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0]), d)
    r2 = (a[0] - ux) ** 2 + (a[1] - uy) ** 2
    return ux, uy, r2
