"""
Deterministic polygon generators: gadget polygons and random test polygons.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.config import DEFAULT_SEED, RANDOM_GRID_FACTOR, SPIRAL_VERIFY_MAX_Q
from src.geometry.measures import DecomposableMeasure, table_measure
from src.geometry.polygon import Diagonal, Polygon, validate_polygon
from src.geometry.predicates import incircle, orient, segments_cross
from src.oracle.enumerate import count_triangulations
from src.utils.errors import BadValues, InvalidInput, InvariantViolation, RoundingCollision, TooFewVertices

logger = logging.getLogger(__name__)

GENERATOR_KINDS = ("spiral", "kites", "convex", "random")

KITE_BASE_Y = 10
KITE_APEX = (-20, 0)
KITE_GAP = 2


@dataclass
class GeneratorSpec:
    kind: str
    n: Optional[int] = None
    values: List[int] = field(default_factory=list)
    seed: int = DEFAULT_SEED
    scale: int = 1000


def gen_spiral(q: int) -> Polygon:
    """
    Comb polygon whose triangulations factor into q independent convex quadrilaterals.

    An apex O sits below a zigzag chain of q+1 valleys and q tips. Every
    diagonal from O to an inner valley is forced, leaving q quadrilaterals
    (O, valley, tip, valley), each triangulated by either its valley-valley
    or its O-tip diagonal.

    Args:
        q: Number of binary choices, >= 1

    Returns:
        Polygon with 2q+2 vertices and exactly 2^q triangulations
    """
    if q < 1:
        raise BadValues(f"gen_spiral needs q >= 1, got {q}")
    height = 2 * q
    chain = []
    for i in range(q, -1, -1):
        chain.append((2 * i, height))
        if i > 0:
            chain.append((2 * i - 1, height + 1))
    polygon = validate_polygon([(q, 0)] + chain)

    if q <= SPIRAL_VERIFY_MAX_Q:
        count = count_triangulations(polygon)
        if count != 2 ** q:
            raise InvariantViolation(f"Spiral with q={q} has {count} triangulations, expected {2 ** q}")
    return polygon


def kite_horizontal(m: int, i: int) -> Diagonal:
    """Index pair of the long diagonal of kite i (1-based, left to right) in an m-kite polygon."""
    base = 1 + 4 * (m - i)
    return (base + 1, base + 3)


def gen_kites(values: Sequence[int]) -> Tuple[Polygon, DecomposableMeasure]:
    """
    A row of kites over a common base whose only free choices are the kite diagonals.

    Kite i is the quadrilateral l=(X, H), b=(X+25v, H), r=(X+32v, H+24v),
    t=(X+13v, H+16v): its long diagonal l-r has length 40v and its short
    diagonal b-t has length 20v. Every other diagonal is forced, so a
    triangulation is a subset of kites using the long diagonal.

    Args:
        values: Kite sizes v_i, each an integer >= 1

    Returns:
        (polygon, excess) where excess has atom v_i on the long diagonal of
        kite i and 0 elsewhere
    """
    if not values:
        raise BadValues("gen_kites needs at least one value")
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise BadValues(f"Kite values must be integers >= 1, got {v!r}")

    kites = []
    x = 0
    for v in values:
        kites.append([
            (x + 25 * v, KITE_BASE_Y),
            (x + 32 * v, KITE_BASE_Y + 24 * v),
            (x + 13 * v, KITE_BASE_Y + 16 * v),
            (x, KITE_BASE_Y),
        ])
        x += 32 * v + KITE_GAP

    points = [KITE_APEX]
    for kite in reversed(kites):
        points.extend(kite)
    polygon = validate_polygon(points)

    m = len(values)
    atoms = {kite_horizontal(m, i + 1): v for i, v in enumerate(values)}
    excess = table_measure(polygon, atoms, name="kite-excess", default=0)
    logger.info(f"Generated {m} kites with values {list(values)} (n={polygon.n})")
    return polygon, excess


def all_cocircular(polygon: Polygon) -> bool:
    """Whether every vertex lies on the circle through the first three."""
    a, b, c = polygon.vertices[:3]
    if orient(a, b, c) < 0:
        a, b = b, a
    return all(incircle(a, b, c, p) == 0 for p in polygon.vertices[3:])


def gen_convex_regular(n: int, scale: int = 1000) -> Polygon:
    """
    Regular n-gon on a circle of radius scale, rounded to the integer grid.

    Raises:
        RoundingCollision: if rounding merges vertices or breaks convexity
    """
    if n < 3:
        raise TooFewVertices(f"Polygon needs at least 3 vertices, got {n}")
    if scale < 1:
        raise InvalidInput(f"scale must be positive, got {scale}")

    theta = 2 * np.pi * np.arange(n) / n
    xs = np.rint(scale * np.cos(theta)).astype(np.int64)
    ys = np.rint(scale * np.sin(theta)).astype(np.int64)
    points = [(int(x), int(y)) for x, y in zip(xs, ys)]

    try:
        polygon = validate_polygon(points)
    except InvalidInput as e:
        raise RoundingCollision(f"Rounding a regular {n}-gon at scale {scale} failed ({e}); use a larger scale")
    if not polygon.is_convex:
        raise RoundingCollision(f"Rounded regular {n}-gon at scale {scale} is not convex; use a larger scale")
    return polygon


def _general_position(points: Sequence[Tuple[int, int]]) -> bool:
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if orient(points[i], points[j], points[k]) == 0:
                    return False
    return True


def _untangle(points: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """2-opt: reverse the path between two crossing edges until no edges cross."""
    n = len(points)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                a, b = points[i], points[i + 1]
                c, d = points[j], points[(j + 1) % n]
                if segments_cross(a, b, c, d):
                    points[i + 1:j + 1] = reversed(points[i + 1:j + 1])
                    changed = True
    return points


def gen_random_simple(n: int, seed: Optional[int] = None) -> Polygon:
    """
    Random simple polygon on an integer grid, deterministic per seed.

    Points in general position are drawn with numpy's default_rng and joined
    in random order; crossings are removed by 2-opt moves, each of which
    shortens the tour, so the loop terminates.
    """
    if n < 3:
        raise TooFewVertices(f"Polygon needs at least 3 vertices, got {n}")
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    side = RANDOM_GRID_FACTOR * n

    points: List[Tuple[int, int]] = []
    while len(points) < n:
        x, y = (int(c) for c in rng.integers(0, side, size=2))
        candidate = points + [(x, y)]
        if (x, y) not in points and _general_position(candidate):
            points = candidate

    order = rng.permutation(n)
    tour = _untangle([points[i] for i in order])
    return validate_polygon(tour)


def generate(spec: GeneratorSpec) -> Tuple[Polygon, Optional[DecomposableMeasure]]:
    """Run the generator named by spec.kind; only kites come with a measure."""
    if spec.kind in ("spiral", "convex", "random") and spec.n is None:
        raise InvalidInput(f"Generator '{spec.kind}' needs n (q for spiral)")
    if spec.kind == "spiral":
        return gen_spiral(spec.n), None
    if spec.kind == "kites":
        return gen_kites(spec.values)
    if spec.kind == "convex":
        return gen_convex_regular(spec.n, spec.scale), None
    if spec.kind == "random":
        return gen_random_simple(spec.n, spec.seed), None
    raise InvalidInput(f"Unknown generator '{spec.kind}'. Available: {', '.join(GENERATOR_KINDS)}")
