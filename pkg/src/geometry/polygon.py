import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Sequence, Tuple

from src.geometry.predicates import Point, in_cone, on_segment, orient, segments_intersect
from src.utils.errors import DegenerateVertex, InvalidInput, NotSimple, TooFewVertices

logger = logging.getLogger(__name__)

Diagonal = Tuple[int, int]
Triangle = Tuple[int, int, int]


@dataclass(frozen=True)
class Polygon:
    """Simple polygon with integer vertices in counterclockwise order."""
    vertices: Tuple[Point, ...]
    flipped: bool = field(default=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __repr__(self):
        return f"<Polygon(n={self.n})>"

    def adjacent(self, i: int, j: int) -> bool:
        """Whether i and j are the endpoints of a boundary edge."""
        d = abs(i - j)
        return d == 1 or d == self.n - 1

    @cached_property
    def diagonals(self) -> Tuple[Diagonal, ...]:
        return tuple(
            (i, j)
            for i in range(self.n)
            for j in range(i + 2, self.n)
            if is_valid_diagonal(self, i, j)
        )

    @cached_property
    def diagonal_set(self) -> FrozenSet[Diagonal]:
        return frozenset(self.diagonals)

    @cached_property
    def diagonal_rank(self) -> Dict[Diagonal, int]:
        return {d: r for r, d in enumerate(self.diagonals)}

    def is_edge_or_diagonal(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return self.adjacent(i, j) or (i, j) in self.diagonal_set

    @cached_property
    def is_convex(self) -> bool:
        n = self.n
        return all(
            orient(self.vertices[i - 1], self.vertices[i], self.vertices[(i + 1) % n]) > 0
            for i in range(n)
        )


def _signed_area2(points: Sequence[Point]) -> int:
    n = len(points)
    return sum(
        points[i][0] * points[(i + 1) % n][1] - points[(i + 1) % n][0] * points[i][1]
        for i in range(n)
    )


def validate_polygon(points: Sequence[Sequence[int]]) -> Polygon:
    """
    Validate a vertex list and normalize it to a counterclockwise Polygon.

    Args:
        points: Vertex coordinates as integer pairs

    Returns:
        Polygon with vertex 0 kept in place and counterclockwise orientation
    """
    if not points:
        raise TooFewVertices("Polygon has no vertices")

    vertices: List[Point] = []
    for p in points:
        if len(p) != 2 or not all(isinstance(c, int) and not isinstance(c, bool) for c in p):
            raise InvalidInput(f"Vertex {p!r} is not a pair of integers")
        vertices.append((p[0], p[1]))

    n = len(vertices)
    if n < 3:
        raise TooFewVertices(f"Polygon needs at least 3 vertices, got {n}")

    if len(set(vertices)) != n:
        raise DegenerateVertex("Polygon has duplicate vertices")

    for i in range(n):
        a, b, c = vertices[i - 1], vertices[i], vertices[(i + 1) % n]
        if orient(a, b, c) == 0:
            raise DegenerateVertex(f"Vertices {(i - 1) % n}, {i}, {(i + 1) % n} are collinear")

    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n]):
                raise NotSimple((i, (i + 1) % n), (j, (j + 1) % n))

    flipped = _signed_area2(vertices) < 0
    if flipped:
        vertices = [vertices[0]] + vertices[:0:-1]
        logger.debug("Clockwise input reoriented to counterclockwise")

    return Polygon(tuple(vertices), flipped=flipped)


def is_valid_diagonal(polygon: Polygon, i: int, j: int) -> bool:
    """
    Whether the open segment between vertices i and j lies strictly inside the polygon.

    Boundary edges and adjacent pairs return False. Only exact integer
    predicates are used.
    """
    n = polygon.n
    if i == j or not (0 <= i < n and 0 <= j < n) or polygon.adjacent(i, j):
        return False

    pts = polygon.vertices
    a, b = pts[i], pts[j]

    for k in range(n):
        if k in (i, j):
            continue
        if orient(a, b, pts[k]) == 0 and on_segment(a, b, pts[k]):
            return False

    for k in range(n):
        k2 = (k + 1) % n
        if k in (i, j) or k2 in (i, j):
            continue
        if segments_intersect(a, b, pts[k], pts[k2]):
            return False

    return (
        in_cone(pts[i - 1], a, pts[(i + 1) % n], b)
        and in_cone(pts[j - 1], b, pts[(j + 1) % n], a)
    )


def diagonal_universe(polygon: Polygon) -> List[Diagonal]:
    """All valid diagonals in (i, j)-lexicographic order."""
    return list(polygon.diagonals)
