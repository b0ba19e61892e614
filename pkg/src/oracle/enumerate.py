import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from config.config import ENUMERATION_LIMIT, SHOW_PROGRESS
from src.geometry.polygon import Polygon
from src.geometry.predicates import segments_cross
from src.triangulation.triangulation import Triangulation, make_triangulation
from src.utils.errors import ResourceLimit

logger = logging.getLogger(__name__)


@dataclass
class EnumerationResult:
    triangulations: List[Triangulation]
    count: int


def catalan(m: int) -> int:
    """m-th Catalan number; a convex (m+2)-gon has catalan(m) triangulations."""
    if m < 0:
        return 0
    return comb(2 * m, m) // (m + 1)


def count_triangulations(polygon: Polygon) -> int:
    """
    Exact number of triangulations by the chain recurrence on sub-polygons P[i:j].
    """
    n = polygon.n
    counts: Dict[Tuple[int, int], int] = {}
    for i in range(n - 1):
        counts[(i, i + 1)] = 1
    for length in range(2, n):
        for i in range(n - length):
            j = i + length
            if not polygon.is_edge_or_diagonal(i, j):
                continue
            total = 0
            for m in range(i + 1, j):
                left = counts.get((i, m), 0)
                right = counts.get((m, j), 0)
                if left and right:
                    total += left * right
            counts[(i, j)] = total
    return counts.get((0, n - 1), 0)


def enumerate_all(polygon: Polygon, limit: Optional[int] = None) -> EnumerationResult:
    """
    Enumerate every triangulation.

    The triangle on the boundary edge (0, n-1) is fixed first and both sides
    are enumerated recursively, with sub-chain results memoized on (i, j).

    Args:
        polygon: Polygon to triangulate
        limit: Abort with ResourceLimit if the count exceeds this value

    Returns:
        EnumerationResult in canonical order
    """
    limit = ENUMERATION_LIMIT if limit is None else limit
    total = count_triangulations(polygon)
    if total > limit:
        raise ResourceLimit(total, limit, what="Triangulations to enumerate")

    n = polygon.n

    @lru_cache(maxsize=None)
    def chain(i: int, j: int) -> Tuple[frozenset, ...]:
        if j == i + 1:
            return (frozenset(),)
        results = []
        for m in range(i + 1, j):
            if not (polygon.is_edge_or_diagonal(i, m) and polygon.is_edge_or_diagonal(m, j)):
                continue
            created = frozenset(d for d in ((i, m), (m, j)) if d[1] - d[0] > 1)
            for left in chain(i, m):
                for right in chain(m, j):
                    results.append(left | right | created)
        return tuple(results)

    raw = chain(0, n - 1)
    triangulations = [
        make_triangulation(polygon, diags)
        for diags in tqdm(raw, desc="Materializing triangulations", disable=not SHOW_PROGRESS)
    ]
    triangulations.sort(key=lambda t: t.diagonals)
    logger.info(f"Enumerated {len(triangulations)} triangulations of a {n}-gon")
    return EnumerationResult(triangulations, len(triangulations))


def enumerate_backtracking(polygon: Polygon) -> List[Triangulation]:
    """
    Independent enumeration: maximal non-crossing subsets of the diagonal
    universe, built by include/exclude backtracking with geometric crossing tests.
    """
    diagonals = list(polygon.diagonals)
    pts = polygon.vertices
    target = polygon.n - 3
    found: List[Triangulation] = []

    def crosses(d1, d2) -> bool:
        if set(d1) & set(d2):
            return False
        return segments_cross(pts[d1[0]], pts[d1[1]], pts[d2[0]], pts[d2[1]])

    def extend(idx: int, chosen: List) -> None:
        if len(chosen) == target:
            found.append(make_triangulation(polygon, chosen))
            return
        if len(chosen) + len(diagonals) - idx < target:
            return
        d = diagonals[idx]
        if not any(crosses(d, c) for c in chosen):
            chosen.append(d)
            extend(idx + 1, chosen)
            chosen.pop()
        extend(idx + 1, chosen)

    extend(0, [])
    found.sort(key=lambda t: t.diagonals)
    return found
