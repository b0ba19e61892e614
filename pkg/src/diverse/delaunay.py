"""
Diverse Delaunay triangulations of a simple polygon.

The Delaunay triangulations of a polygon share a forced part T' and differ
only inside maximal co-circular convex pieces C_1..C_m, each of which may be
triangulated freely. Every Delaunay triangulation is therefore a choice of one
triangulation per piece, and the symmetric difference splits into per-piece
terms.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import comb, prod
from typing import Dict, List, Sequence, Tuple

from config.config import COMBINATION_LIMIT, ENUMERATION_LIMIT, FLIP_LIMIT_FACTOR
from src.bct.solver import optimal_triangulation
from src.diverse.convex import zigzag_diagonals
from src.diverse.sum_dnt import DntInstance, greedy_sum_dnt, local_search_swap
from src.geometry.measures import get_measure, table_measure
from src.geometry.polygon import Diagonal, Polygon, validate_polygon
from src.geometry.predicates import circumcircle, incircle, orient
from src.oracle.enumerate import catalan, enumerate_all
from src.oracle.optimum import best_subset, sum_score
from src.triangulation.triangulation import Certificate, DiverseSolution, Triangulation, make_triangulation
from src.utils.errors import Infeasible, InvalidInput, InvariantViolation, NotDelaunayTriangulable, ResourceLimit

logger = logging.getLogger(__name__)


def _opposite_vertices(triangulation: Triangulation) -> Dict[Diagonal, List[int]]:
    """For every diagonal, the apexes of its two adjacent triangles."""
    diagonal_set = triangulation.diagonal_set
    opposite: Dict[Diagonal, List[int]] = {}
    for tri in triangulation.triangles:
        for a, b in combinations(tri, 2):
            if (a, b) in diagonal_set:
                (c,) = set(tri) - {a, b}
                opposite.setdefault((a, b), []).append(c)
    return opposite


def diagonal_incircle(polygon: Polygon, diagonal: Diagonal, apex: int, other: int) -> int:
    """
    In-circle value of vertex other against the triangle (diagonal, apex).

    Positive means other lies strictly inside the circumcircle, so the diagonal
    is illegal; zero means the four vertices are co-circular.
    """
    pts = polygon.vertices
    a, b, c = pts[diagonal[0]], pts[diagonal[1]], pts[apex]
    if orient(a, b, c) < 0:
        a, b = b, a
    return incircle(a, b, c, pts[other])


def is_delaunay(triangulation: Triangulation) -> bool:
    """Whether every diagonal passes the exact local in-circle test."""
    polygon = triangulation.polygon
    for d, (c, e) in _opposite_vertices(triangulation).items():
        if diagonal_incircle(polygon, d, c, e) > 0:
            return False
    return True


def legalize(polygon: Polygon) -> Triangulation:
    """
    Lawson flips from the canonical-first triangulation until every diagonal is legal.

    Raises:
        NotDelaunayTriangulable: if FLIP_LIMIT_FACTOR * n^3 flips do not reach a
            locally Delaunay triangulation
    """
    _, current = optimal_triangulation(polygon, get_measure("const0", polygon))
    n = polygon.n
    limit = FLIP_LIMIT_FACTOR * n ** 3
    flips = 0
    while True:
        illegal = None
        for d, (c, e) in sorted(_opposite_vertices(current).items()):
            if diagonal_incircle(polygon, d, c, e) > 0:
                illegal = (d, c, e)
                break
        if illegal is None:
            break
        if flips >= limit:
            raise NotDelaunayTriangulable(f"Legalization did not converge within {limit} flips")
        d, c, e = illegal
        diagonals = [x for x in current.diagonals if x != d] + [(min(c, e), max(c, e))]
        current = make_triangulation(polygon, diagonals)
        flips += 1

    logger.debug(f"Legalized {n}-gon after {flips} flips")
    return current


def _piece_chords(group: Sequence[int]) -> List[Diagonal]:
    """Diagonals of a piece: pairs that are not consecutive around the piece."""
    m = len(group)
    return [(group[a], group[b]) for a, b in combinations(range(m), 2) if b - a not in (1, m - 1)]


@dataclass
class CocircularDecomposition:
    """A Delaunay triangulation split into its forced diagonals and co-circular pieces."""
    delaunay: Triangulation
    forced: Tuple[Diagonal, ...]
    groups: List[Tuple[int, ...]]

    @property
    def count(self) -> int:
        """Number of Delaunay triangulations: product of Catalan counts of the pieces."""
        return prod(catalan(len(g) - 2) for g in self.groups)


def cocircular_decomposition(polygon: Polygon) -> CocircularDecomposition:
    """
    Find the co-circular pieces of the polygon's Delaunay triangulations.

    Triangles joined by a diagonal with in-circle value exactly 0 share a
    circumcircle and are merged with a union-find; each merged class with at
    least two triangles is a piece. Circumcircles are re-checked with exact
    rational arithmetic.
    """
    delaunay = legalize(polygon)
    triangles = list(delaunay.triangles)
    index = {t: i for i, t in enumerate(triangles)}
    parent = list(range(len(triangles)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def containing(d: Diagonal, apex: int) -> int:
        return index[tuple(sorted((d[0], d[1], apex)))]

    for d, (c, e) in _opposite_vertices(delaunay).items():
        if diagonal_incircle(polygon, d, c, e) == 0:
            parent[find(containing(d, c))] = find(containing(d, e))

    members: Dict[int, List[Tuple[int, int, int]]] = {}
    for t in triangles:
        members.setdefault(find(index[t]), []).append(t)

    pts = polygon.vertices
    groups = []
    for tris in members.values():
        if len(tris) < 2:
            continue
        circles = {circumcircle(pts[a], pts[b], pts[c]) for a, b, c in tris}
        if len(circles) != 1:
            raise InvariantViolation(f"Triangles {tris} were merged but have different circumcircles")
        groups.append(tuple(sorted({v for t in tris for v in t})))
    groups.sort()

    internal = {d for g in groups for d in _piece_chords(g)}
    forced = tuple(d for d in delaunay.diagonals if d not in internal)
    logger.info(f"Co-circular decomposition: {len(groups)} pieces of sizes {[len(g) for g in groups]}, {len(forced)} forced diagonals")
    return CocircularDecomposition(delaunay, forced, groups)


def _piece_polygon(polygon: Polygon, group: Sequence[int]) -> Polygon:
    return validate_polygon([polygon.vertices[v] for v in group])


def _to_global(group: Sequence[int], diagonals) -> List[Diagonal]:
    return [(group[a], group[b]) for a, b in diagonals]


def _assemble(polygon: Polygon, decomp: CocircularDecomposition, parts: Sequence[Sequence[Diagonal]]) -> Triangulation:
    diagonals = list(decomp.forced)
    for part in parts:
        diagonals.extend(part)
    return make_triangulation(polygon, diagonals)


def _piece_triangulations(polygon: Polygon, group: Sequence[int]) -> List[List[Diagonal]]:
    local = enumerate_all(_piece_polygon(polygon, group)).triangulations
    return [_to_global(group, t.diagonals) for t in local]


def _best_multiset(options: List[List[Diagonal]], k: int) -> List[List[Diagonal]]:
    """k choices (repetition allowed) maximizing the pairwise symmetric-difference sum."""
    total = comb(len(options) + k - 1, k)
    if total > COMBINATION_LIMIT:
        raise ResourceLimit(total, COMBINATION_LIMIT, what="Piece multisets to scan")
    sets = [frozenset(o) for o in options]
    best_value, best = -1, None
    for choice in combinations_with_replacement(range(len(options)), k):
        value = sum(len(sets[a] ^ sets[b]) for a, b in combinations(choice, 2))
        if value > best_value:
            best_value, best = value, choice
    return [options[i] for i in best]


def delaunay_indicator(polygon: Polygon, decomp: CocircularDecomposition):
    """Integral edge measure: 0 on forced diagonals and chords of a piece, 1 elsewhere."""
    allowed = set(decomp.forced) | {d for g in decomp.groups for d in _piece_chords(g)}
    atoms = {d: (0 if d in allowed else 1) for d in polygon.diagonals}
    return table_measure(polygon, atoms, name="non-delaunay")


def all_delaunay(polygon: Polygon, decomp: CocircularDecomposition) -> List[Triangulation]:
    """Every Delaunay triangulation, in canonical order."""
    if decomp.count > ENUMERATION_LIMIT:
        raise ResourceLimit(decomp.count, ENUMERATION_LIMIT, what="Delaunay triangulations to enumerate")
    options = [_piece_triangulations(polygon, g) for g in decomp.groups]
    result = [_assemble(polygon, decomp, parts) for parts in product(*options)]
    return sorted(result, key=lambda t: t.diagonals)


def diverse_delaunay(polygon: Polygon, k: int, epsilon) -> DiverseSolution:
    """
    k distinct Delaunay triangulations with near-maximal sum diversity.

    Args:
        polygon: Simple polygon
        k: Number of triangulations, at least 2
        epsilon: Accuracy of the approximate branch, > 0

    Returns:
        DiverseSolution; every member passes is_delaunay
    """
    if k < 2:
        raise InvalidInput(f"k must be at least 2, got {k}")
    if epsilon is None or epsilon <= 0:
        raise InvalidInput(f"epsilon must be positive, got {epsilon}")

    decomp = cocircular_decomposition(polygon)
    if decomp.count < k:
        raise Infeasible(decomp.count, k)

    if any(len(g) // 2 >= k for g in decomp.groups):
        logger.info(f"Delaunay Sum-DT: a piece admits {k} disjoint triangulations")
        per_piece = []
        for g in decomp.groups:
            if len(g) // 2 >= k:
                per_piece.append([_to_global(g, zigzag_diagonals(len(g), s)) for s in range(k)])
            else:
                per_piece.append(_best_multiset(_piece_triangulations(polygon, g), k))
        chosen = [_assemble(polygon, decomp, [choice[i] for choice in per_piece]) for i in range(k)]
        solution = DiverseSolution.build(chosen, Certificate("delaunay-disjoint", alpha_bound_checked=True, beta=Fraction(1)))
    elif k >= 2 / Fraction(str(epsilon)):
        logger.info(f"Delaunay Sum-DT: k={k} >= 2/epsilon, greedy and swap")
        inst = DntInstance(polygon, delaunay_indicator(polygon, decomp), 1, k)
        solution = local_search_swap(inst, greedy_sum_dnt(inst, sigma_star_value=0), sigma_star_value=0)
        solution.certificate.method = "delaunay-swap"
    else:
        logger.info(f"Delaunay Sum-DT: exhaustive scan over {decomp.count} Delaunay triangulations")
        chosen = best_subset(all_delaunay(polygon, decomp), k, sum_score)
        solution = DiverseSolution.build(chosen, Certificate("delaunay-exhaustive", alpha_bound_checked=True, beta=Fraction(1)))

    for t in solution.triangulations:
        if not is_delaunay(t):
            raise InvariantViolation(f"{t} is not locally Delaunay")
    return solution
