import logging
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence

from src.diverse.sum_dnt import DntInstance, greedy_sum_dnt, local_search_swap
from src.geometry.measures import get_measure
from src.geometry.polygon import Diagonal, Polygon
from src.oracle.enumerate import catalan
from src.oracle.optimum import oracle_sum_dnt
from src.triangulation.triangulation import Certificate, DiverseSolution, Triangulation, make_triangulation
from src.utils.errors import Infeasible, InvalidInput, InvariantViolation, KTooLarge, NotConvex

logger = logging.getLogger(__name__)


def zigzag_diagonals(n: int, start: int) -> List[Diagonal]:
    """
    Diagonals of the zigzag triangulation of a convex n-gon anchored at vertex start.

    The path visits start, start+2, start-1, start+3, start-2, ... (mod n); its
    non-boundary steps are the n-3 diagonals. Every diagonal (a, b) on it has
    a + b congruent to 2*start + 1 or 2*start + 2 modulo n.
    """
    path = [start % n]
    up, down = start + 2, start - 1
    take_up = True
    while len(path) < n - 1:
        if take_up:
            path.append(up % n)
            up += 1
        else:
            path.append(down % n)
            down -= 1
        take_up = not take_up

    diagonals = []
    for a, b in zip(path, path[1:]):
        a, b = min(a, b), max(a, b)
        if b - a not in (1, n - 1):
            diagonals.append((a, b))
    return sorted(diagonals)


def _pairwise_disjoint(triangulations: Sequence[Triangulation]) -> bool:
    return all(not (a.diagonal_set & b.diagonal_set) for a, b in combinations(triangulations, 2))


def convex_disjoint(polygon: Polygon, k: int) -> DiverseSolution:
    """
    k pairwise edge-disjoint triangulations of a convex polygon.

    Zigzag s uses only diagonals with a + b in {2s+1, 2s+2} mod n, so for
    2k <= n the zigzags 0..k-1 occupy 2k distinct residue classes and never
    share a diagonal.

    Args:
        polygon: Convex polygon
        k: Number of triangulations, 2 <= k <= n // 2

    Returns:
        DiverseSolution whose pairwise symmetric differences all equal 2(n-3)
    """
    if not polygon.is_convex:
        raise NotConvex("Disjoint triangulations need a convex polygon")
    n = polygon.n
    if k < 2:
        raise InvalidInput(f"k must be at least 2, got {k}")
    if k > n // 2:
        raise KTooLarge(f"A convex {n}-gon has at most {n // 2} disjoint zigzag triangulations, asked for {k}")

    chosen = [make_triangulation(polygon, zigzag_diagonals(n, s)) for s in range(k)]
    if not _pairwise_disjoint(chosen):
        raise InvariantViolation(f"Zigzags 0..{k - 1} share a diagonal on the {n}-gon")

    logger.info(f"Built {k} disjoint triangulations of a convex {n}-gon")
    return DiverseSolution.build(chosen, Certificate("disjoint", beta=Fraction(1)))


def convex_sum_dt_ptas(polygon: Polygon, k: int, epsilon) -> DiverseSolution:
    """
    Sum-DT on a convex polygon within a factor 1 - epsilon of the optimum.

    k <= n/2 uses disjoint zigzags, which reach the absolute maximum
    k(k-1)(n-3). k >= 2/epsilon uses greedy insertion plus swaps, whose factor
    1 - 2/(k+1) is then at least 1 - epsilon. The remaining k are few enough
    for an exhaustive scan.
    """
    if not polygon.is_convex:
        raise NotConvex("The convex Sum-DT scheme needs a convex polygon")
    if epsilon is None or epsilon <= 0:
        raise InvalidInput(f"epsilon must be positive, got {epsilon}")
    n = polygon.n
    total = catalan(n - 2)
    if total < k:
        raise Infeasible(total, k)

    if k <= n // 2:
        logger.info(f"Convex Sum-DT: k={k} <= n/2, disjoint construction")
        return convex_disjoint(polygon, k)

    inst = DntInstance(polygon, get_measure("const0", polygon), 1, k)
    if k >= 2 / Fraction(str(epsilon)):
        logger.info(f"Convex Sum-DT: k={k} >= 2/epsilon, greedy and swap")
        return local_search_swap(inst, greedy_sum_dnt(inst, sigma_star_value=0), sigma_star_value=0)

    logger.info(f"Convex Sum-DT: k={k} < 2/epsilon, exhaustive scan")
    solution = oracle_sum_dnt(polygon, inst.sigma, 1, k)
    solution.certificate.method = "exhaustive"
    return solution
