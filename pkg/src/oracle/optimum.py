"""
Exhaustive optima over enumerated triangulations, used as ground truth for the solvers.
"""
import logging
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, List, Optional, Sequence, Union

from tqdm import tqdm

from config.config import COMBINATION_LIMIT, MEASURE_TOLERANCE, SHOW_PROGRESS
from src.bct.kbest import KBestList
from src.geometry.measures import DecomposableMeasure, evaluate_measure
from src.geometry.polygon import Polygon
from src.oracle.enumerate import enumerate_all
from src.triangulation.triangulation import Certificate, DiverseSolution, Triangulation
from src.utils.errors import Infeasible, InvalidInput, ResourceLimit

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]


def oracle_bct(
    polygon: Polygon,
    weight: DecomposableMeasure,
    quality: DecomposableMeasure,
    bound: Number,
    k: int,
    sense: str = "minimize",
    constraint_sense: str = "at-most",
    limit: Optional[int] = None,
) -> KBestList:
    """
    First k feasible triangulations sorted by weight, then canonical order.
    """
    tol = 0 if quality.integral else MEASURE_TOLERANCE
    s = 1 if sense == "minimize" else -1

    rows = []
    for t in enumerate_all(polygon, limit).triangulations:
        q = evaluate_measure(quality, t)
        ok = q <= bound + tol if constraint_sense == "at-most" else q >= bound - tol
        if ok:
            rows.append((evaluate_measure(weight, t), q, t))
    rows.sort(key=lambda r: (s * r[0], r[2].diagonals))
    rows = rows[:k]

    result = KBestList.padded(k, [r[0] for r in rows], [r[2] for r in rows], [r[1] for r in rows], sense)
    if result.found < k:
        raise Infeasible(result.found, k, partial=result)
    return result


def _sd_matrix(triangulations: Sequence[Triangulation]) -> List[List[int]]:
    masks = [t.mask for t in triangulations]
    return [[bin(a ^ b).count("1") for b in masks] for a in masks]


def best_subset(
    triangulations: Sequence[Triangulation],
    k: int,
    score: Callable[[List[List[int]], Sequence[int]], int],
) -> List[Triangulation]:
    total = comb(len(triangulations), k)
    if total > COMBINATION_LIMIT:
        raise ResourceLimit(total, COMBINATION_LIMIT, what="k-subsets to scan")

    sd = _sd_matrix(triangulations)
    best_value, best = -1, None
    subsets = combinations(range(len(triangulations)), k)
    for subset in tqdm(subsets, total=total, desc="Scanning k-subsets", disable=not SHOW_PROGRESS):
        value = score(sd, subset)
        if value > best_value:
            best_value, best = value, subset
    return [triangulations[i] for i in best]


def sum_score(sd, subset) -> int:
    return sum(sd[a][b] for a, b in combinations(subset, 2))


def min_score(sd, subset) -> int:
    return min(sd[a][b] for a, b in combinations(subset, 2))


def nice_triangulations(
    polygon: Polygon,
    sigma: DecomposableMeasure,
    alpha: Number = 1,
    limit: Optional[int] = None,
) -> List[Triangulation]:
    """Every triangulation with sigma(T) <= alpha * sigma*, in canonical order."""
    triangulations = enumerate_all(polygon, limit).triangulations
    values = [evaluate_measure(sigma, t) for t in triangulations]
    best = min(values)
    tol = 0 if sigma.integral else MEASURE_TOLERANCE
    threshold = alpha * best + tol if best != float("inf") else best
    return [t for t, v in zip(triangulations, values) if v <= threshold]


def oracle_sum_dnt(
    polygon: Polygon,
    sigma: DecomposableMeasure,
    alpha: Number,
    k: int,
    limit: Optional[int] = None,
) -> DiverseSolution:
    """Exact Sum-DNT optimum by scanning all k-subsets of the nice triangulations."""
    if k < 2:
        raise InvalidInput(f"k must be at least 2, got {k}")
    nice = nice_triangulations(polygon, sigma, alpha, limit)
    if len(nice) < k:
        raise Infeasible(len(nice), k)
    chosen = best_subset(nice, k, sum_score)
    solution = DiverseSolution.build(chosen, Certificate("oracle", alpha_bound_checked=True, beta=Fraction(1)))
    logger.info(f"Oracle Sum-DNT over {len(nice)} nice triangulations: sum = {solution.sum_sd}")
    return solution


def oracle_min_dt(polygon: Polygon, k: int, limit: Optional[int] = None) -> DiverseSolution:
    """Exact Min-DT optimum by scanning all k-subsets of triangulations."""
    if k < 2:
        raise InvalidInput(f"k must be at least 2, got {k}")
    triangulations = enumerate_all(polygon, limit).triangulations
    if len(triangulations) < k:
        raise Infeasible(len(triangulations), k)
    chosen = best_subset(triangulations, k, min_score)
    solution = DiverseSolution.build(chosen, Certificate("oracle", beta=Fraction(1)))
    logger.info(f"Oracle Min-DT over {len(triangulations)} triangulations: min = {solution.min_sd}")
    return solution
