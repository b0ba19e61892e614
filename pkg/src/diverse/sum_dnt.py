"""
Sum-DNT: k nice triangulations maximizing the sum of pairwise symmetric differences.

For a history T_1..T_i, sum_j |T delta T_j| = 2i(n-3) - 2 w_i(T), where the
frequency weight w_i(T) counts the (diagonal, T_j) incidences of T. The
farthest triangulation is therefore a w_i-minimizer, and a (|history|+1)-best
BCT query under w_i always contains one outside the history.
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Union

from config.config import DEFAULT_EPSILON, MEASURE_TOLERANCE
from src.bct.dp import ChainSpec, run_chain_dp
from src.bct.fptas import solve_bct_fptas_kbest
from src.bct.solver import BctInstance, sigma_star, solve_bct
from src.geometry.measures import DecomposableMeasure, evaluate_measure, snapped, table_measure
from src.geometry.polygon import Polygon
from src.triangulation.triangulation import Certificate, DiverseSolution, Triangulation, from_mask, symmetric_difference
from src.utils.errors import Infeasible, InvalidInput, InvariantViolation, PolygonMismatch

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]
FarthestStep = Callable[["DntInstance", List[Triangulation], Number], Triangulation]

METHODS = ("auto", "greedy", "swap", "optimal-quality", "convex", "delaunay", "oracle")


@dataclass
class DntInstance:
    polygon: Polygon
    sigma: DecomposableMeasure
    alpha: Number = 1
    k: int = 2
    epsilon: Optional[Number] = None

    def __post_init__(self):
        if self.k < 2:
            raise InvalidInput(f"k must be at least 2, got {self.k}")
        if self.alpha < 1:
            raise InvalidInput(f"alpha must be at least 1, got {self.alpha}")
        if self.epsilon is not None and self.epsilon <= 0:
            raise InvalidInput(f"epsilon must be positive, got {self.epsilon}")

    @property
    def uses_fptas(self) -> bool:
        """Real-valued additive sigma with alpha > 1 and epsilon set goes through the FPTAS."""
        return (
            self.epsilon is not None
            and self.alpha > 1
            and not self.sigma.integral
            and self.sigma.combiner == "sum"
        )

    @property
    def alpha_effective(self) -> Number:
        if self.uses_fptas:
            return Fraction(self.alpha) * (1 + Fraction(self.epsilon))
        return Fraction(self.alpha)


def frequency_weight(history: Sequence[Triangulation], polygon: Optional[Polygon] = None) -> DecomposableMeasure:
    """
    Edge measure counting, for each diagonal, how many history triangulations use it.

    Args:
        history: Triangulations already chosen
        polygon: Polygon the measure is bound to; required when history is empty

    Returns:
        Integral sum-combiner measure; const0 for an empty history
    """
    if polygon is None:
        if not history:
            raise InvalidInput("frequency_weight needs a polygon when the history is empty")
        polygon = history[0].polygon
    for t in history:
        if t.polygon != polygon:
            raise PolygonMismatch("History triangulations belong to different polygons")

    if not history:
        return DecomposableMeasure("const0", "edge", "sum", lambda e: 0, integral=True, polygon=polygon)

    counts = Counter(d for t in history for d in t.diagonals)
    return table_measure(polygon, dict(counts), name="frequency", default=0)


def nice_bound(inst: DntInstance, sigma_star_value: Number) -> Number:
    """alpha * sigma*, floored for integral sigma so the integer DPs see an exact bound."""
    if sigma_star_value == math.inf:
        return math.inf
    if inst.sigma.integral:
        return math.floor(Fraction(inst.alpha) * sigma_star_value)
    return float(inst.alpha) * sigma_star_value


def _first_new(triangulations: Sequence[Triangulation], history: Sequence[Triangulation]) -> Optional[Triangulation]:
    seen = {t.diagonals for t in history}
    for t in triangulations:
        if t.diagonals not in seen:
            return t
    return None


def farthest_insertion_step(inst: DntInstance, history: List[Triangulation], sigma_star_value: Number) -> Triangulation:
    """
    A nice triangulation outside the history minimizing the frequency weight.

    Args:
        inst: Sum-DNT instance
        history: Distinct nice triangulations chosen so far
        sigma_star_value: Optimum of sigma over all triangulations

    Returns:
        Farthest nice triangulation from the history, canonical-first among ties
    """
    polygon = inst.polygon
    weight = frequency_weight(history, polygon)
    bct = BctInstance(polygon, weight, inst.sigma, nice_bound(inst, sigma_star_value), k=len(history) + 1)

    try:
        if inst.uses_fptas:
            result = solve_bct_fptas_kbest(bct, inst.epsilon)
        else:
            result = solve_bct(bct, W=len(history) * (polygon.n - 3))
    except Infeasible as e:
        if e.partial is None:
            raise
        result = e.partial

    chosen = _first_new(result.triangulations, history)
    if chosen is None:
        raise Infeasible(len(history), len(history) + 1)
    return chosen


def optimal_quality_step(inst: DntInstance, history: List[Triangulation], sigma_star_value: Number) -> Triangulation:
    """
    Farthest step restricted to sigma-optimal triangulations.

    Triangulations are ranked by the vector (sigma, frequency weight) in
    lexicographic order, so the (|history|+1)-best list starts with the
    sigma-optimal ones sorted by frequency weight.
    """
    polygon = inst.polygon
    sigma = snapped(inst.sigma, MEASURE_TOLERANCE)
    weight = frequency_weight(history, polygon)
    root = run_chain_dp(polygon, ChainSpec([sigma, weight], [1, 1]), len(history) + 1)

    candidates = [from_mask(polygon, -entry[-1]) for entry in root.get(0, [])]
    chosen = _first_new(candidates, history)
    tol = 0 if inst.sigma.integral else MEASURE_TOLERANCE
    if chosen is None or evaluate_measure(inst.sigma, chosen) > sigma_star_value + tol:
        raise Infeasible(len(history), len(history) + 1)
    return chosen


def _check_nice(inst: DntInstance, triangulations: Sequence[Triangulation], sigma_star_value: Number, alpha: Number) -> None:
    if sigma_star_value == math.inf:
        return
    tol = 0 if inst.sigma.integral else MEASURE_TOLERANCE
    limit = float(alpha) * sigma_star_value + tol
    for t in triangulations:
        value = evaluate_measure(inst.sigma, t)
        if value > limit:
            raise InvariantViolation(f"{t} has quality {value}, above alpha * sigma* = {limit}")


def greedy_sum_dnt(inst: DntInstance, step: Optional[FarthestStep] = None, sigma_star_value: Optional[Number] = None) -> DiverseSolution:
    """
    Farthest insertion: add the farthest nice triangulation k times.

    Args:
        inst: Sum-DNT instance
        step: Farthest-triangulation oracle; farthest_insertion_step by default
        sigma_star_value: Precomputed sigma*; computed when omitted

    Returns:
        DiverseSolution with beta = 1/2
    """
    step = step or farthest_insertion_step
    if sigma_star_value is None:
        sigma_star_value = sigma_star(inst.polygon, inst.sigma)
    logger.info(f"Greedy Sum-DNT: n={inst.polygon.n}, k={inst.k}, alpha={inst.alpha}, sigma*={sigma_star_value}")

    history: List[Triangulation] = []
    for _ in range(inst.k):
        try:
            history.append(step(inst, history, sigma_star_value))
        except Infeasible:
            raise Infeasible(len(history), inst.k, partial=list(history))

    _check_nice(inst, history, sigma_star_value, inst.alpha_effective)
    certificate = Certificate(
        "greedy",
        alpha_bound_checked=True,
        beta=Fraction(1, 2),
        alpha_effective=inst.alpha_effective,
    )
    return DiverseSolution.build(history, certificate)


def swap_beta(k: int) -> Fraction:
    """Guaranteed factor of the swap local search: max(1/2, 1 - 2/(k+1))."""
    return max(Fraction(1, 2), 1 - Fraction(2, k + 1))


def swap_round_limit(k: int) -> int:
    return math.ceil(4 * k * math.log2(k + 1))


def local_search_swap(
    inst: DntInstance,
    initial: DiverseSolution,
    step: Optional[FarthestStep] = None,
    sigma_star_value: Optional[Number] = None,
) -> DiverseSolution:
    """
    Improve a k-set by swapping one member for the farthest triangulation from the others.

    Each round tries every position j, applies the best strictly improving
    swap (lowest j on ties) and stops when no swap improves the sum or the
    round limit is reached.
    """
    step = step or farthest_insertion_step
    if sigma_star_value is None:
        sigma_star_value = sigma_star(inst.polygon, inst.sigma)

    current = list(initial.triangulations)
    k = len(current)
    rounds = swap_round_limit(k)
    swaps = 0
    for _ in range(rounds):
        best_gain, best_move = 0, None
        for j in range(k):
            rest = current[:j] + current[j + 1:]
            candidate = step(inst, rest, sigma_star_value)
            old = sum(symmetric_difference(current[j], t) for t in rest)
            new = sum(symmetric_difference(candidate, t) for t in rest)
            if new - old > best_gain:
                best_gain, best_move = new - old, (j, candidate)
        if best_move is None:
            break
        j, candidate = best_move
        current[j] = candidate
        swaps += 1
        logger.debug(f"Swap at position {j} gained {best_gain}")

    logger.info(f"Local search finished after {swaps} swaps (limit {rounds} rounds)")
    _check_nice(inst, current, sigma_star_value, inst.alpha_effective)
    certificate = Certificate(
        "swap",
        alpha_bound_checked=True,
        beta=swap_beta(k),
        alpha_effective=inst.alpha_effective,
    )
    return DiverseSolution.build(current, certificate)


def diverse_optimal_quality(inst: DntInstance) -> DiverseSolution:
    """
    k diverse triangulations that are all exactly sigma-optimal.

    A min/max sigma has no additive first coordinate to rank by, so it goes
    through the general greedy and swap pipeline with alpha = 1.
    """
    if inst.alpha != 1:
        raise InvalidInput(f"The optimal-quality path needs alpha = 1, got {inst.alpha}")

    value = sigma_star(inst.polygon, inst.sigma)
    step = optimal_quality_step if inst.sigma.combiner == "sum" else farthest_insertion_step
    initial = greedy_sum_dnt(inst, step, value)
    solution = local_search_swap(inst, initial, step, value)
    solution.certificate.method = "optimal-quality"
    return solution


def solve_sum_dnt(inst: DntInstance, method: str = "auto") -> DiverseSolution:
    """
    Dispatch a Sum-DNT instance to one of the solvers.

    Args:
        inst: Sum-DNT instance
        method: auto, greedy, swap, optimal-quality, convex, delaunay or oracle

    Returns:
        DiverseSolution with its certificate
    """
    if method not in METHODS:
        raise InvalidInput(f"Unknown method '{method}'. Available: {', '.join(METHODS)}")

    if method == "auto":
        method = "optimal-quality" if inst.alpha == 1 and inst.sigma.combiner == "sum" else "swap"
    logger.info(f"Sum-DNT method: {method}")

    if method == "greedy":
        return greedy_sum_dnt(inst)
    if method == "swap":
        value = sigma_star(inst.polygon, inst.sigma)
        return local_search_swap(inst, greedy_sum_dnt(inst, sigma_star_value=value), sigma_star_value=value)
    if method == "optimal-quality":
        return diverse_optimal_quality(inst)
    if method == "convex":
        from src.diverse.convex import convex_sum_dt_ptas
        return convex_sum_dt_ptas(inst.polygon, inst.k, inst.epsilon or DEFAULT_EPSILON)
    if method == "delaunay":
        from src.diverse.delaunay import diverse_delaunay
        return diverse_delaunay(inst.polygon, inst.k, inst.epsilon or DEFAULT_EPSILON)

    from src.oracle.optimum import oracle_sum_dnt
    return oracle_sum_dnt(inst.polygon, inst.sigma, inst.alpha, inst.k)
