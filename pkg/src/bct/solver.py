import heapq
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from config.config import MEASURE_TOLERANCE
from src.bct.dp import ChainSpec, run_chain_dp
from src.bct.kbest import KBestList
from src.geometry.measures import DecomposableMeasure, evaluate_measure, fold2
from src.geometry.polygon import Polygon
from src.triangulation.triangulation import Triangulation, from_mask
from src.utils.errors import Infeasible, InvalidInput, InvariantViolation, MeasureDomainError

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]

SENSES = ("minimize", "maximize")
CONSTRAINT_SENSES = ("at-most", "at-least")


@dataclass
class BctInstance:
    """Optimize weight w subject to a bound B on quality sigma, returning the k best."""
    polygon: Polygon
    weight: DecomposableMeasure
    quality: DecomposableMeasure
    bound: Number
    sense: str = "minimize"
    constraint_sense: str = "at-most"
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInput(f"k must be at least 1, got {self.k}")
        if self.sense not in SENSES:
            raise InvalidInput(f"Unknown sense '{self.sense}'")
        if self.constraint_sense not in CONSTRAINT_SENSES:
            raise InvalidInput(f"Unknown constraint sense '{self.constraint_sense}'")
        if self.bound < 0:
            raise InvalidInput(f"Bound must be nonnegative, got {self.bound}")


def _sign(sense: str) -> int:
    return 1 if sense in ("minimize", "at-most") else -1


def bound_ok(value: Number, bound: Number, constraint_sense: str, integral: bool) -> bool:
    """Whether a quality value satisfies the bound, with tolerance for real-valued measures."""
    tol = 0 if integral else MEASURE_TOLERANCE
    if constraint_sense == "at-most":
        return value <= bound + tol
    return value >= bound - tol


def optimal_triangulation(
    polygon: Polygon,
    measure: DecomposableMeasure,
    sense: str = "minimize",
    cell_limit: Optional[int] = None,
) -> Tuple[Number, Triangulation]:
    """
    Exact optimum of a decomposable measure and its canonical-first witness.
    """
    s = _sign(sense)
    root = run_chain_dp(polygon, ChainSpec([measure], [s]), 1, cell_limit)
    entry = root[0][0]
    return s * entry[0], from_mask(polygon, -entry[-1])


def sigma_star(polygon: Polygon, sigma: DecomposableMeasure) -> Number:
    """Best achievable quality: min over all triangulations of sigma(T)."""
    value, _ = optimal_triangulation(polygon, sigma)
    logger.debug(f"sigma* of '{sigma.name}' on {polygon.n}-gon is {value}")
    return value


def weight_upper_bound(polygon: Polygon, weight: DecomposableMeasure) -> Number:
    """Largest value the weight takes on any triangulation."""
    value, _ = optimal_triangulation(polygon, weight, "maximize")
    return value


def distinct_atom_values(polygon: Polygon, measure: DecomposableMeasure) -> int:
    """Number of distinct atom values; bounds the classes of a min/max DP."""
    n = polygon.n
    if measure.base == "edge":
        elements = polygon.diagonals
    else:
        elements = [
            (a, b, c)
            for a in range(n) for b in range(a + 1, n) for c in range(b + 1, n)
            if polygon.is_edge_or_diagonal(a, b) and polygon.is_edge_or_diagonal(b, c)
            and polygon.is_edge_or_diagonal(a, c)
        ]
    values = set()
    for e in elements:
        try:
            values.add(measure.atom(e))
        except MeasureDomainError:
            continue
    return len(values)


def _finish(inst: BctInstance, picked: List[Tuple[Number, int]]) -> KBestList:
    """Turn (weight value, mask) picks into a checked KBestList, raising Infeasible when short."""
    values, witnesses, qualities = [], [], []
    for value, mask in picked:
        t = from_mask(inst.polygon, mask)
        q = evaluate_measure(inst.quality, t)
        if not bound_ok(q, inst.bound, inst.constraint_sense, inst.quality.integral):
            raise InvariantViolation(f"Witness {t} violates the quality bound ({q} vs {inst.bound})")
        values.append(value)
        witnesses.append(t)
        qualities.append(q)

    result = KBestList.padded(inst.k, values, witnesses, qualities, inst.sense)
    if result.found < inst.k:
        raise Infeasible(result.found, inst.k, partial=result)
    return result


def _pick_by_weight_class(inst: BctInstance, root, quality_sign: int) -> List[Tuple[Number, int]]:
    """Scan weight classes best first; inside a class keep feasible entries in canonical order."""
    picked = []
    for w_value in sorted(root, reverse=(inst.sense == "maximize")):
        feasible = [
            e for e in root[w_value]
            if bound_ok(quality_sign * e[0], inst.bound, inst.constraint_sense, inst.quality.integral)
        ]
        feasible.sort(key=lambda e: e[-1])
        picked.extend((w_value, -e[-1]) for e in feasible)
        if len(picked) >= inst.k:
            break
    return picked[:inst.k]


def _pick_by_quality_class(inst: BctInstance, root, feasible_class) -> List[Tuple[Number, int]]:
    s = _sign(inst.sense)
    entries = [e for q_value, bucket in root.items() if feasible_class(q_value) for e in bucket]
    return [(s * e[0], -e[-1]) for e in heapq.nsmallest(inst.k, entries)]


def solve_bct_integer_weight(inst: BctInstance, W: Optional[int] = None, cell_limit: Optional[int] = None) -> KBestList:
    """
    k-best BCT for an integral weight with w(T) in [0, W].

    The table is indexed by (W', i, j) and holds the k quality-best
    triangulations of P[i:j] with weight exactly W'. The final scan walks W'
    from the best end and keeps triangulations meeting the quality bound.

    Weight values always match an exhaustive scan. Witnesses may not: a
    weight class keeps its k quality-best entries before the final scan, so
    with more than k triangulations of one weight the returned ones are the
    canonically first among those k, not among every feasible triangulation
    of that weight.

    Args:
        inst: BCT instance; inst.weight must be integral
        W: Upper bound on the weight; computed when omitted
        cell_limit: Resource guard on (W+1) * n^2

    Returns:
        KBestList sorted by weight, then canonical order
    """
    w, sigma = inst.weight, inst.quality
    if w.combiner != "sum" or sigma.combiner != "sum":
        return solve_bct_minmax(inst, W, cell_limit)
    if not w.integral:
        raise InvalidInput(f"Weight '{w.name}' is not integral")
    if W is None:
        W = weight_upper_bound(inst.polygon, w)

    def combine(c1, c2, charges):
        total = c1 + c2 + charges[0]
        return total if total <= W else None

    q_sign = _sign(inst.constraint_sense)
    spec = ChainSpec([sigma], [q_sign], [w], combine, 0, W + 1)
    logger.info(f"Integer-weight BCT: n={inst.polygon.n}, W={W}, k={inst.k}")
    root = run_chain_dp(inst.polygon, spec, inst.k, cell_limit)
    return _finish(inst, _pick_by_weight_class(inst, root, q_sign))


def solve_bct_integer_quality(inst: BctInstance, cell_limit: Optional[int] = None) -> KBestList:
    """
    k-best BCT for an integral quality and bound.

    The table is indexed by (B', i, j): the k weight-best triangulations of
    P[i:j] whose quality is exactly B' (saturated at the bound for at-least
    constraints). Cells whose quality would exceed the bound are never formed.

    Args:
        inst: BCT instance; inst.quality must be integral
        cell_limit: Resource guard on (B+1) * n^2

    Returns:
        KBestList sorted by weight, then canonical order
    """
    w, sigma = inst.weight, inst.quality
    if sigma.combiner != "sum":
        return solve_bct_minmax(inst, cell_limit=cell_limit)
    if not sigma.integral:
        raise InvalidInput(f"Quality '{sigma.name}' is not integral")

    if inst.constraint_sense == "at-most":
        B = math.floor(inst.bound)

        def combine(c1, c2, charges):
            total = c1 + c2 + charges[0]
            return total if total <= B else None

        feasible_class = lambda q: q <= B
    else:
        B = math.ceil(inst.bound)

        def combine(c1, c2, charges):
            return min(c1 + c2 + charges[0], B)

        feasible_class = lambda q: q >= B

    spec = ChainSpec([w], [_sign(inst.sense)], [sigma], combine, 0, B + 1)
    logger.info(f"Integer-quality BCT: n={inst.polygon.n}, B={B}, k={inst.k}")
    root = run_chain_dp(inst.polygon, spec, inst.k, cell_limit)
    return _finish(inst, _pick_by_quality_class(inst, root, feasible_class))


def solve_bct_minmax(inst: BctInstance, W: Optional[int] = None, cell_limit: Optional[int] = None) -> KBestList:
    """
    k-best BCT when the weight or the quality folds with min or max.

    A min/max measure takes one of its atom values (or the empty-fold value),
    so the table is indexed by that value; the other measure is ranked inside
    each class.
    """
    w, sigma = inst.weight, inst.quality
    polygon = inst.polygon

    if sigma.combiner in ("min", "max"):
        comb = sigma.combiner
        monotone_prune = (comb, inst.constraint_sense) in (("max", "at-most"), ("min", "at-least"))

        def combine(c1, c2, charges):
            value = fold2(comb, fold2(comb, c1, c2), charges[0])
            if monotone_prune and not bound_ok(value, inst.bound, inst.constraint_sense, sigma.integral):
                return None
            return value

        feasible_class = lambda q: bound_ok(q, inst.bound, inst.constraint_sense, sigma.integral)
        spec = ChainSpec([w], [_sign(inst.sense)], [sigma], combine, sigma.identity,
                         distinct_atom_values(polygon, sigma) + 1)
        logger.info(f"Min/max BCT over quality classes: n={polygon.n}, k={inst.k}")
        root = run_chain_dp(polygon, spec, inst.k, cell_limit)
        return _finish(inst, _pick_by_quality_class(inst, root, feasible_class))

    if w.combiner in ("min", "max"):
        comb = w.combiner

        def combine(c1, c2, charges):
            return fold2(comb, fold2(comb, c1, c2), charges[0])

        q_sign = _sign(inst.constraint_sense)
        spec = ChainSpec([sigma], [q_sign], [w], combine, w.identity, distinct_atom_values(polygon, w) + 1)
        logger.info(f"Min/max BCT over weight classes: n={polygon.n}, k={inst.k}")
        root = run_chain_dp(polygon, spec, inst.k, cell_limit)
        return _finish(inst, _pick_by_weight_class(inst, root, q_sign))

    raise InvalidInput("solve_bct_minmax needs a weight or quality with a min or max combiner")


def solve_bct(
    inst: BctInstance,
    W: Optional[int] = None,
    epsilon: Optional[Number] = None,
    cell_limit: Optional[int] = None,
) -> KBestList:
    """
    Pick the exact solver the measure flags allow, or the FPTAS when epsilon is given.
    """
    w, sigma = inst.weight, inst.quality
    if w.combiner != "sum" or sigma.combiner != "sum":
        return solve_bct_minmax(inst, W, cell_limit)
    if epsilon is not None:
        from src.bct.fptas import solve_bct_fptas_kbest
        return solve_bct_fptas_kbest(inst, epsilon, cell_limit)
    if w.integral:
        return solve_bct_integer_weight(inst, W, cell_limit)
    if sigma.integral:
        return solve_bct_integer_quality(inst, cell_limit)
    raise InvalidInput(
        f"Weight '{w.name}' and quality '{sigma.name}' are both real-valued; "
        "an exact solver needs one integral measure, pass epsilon for the FPTAS"
    )
