"""
Min-DT: k triangulations maximizing the minimum pairwise symmetric difference.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import List, Optional, Sequence, Tuple

from src.bct.dp import ChainSpec, check_cells, run_chain_dp
from src.bct.solver import BctInstance, optimal_triangulation, solve_bct
from src.diverse.sum_dnt import frequency_weight
from src.geometry.measures import DecomposableMeasure, evaluate_measure, get_measure
from src.geometry.polygon import Polygon
from src.oracle.enumerate import count_triangulations
from src.triangulation.triangulation import (
    Certificate,
    DiverseSolution,
    Triangulation,
    from_mask,
    symmetric_difference,
)
from src.utils.errors import Infeasible, InvalidInput, InvariantViolation

logger = logging.getLogger(__name__)


@dataclass
class MctInstance:
    """Minimize an integral objective subject to integral budgets sigma_j(T) <= b_j."""
    polygon: Polygon
    objective: DecomposableMeasure
    constraints: List[Tuple[DecomposableMeasure, int]] = field(default_factory=list)

    def __post_init__(self):
        for m in [self.objective] + [c for c, _ in self.constraints]:
            if not m.integral or m.combiner != "sum":
                raise InvalidInput(f"Measure '{m.name}' must be integral with a sum combiner")
        for m, b in self.constraints:
            if not isinstance(b, int) or b < 0:
                raise InvalidInput(f"Budget for '{m.name}' must be a nonnegative integer, got {b}")


class BudgetIndex:
    """Mixed-radix encoding of budget vectors (b'_1, ..., b'_r) with 0 <= b'_j <= b_j."""

    def __init__(self, budgets: Sequence[int]):
        self.budgets = tuple(budgets)
        self.size = prod(b + 1 for b in self.budgets)

    def encode(self, values: Sequence[int]) -> int:
        code = 0
        for v, b in zip(values, self.budgets):
            code = code * (b + 1) + v
        return code

    def decode(self, code: int) -> Tuple[int, ...]:
        values = []
        for b in reversed(self.budgets):
            code, v = divmod(code, b + 1)
            values.append(v)
        return tuple(reversed(values))


def solve_mct(inst: MctInstance, cell_limit: Optional[int] = None) -> Triangulation:
    """
    Objective-minimum triangulation meeting every budget, canonical-first among ties.

    Cells are indexed by the exact budget vector used by the sub-chain, so the
    table has prod(b_j + 1) * n^2 cells.

    Raises:
        Infeasible: if no triangulation meets the budgets
        ResourceLimit: if the table exceeds the cell guard
    """
    index = BudgetIndex([b for _, b in inst.constraints])

    def combine(c1, c2, charges):
        left, right = index.decode(c1), index.decode(c2)
        used = []
        for a, b, charge, limit in zip(left, right, charges, index.budgets):
            total = a + b + charge
            if total > limit:
                return None
            used.append(total)
        return index.encode(used)

    spec = ChainSpec(
        [inst.objective],
        [1],
        [m for m, _ in inst.constraints],
        combine,
        index.encode([0] * len(index.budgets)),
        index.size,
    )
    root = run_chain_dp(inst.polygon, spec, 1, cell_limit)
    entries = [e for bucket in root.values() for e in bucket]
    if not entries:
        raise Infeasible(0, 1, message="No triangulation satisfies every budget")
    best = min(entries)
    return from_mask(inst.polygon, -best[-1])


def _first_outside(polygon: Polygon, history: Sequence[Triangulation]) -> Optional[Triangulation]:
    const0 = get_measure("const0", polygon)
    bct = BctInstance(polygon, const0, const0, 0, k=len(history) + 1)
    try:
        result = solve_bct(bct, W=0)
    except Infeasible as e:
        result = e.partial
    seen = {t.diagonals for t in history}
    return next((t for t in result.triangulations if t.diagonals not in seen), None)


def decision_farthest(
    polygon: Polygon,
    history: Sequence[Triangulation],
    r: int,
    cell_limit: Optional[int] = None,
) -> Optional[Triangulation]:
    """
    A triangulation sharing at most r diagonals with every history member, if any.

    For each pivot i, minimize |T & T_i| subject to |T & T_j| <= r for the
    other members; the first pivot whose optimum is at most r wins.

    Args:
        polygon: Polygon being triangulated
        history: Distinct triangulations chosen so far
        r: Overlap budget, 0 <= r <= n-3
        cell_limit: Resource guard on (r+1)^(k-1) * n^2

    Returns:
        T with min_j |T delta T_j| >= 2(n-3) - 2r, or None
    """
    n3 = polygon.n - 3
    if r < 0:
        raise InvalidInput(f"r must be nonnegative, got {r}")
    if not history or r >= n3:
        return _first_outside(polygon, history)

    check_cells((r + 1) ** (len(history) - 1) * polygon.n ** 2, cell_limit)
    indicators = [frequency_weight([t], polygon) for t in history]

    for i, pivot in enumerate(indicators):
        constraints = [(m, r) for j, m in enumerate(indicators) if j != i]
        try:
            t = solve_mct(MctInstance(polygon, pivot, constraints), cell_limit)
        except Infeasible:
            continue
        if evaluate_measure(pivot, t) > r:
            continue
        closest = min(symmetric_difference(t, h) for h in history)
        if closest < 2 * n3 - 2 * r:
            raise InvariantViolation(f"{t} is only {closest} away from the history, expected >= {2 * n3 - 2 * r}")
        logger.debug(f"Decision r={r} answered by pivot {i}")
        return t
    return None


def min_dt(polygon: Polygon, k: int, cell_limit: Optional[int] = None) -> DiverseSolution:
    """
    Farthest insertion under the minimum symmetric difference.

    Starting from the canonical-first triangulation, each new member is the
    first decision_farthest witness for r = 0, 1, ..., n-3.

    Returns:
        DiverseSolution with beta = 1/2 and r_used = the largest overlap budget needed
    """
    if k < 2:
        raise InvalidInput(f"k must be at least 2, got {k}")
    total = count_triangulations(polygon)
    if total < k:
        raise Infeasible(total, k)

    _, first = optimal_triangulation(polygon, get_measure("const0", polygon))
    chosen = [first]
    r_used = 0
    n3 = polygon.n - 3
    while len(chosen) < k:
        for r in range(n3 + 1):
            t = decision_farthest(polygon, chosen, r, cell_limit)
            if t is not None:
                break
        else:
            raise Infeasible(len(chosen), k, partial=list(chosen))
        chosen.append(t)
        r_used = max(r_used, r)
        logger.info(f"Min-DT member {len(chosen)} found with r={r}")

    return DiverseSolution.build(chosen, Certificate("min-dt", beta=Fraction(1, 2), r_used=r_used))
