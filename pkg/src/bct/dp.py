"""
Chain dynamic program over the sub-polygons P[i:j].

Every solver in the package is an instance of the same recurrence: the
triangle on the chord (i, j) has apex m, and the sub-chains P[i:m] and P[m:j]
are solved independently. A cell holds, per class key, the k best entries.

An entry is a tuple (key_1, ..., key_r, -mask). key_t is the signed value of
the t-th order measure; mask is the bit set of the diagonals used, with
smaller diagonals on higher bits, so -mask breaks ties in canonical order and
is additive over disjoint splits.
"""
import heapq
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from config.config import DP_CELL_LIMIT
from src.bct.kbest import k_smallest_pairs
from src.geometry.measures import DecomposableMeasure, fold2
from src.geometry.polygon import Polygon
from src.utils.errors import ResourceLimit

logger = logging.getLogger(__name__)

Entry = Tuple
ClassCombine = Callable[[Any, Any, Tuple], Optional[Any]]


def _single_class(c1, c2, charges):
    return 0


@dataclass
class ChainSpec:
    """What a chain DP tracks: order measures ranked inside a class, and class measures indexing cells."""
    order_measures: Sequence[DecomposableMeasure]
    order_signs: Sequence[int]
    class_measures: Sequence[DecomposableMeasure] = ()
    class_combine: ClassCombine = _single_class
    class_identity: Any = 0
    class_count: int = 1


class _AtomCache:
    def __init__(self, measure: DecomposableMeasure):
        self.measure = measure
        self.values: Dict[Tuple, Any] = {}

    def charge(self, diagonals: List[Tuple[int, int]], triangle: Tuple[int, int, int]):
        if self.measure.base == "triangle":
            elements = [triangle]
        else:
            elements = diagonals
        acc = self.measure.identity
        for e in elements:
            value = self.values.get(e)
            if value is None:
                value = self.measure.atom(e)
                self.values[e] = value
            acc = fold2(self.measure.combiner, acc, value)
        return acc


def check_cells(required: int, cell_limit: Optional[int] = None) -> None:
    limit = DP_CELL_LIMIT if cell_limit is None else cell_limit
    if required > limit:
        raise ResourceLimit(required, limit)


def run_chain_dp(polygon: Polygon, spec: ChainSpec, k: int, cell_limit: Optional[int] = None) -> Dict[Any, List[Entry]]:
    """
    Fill the chain table bottom-up and return the root cell P[0:n-1].

    Args:
        polygon: Polygon being triangulated
        spec: Measures and class bookkeeping
        k: Entries kept per (class, i, j)
        cell_limit: Resource guard on class_count * n^2

    Returns:
        Map from class key to at most k entries, sorted best first
    """
    n = polygon.n
    check_cells(spec.class_count * n * n, cell_limit)

    size = len(polygon.diagonals)
    rank = polygon.diagonal_rank
    order_caches = [_AtomCache(m) for m in spec.order_measures]
    class_caches = [_AtomCache(m) for m in spec.class_measures]
    signs = list(spec.order_signs)
    combiners = [m.combiner for m in spec.order_measures]
    lattice = all(c == "sum" for c in combiners)

    base_entry = tuple(s * m.identity for m, s in zip(spec.order_measures, signs)) + (0,)
    cells: Dict[Tuple[int, int], Dict[Any, List[Entry]]] = {
        (i, i + 1): {spec.class_identity: [base_entry]} for i in range(n - 1)
    }

    for length in range(2, n):
        for i in range(n - length):
            j = i + length
            if not polygon.is_edge_or_diagonal(i, j):
                continue
            buckets: Dict[Any, List[Entry]] = {}
            for m in range(i + 1, j):
                left = cells.get((i, m))
                right = cells.get((m, j))
                if not left or not right:
                    continue
                created = [d for d in ((i, m), (m, j)) if d[1] - d[0] > 1]
                newbits = sum(1 << (size - 1 - rank[d]) for d in created)
                triangle = (i, m, j)
                order_charges = [c.charge(created, triangle) for c in order_caches]
                class_charges = tuple(c.charge(created, triangle) for c in class_caches)

                def combine(a: Entry, b: Entry) -> Entry:
                    parts = []
                    for t, comb in enumerate(combiners):
                        s = signs[t]
                        if comb == "sum":
                            parts.append(a[t] + b[t] + s * order_charges[t])
                        else:
                            parts.append(s * fold2(comb, fold2(comb, s * a[t], s * b[t]), order_charges[t]))
                    parts.append(a[-1] + b[-1] - newbits)
                    return tuple(parts)

                for c1, entries_left in left.items():
                    for c2, entries_right in right.items():
                        key = spec.class_combine(c1, c2, class_charges)
                        if key is None:
                            continue
                        if lattice:
                            merged = k_smallest_pairs(entries_left, entries_right, k, combine)
                        else:
                            merged = heapq.nsmallest(
                                k, (combine(a, b) for a in entries_left for b in entries_right)
                            )
                        buckets.setdefault(key, []).extend(merged)

            if buckets:
                cells[(i, j)] = {key: heapq.nsmallest(k, entries) for key, entries in buckets.items()}

    root = cells.get((0, n - 1), {})
    logger.debug(f"Chain DP on {n}-gon filled {len(cells)} chains, root has {len(root)} classes")
    return root

