import heapq
import math
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence

INF = math.inf


def k_smallest_pairs(A: Sequence[Any], B: Sequence[Any], k: int, combine: Callable[[Any, Any], Any]) -> List[Any]:
    """
    The k smallest combine(a, b) over A x B for sorted A and B.

    combine must be nondecreasing in each argument with respect to the list
    order; the frontier of the (i, j) grid is then explored with a heap and
    only O(k) cells are touched.
    """
    if k <= 0 or not A or not B:
        return []
    heap = [(combine(A[0], B[0]), 0, 0)]
    seen = {(0, 0)}
    out = []
    while heap and len(out) < k:
        value, i, j = heapq.heappop(heap)
        out.append(value)
        for ni, nj in ((i + 1, j), (i, j + 1)):
            if ni < len(A) and nj < len(B) and (ni, nj) not in seen:
                seen.add((ni, nj))
                heapq.heappush(heap, (combine(A[ni], B[nj]), ni, nj))
    return out


def k_smallest_combination(A: Sequence[float], B: Sequence[float], c: float, k: int) -> List[float]:
    """
    The k smallest values of a + b + c over a in A, b in B, padded with +inf.

    Args:
        A: Nondecreasing values, may contain +inf
        B: Nondecreasing values, may contain +inf
        c: Constant added to every pair
        k: Number of values to return

    Returns:
        Sorted list of length k; ties are kept as a multiset
    """
    values = k_smallest_pairs(A, B, k, lambda a, b: a + b + c)
    return values + [INF] * (k - len(values))


@dataclass
class KBestList:
    """
    Best-first weight values with their witness triangulations.

    Positions without a witness are padding (+inf when minimizing, -inf when
    maximizing).
    """
    values: List[float]
    witnesses: List[Optional[Any]]
    qualities: List[Optional[float]] = field(default_factory=list)
    sense: str = "minimize"

    @property
    def k(self) -> int:
        return len(self.values)

    @property
    def found(self) -> int:
        return sum(1 for w in self.witnesses if w is not None)

    @property
    def triangulations(self) -> List[Any]:
        return [w for w in self.witnesses if w is not None]

    @classmethod
    def padded(cls, k: int, values, witnesses, qualities, sense: str = "minimize") -> "KBestList":
        pad = INF if sense == "minimize" else -INF
        missing = k - len(values)
        return cls(
            list(values) + [pad] * missing,
            list(witnesses) + [None] * missing,
            list(qualities) + [None] * missing,
            sense,
        )
