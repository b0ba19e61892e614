import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from src.geometry.polygon import Diagonal, Polygon, Triangle
from src.utils.errors import (
    CrossingDiagonals,
    InvalidDiagonal,
    InvariantViolation,
    PolygonMismatch,
    TooFew,
    WrongCount,
)

logger = logging.getLogger(__name__)


def diagonals_cross(d1: Diagonal, d2: Diagonal) -> bool:
    """Two diagonals of a simple polygon cross iff their endpoints interleave."""
    a, b = d1
    c, e = d2
    if len({a, b, c, e}) < 4:
        return False
    return (a < c < b) != (a < e < b)


@dataclass(frozen=True)
class Triangulation:
    """Canonical set of n-3 non-crossing diagonals of a polygon."""
    polygon: Polygon = field(repr=False)
    diagonals: Tuple[Diagonal, ...]

    def __repr__(self):
        return f"<Triangulation({list(self.diagonals)})>"

    @cached_property
    def diagonal_set(self) -> frozenset:
        return frozenset(self.diagonals)

    @cached_property
    def mask(self) -> int:
        """Bit mask over the diagonal universe; a larger mask is lexicographically earlier."""
        return diagonals_to_mask(self.polygon, self.diagonals)

    @cached_property
    def triangles(self) -> Tuple[Triangle, ...]:
        return tuple(_ear_clip(self.polygon.n, self.diagonals))

    def sort_key(self) -> Tuple[Diagonal, ...]:
        return self.diagonals


def diagonals_to_mask(polygon: Polygon, diagonals: Iterable[Diagonal]) -> int:
    size = len(polygon.diagonals)
    rank = polygon.diagonal_rank
    mask = 0
    for d in diagonals:
        mask |= 1 << (size - 1 - rank[d])
    return mask


def mask_to_diagonals(polygon: Polygon, mask: int) -> List[Diagonal]:
    size = len(polygon.diagonals)
    return [d for r, d in enumerate(polygon.diagonals) if mask >> (size - 1 - r) & 1]


def make_triangulation(polygon: Polygon, diagonals: Iterable[Sequence[int]]) -> Triangulation:
    """
    Validate and canonicalize a diagonal set.

    Args:
        polygon: Polygon being triangulated
        diagonals: Vertex index pairs in any order or orientation

    Returns:
        Triangulation with diagonals sorted by (i, j)
    """
    canonical = sorted({(min(d[0], d[1]), max(d[0], d[1])) for d in diagonals})
    expected = polygon.n - 3
    if len(canonical) != expected:
        raise WrongCount(f"Triangulation needs exactly {expected} distinct diagonals, got {len(canonical)}")

    for d in canonical:
        if d not in polygon.diagonal_set:
            raise InvalidDiagonal(f"{d} is not a valid diagonal of the polygon")

    for d1, d2 in combinations(canonical, 2):
        if diagonals_cross(d1, d2):
            raise CrossingDiagonals(f"Diagonals {d1} and {d2} cross")

    return Triangulation(polygon, tuple(canonical))


def from_mask(polygon: Polygon, mask: int) -> Triangulation:
    return make_triangulation(polygon, mask_to_diagonals(polygon, mask))


def _ear_clip(n: int, diagonals: Sequence[Diagonal]) -> List[Triangle]:
    """Repeatedly cut an ear whose closing chord is a boundary edge or one of the diagonals."""
    chords = set(diagonals)
    ring = list(range(n))
    triangles = []
    while len(ring) > 3:
        for pos in range(len(ring)):
            u, v, w = ring[pos - 1], ring[pos], ring[(pos + 1) % len(ring)]
            chord = (min(u, w), max(u, w))
            if chord in chords:
                triangles.append(tuple(sorted((u, v, w))))
                chords.discard(chord)
                del ring[pos]
                break
        else:
            logger.error(f"No ear among {len(ring)} remaining vertices; chords left: {sorted(chords)}")
            raise InvariantViolation("Ear clipping found no ear; diagonal set is not a triangulation")
    triangles.append(tuple(sorted(ring)))
    return sorted(triangles)


def triangles_of(triangulation: Triangulation) -> List[Triangle]:
    """The n-2 triangles of a triangulation in canonical order."""
    return list(triangulation.triangles)


def _check_same_polygon(triangulations: Sequence[Triangulation]) -> None:
    first = triangulations[0].polygon
    for t in triangulations[1:]:
        if t.polygon is not first and t.polygon != first:
            raise PolygonMismatch("Triangulations belong to different polygons")


def symmetric_difference(t1: Triangulation, t2: Triangulation) -> int:
    """|T1 Δ T2| over diagonal sets."""
    _check_same_polygon([t1, t2])
    return len(t1.diagonal_set ^ t2.diagonal_set)


def _pairwise(triangulations: Sequence[Triangulation]) -> List[int]:
    if len(triangulations) < 2:
        raise TooFew(f"Diversity needs at least 2 triangulations, got {len(triangulations)}")
    _check_same_polygon(triangulations)
    return [len(a.diagonal_set ^ b.diagonal_set) for a, b in combinations(triangulations, 2)]


def sum_diversity(triangulations: Sequence[Triangulation]) -> int:
    """Sum of pairwise symmetric differences."""
    return sum(_pairwise(triangulations))


def min_diversity(triangulations: Sequence[Triangulation]) -> int:
    """Minimum pairwise symmetric difference."""
    return min(_pairwise(triangulations))


@dataclass
class Certificate:
    """Evidence attached to a diverse solution."""
    method: str
    alpha_bound_checked: bool = False
    beta: Optional[Fraction] = None
    r_used: Optional[int] = None
    alpha_effective: Optional[Fraction] = None


@dataclass
class DiverseSolution:
    triangulations: List[Triangulation]
    sum_sd: int
    min_sd: int
    certificate: Certificate

    @classmethod
    def build(cls, triangulations: Sequence[Triangulation], certificate: Certificate) -> "DiverseSolution":
        """Compute both diversity values and enforce distinctness."""
        triangulations = list(triangulations)
        if len({t.diagonals for t in triangulations}) != len(triangulations):
            raise InvariantViolation("Diverse solution contains duplicate triangulations")
        if len(triangulations) >= 2:
            sum_sd, min_sd = sum_diversity(triangulations), min_diversity(triangulations)
        else:
            sum_sd, min_sd = 0, 0
        return cls(triangulations, sum_sd, min_sd, certificate)

    @property
    def k(self) -> int:
        return len(self.triangulations)
