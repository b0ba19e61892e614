"""
Decomposable quality measures.

A measure folds a per-element atom over the diagonals (edge base) or the
triangles (triangle base) of a triangulation with sum, min or max.
"""
import math
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional, Tuple, Union

import numpy as np

from src.geometry.polygon import Polygon, Triangle
from src.utils.errors import InvalidInput, MeasureDomainError

logger = logging.getLogger(__name__)

INF = math.inf

Number = Union[int, float]
Element = Tuple[int, ...]

BASES = ("edge", "triangle")
COMBINERS = ("sum", "min", "max")


def fold_identity(combiner: str) -> Number:
    """Value of the fold over no elements: 0 for sum and max, +inf for min."""
    if combiner == "min":
        return INF
    return 0


def fold(combiner: str, values: Iterable[Number]) -> Number:
    if combiner == "sum":
        return sum(values)
    if combiner == "min":
        return min(values, default=INF)
    return max(values, default=0)


def fold2(combiner: str, a: Number, b: Number) -> Number:
    if combiner == "sum":
        return a + b
    if combiner == "min":
        return a if a <= b else b
    return a if a >= b else b


@dataclass(frozen=True, eq=False)
class DecomposableMeasure:
    """Per-element atom plus the fold that combines atoms over a triangulation."""
    name: str
    base: str
    combiner: str
    atom_fn: Callable[[Element], Number] = field(compare=False, repr=False)
    integral: bool = False
    polygon: Optional[Polygon] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.base not in BASES:
            raise InvalidInput(f"Unknown measure base '{self.base}'")
        if self.combiner not in COMBINERS:
            raise InvalidInput(f"Unknown measure combiner '{self.combiner}'")

    def atom(self, element: Element) -> Number:
        """
        Atom value of a diagonal (i, j) or triangle (a, b, c), indices sorted.

        Raises:
            MeasureDomainError: if the atom is undefined, negative, or not integral
                for an integral measure
        """
        try:
            value = self.atom_fn(tuple(sorted(element)))
        except KeyError:
            raise MeasureDomainError(f"Measure '{self.name}' is undefined on {tuple(element)}")
        if value is None or (isinstance(value, float) and math.isnan(value)):
            raise MeasureDomainError(f"Measure '{self.name}' is undefined on {tuple(element)}")
        if value < 0:
            raise MeasureDomainError(f"Measure '{self.name}' has negative atom {value} on {tuple(element)}")
        if self.integral and not isinstance(value, int):
            raise MeasureDomainError(f"Integral measure '{self.name}' has non-integer atom {value}")
        return value

    def charge(self, elements: Iterable[Element]) -> Number:
        return fold(self.combiner, (self.atom(e) for e in elements))

    @property
    def identity(self) -> Number:
        return fold_identity(self.combiner)


def evaluate_measure(measure: DecomposableMeasure, triangulation) -> Number:
    """
    Fold the measure's atoms over a triangulation.

    Args:
        measure: Decomposable measure bound to the triangulation's polygon
        triangulation: Triangulation to evaluate

    Returns:
        Measure value; n=3 edge measures give 0 (sum, max) or +inf (min)
    """
    if measure.polygon is not None and measure.polygon != triangulation.polygon:
        raise MeasureDomainError(f"Measure '{measure.name}' is bound to a different polygon")
    if measure.base == "edge":
        elements = triangulation.diagonals
    else:
        elements = triangulation.triangles
    return measure.charge(elements)


def _length(polygon: Polygon, e: Element) -> float:
    (x1, y1), (x2, y2) = polygon.vertices[e[0]], polygon.vertices[e[1]]
    return math.hypot(x2 - x1, y2 - y1)


def _squared_length(polygon: Polygon, e: Element) -> int:
    (x1, y1), (x2, y2) = polygon.vertices[e[0]], polygon.vertices[e[1]]
    return (x2 - x1) ** 2 + (y2 - y1) ** 2


def triangle_angles(polygon: Polygon, t: Triangle) -> np.ndarray:
    """Interior angles of a triangle in radians, in vertex order."""
    pts = np.array([polygon.vertices[v] for v in t], dtype=float)
    angles = np.empty(3)
    for idx in range(3):
        u = pts[(idx + 1) % 3] - pts[idx]
        w = pts[(idx + 2) % 3] - pts[idx]
        cosine = np.dot(u, w) / (np.linalg.norm(u) * np.linalg.norm(w))
        angles[idx] = np.arccos(np.clip(cosine, -1.0, 1.0))
    return angles


def _const0(polygon: Polygon) -> DecomposableMeasure:
    return DecomposableMeasure("const0", "edge", "sum", lambda e: 0, integral=True, polygon=polygon)


BUILTIN_MEASURES: Dict[str, Callable[[Polygon], DecomposableMeasure]] = {
    "euclidean": lambda p: DecomposableMeasure("euclidean", "edge", "sum", lambda e: _length(p, e), polygon=p),
    "squared-euclidean": lambda p: DecomposableMeasure(
        "squared-euclidean", "edge", "sum", lambda e: _squared_length(p, e), integral=True, polygon=p
    ),
    "max-edge": lambda p: DecomposableMeasure("max-edge", "edge", "max", lambda e: _length(p, e), polygon=p),
    "min-edge": lambda p: DecomposableMeasure("min-edge", "edge", "min", lambda e: _length(p, e), polygon=p),
    "min-angle": lambda p: DecomposableMeasure(
        "min-angle", "triangle", "min", lambda t: float(triangle_angles(p, t).min()), polygon=p
    ),
    "max-angle": lambda p: DecomposableMeasure(
        "max-angle", "triangle", "max", lambda t: float(triangle_angles(p, t).max()), polygon=p
    ),
    "const0": _const0,
}


def table_measure(
    polygon: Polygon,
    atoms: Dict[Element, Number],
    base: str = "edge",
    combiner: str = "sum",
    name: str = "table",
    default: Optional[Number] = None,
) -> DecomposableMeasure:
    """
    Build a measure from an explicit atom table.

    Args:
        polygon: Polygon the table refers to
        atoms: Map from sorted diagonal or triangle tuples to nonnegative values
        base: "edge" or "triangle"
        combiner: "sum", "min" or "max"
        name: Identifier reported in results
        default: Atom for elements missing from the table; None makes them undefined

    Returns:
        DecomposableMeasure, flagged integral when every value is an int
    """
    table = {tuple(sorted(k)): v for k, v in atoms.items()}
    values = list(table.values()) + ([default] if default is not None else [])
    integral = all(isinstance(v, int) and not isinstance(v, bool) for v in values)

    if default is None:
        atom_fn = table.__getitem__
    else:
        atom_fn = lambda e: table.get(e, default)

    logger.debug(f"Table measure '{name}': {len(table)} {base} atoms, combiner {combiner}, integral={integral}")
    return DecomposableMeasure(name, base, combiner, atom_fn, integral=integral, polygon=polygon)


def get_measure(name: str, polygon: Polygon) -> DecomposableMeasure:
    """
    Resolve a built-in measure name, or "table:<file>", against a polygon.
    """
    if name.startswith("table:"):
        from src.geometry.io import load_measure_table
        return load_measure_table(name[len("table:"):], polygon)
    factory = BUILTIN_MEASURES.get(name)
    if factory is None:
        raise InvalidInput(f"Unknown measure '{name}'. Available: {', '.join(sorted(BUILTIN_MEASURES))}, table:<file>")
    return factory(polygon)


def snapped(measure: DecomposableMeasure, tolerance: float) -> DecomposableMeasure:
    """
    Integral copy of a real-valued measure with atoms rounded to multiples of tolerance.

    Sums of snapped atoms are exact, so equal multisets of atoms always compare equal.
    """
    if measure.integral:
        return measure
    return DecomposableMeasure(
        f"{measure.name}~",
        measure.base,
        measure.combiner,
        lambda e: int(round(measure.atom(e) / tolerance)),
        integral=True,
        polygon=measure.polygon,
    )
