import json
import logging
from pathlib import Path
from typing import List, Union

from pydantic import ValidationError

from src.geometry.measures import DecomposableMeasure, table_measure
from src.geometry.polygon import Polygon, validate_polygon
from src.utils.errors import InvalidInput
from src.utils.models import MeasureTableFile, PolygonFile, TriangulationFile

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def parse_polygon_text(text: str) -> Polygon:
    """
    Parse a polygon from JSON ({"vertices": [[x, y], ...]}) or plain text
    (first line n, then n lines "x y").
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = PolygonFile.model_validate_json(stripped)
        except ValidationError as e:
            raise InvalidInput(f"Invalid polygon JSON: {e}")
        return validate_polygon([list(v) for v in data.vertices])

    lines = [line.split() for line in stripped.splitlines() if line.strip()]
    if not lines:
        raise InvalidInput("Empty polygon file")
    try:
        n = int(lines[0][0])
        points = [[int(tok) for tok in line] for line in lines[1:]]
    except ValueError as e:
        raise InvalidInput(f"Invalid polygon text: {e}")
    if len(points) != n or any(len(p) != 2 for p in points):
        raise InvalidInput(f"Polygon text declares {n} vertices but lists {len(points)} coordinate pairs")
    return validate_polygon(points)


def load_polygon(path: PathLike) -> Polygon:
    """Load and validate a polygon file."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InvalidInput(f"Cannot read polygon file {path}: {e}")
    polygon = parse_polygon_text(text)
    logger.info(f"Loaded polygon with {polygon.n} vertices from {path}")
    return polygon


def polygon_to_json(polygon: Polygon) -> str:
    return PolygonFile(vertices=list(polygon.vertices)).model_dump_json()


def polygon_to_text(polygon: Polygon) -> str:
    lines = [str(polygon.n)] + [f"{x} {y}" for x, y in polygon.vertices]
    return "\n".join(lines) + "\n"


def save_polygon(polygon: Polygon, path: PathLike, fmt: str = "json") -> None:
    content = polygon_to_json(polygon) if fmt == "json" else polygon_to_text(polygon)
    Path(path).write_text(content)
    logger.info(f"Saved polygon with {polygon.n} vertices to {path}")


def _parse_key(key: str):
    try:
        return tuple(sorted(int(tok) for tok in key.split(",")))
    except ValueError:
        raise InvalidInput(f"Invalid atom key '{key}'")


def measure_table_from_model(model: MeasureTableFile, polygon: Polygon) -> DecomposableMeasure:
    arity = 2 if model.base == "edge" else 3
    atoms = {}
    for key, value in model.atoms.items():
        element = _parse_key(key)
        if len(element) != arity:
            raise InvalidInput(f"Atom key '{key}' does not name a {'diagonal' if arity == 2 else 'triangle'}")
        atoms[element] = value
    return table_measure(polygon, atoms, model.base, model.combiner, model.name, model.default)


def load_measure_table(path: PathLike, polygon: Polygon) -> DecomposableMeasure:
    """Load an explicit atom table ({"base", "combiner", "atoms": {"i,j": value}})."""
    try:
        model = MeasureTableFile.model_validate_json(Path(path).read_text())
    except OSError as e:
        raise InvalidInput(f"Cannot read measure table {path}: {e}")
    except ValidationError as e:
        raise InvalidInput(f"Invalid measure table {path}: {e}")
    return measure_table_from_model(model, polygon)


def save_measure_table(atoms: dict, path: PathLike, base: str = "edge", combiner: str = "sum", name: str = "table",
                       default=None) -> None:
    model = MeasureTableFile(
        base=base,
        combiner=combiner,
        atoms={",".join(str(v) for v in key): value for key, value in atoms.items()},
        default=default,
        name=name,
    )
    Path(path).write_text(model.model_dump_json(indent=2))


def load_triangulations(path: PathLike, polygon: Polygon) -> List:
    """
    Load triangulations from JSON: either a list of [i, j] pairs (one triangulation),
    a list of such lists, or {"triangulations": [...]}.
    """
    from src.triangulation.triangulation import make_triangulation

    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidInput(f"Cannot read triangulation file {path}: {e}")

    if isinstance(raw, list):
        if raw and all(isinstance(x, list) and len(x) == 2 and all(isinstance(c, int) for c in x) for x in raw):
            raw = {"triangulations": [raw]}
        elif not raw:
            raw = {"triangulations": [[]]} if polygon.n == 3 else {"triangulations": []}
        else:
            raw = {"triangulations": raw}
    try:
        model = TriangulationFile.model_validate(raw)
    except ValidationError as e:
        raise InvalidInput(f"Invalid triangulation file {path}: {e}")
    return [make_triangulation(polygon, [list(d) for d in diags]) for diags in model.triangulations]
