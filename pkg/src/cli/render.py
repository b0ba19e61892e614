import io
import logging
from typing import Sequence

from matplotlib.collections import LineCollection
from matplotlib.figure import Figure

from config.config import MAX_RENDER_LAYERS, SVG_MARGIN, SVG_STROKES
from src.geometry.polygon import Polygon
from src.triangulation.triangulation import Triangulation
from src.utils.errors import PolygonMismatch, TooManyLayers

logger = logging.getLogger(__name__)


def render_figure(polygon: Polygon, triangulations: Sequence[Triangulation] = ()) -> Figure:
    """
    Matplotlib figure of a polygon with one diagonal layer per triangulation.

    The boundary is a LineCollection with gid "boundary"; the diagonals of the
    i-th triangulation are a LineCollection with gid "layer-i". Axes limits are
    the bounding box grown by SVG_MARGIN on every side.

    Args:
        polygon: Polygon outline
        triangulations: At most MAX_RENDER_LAYERS triangulations of the polygon

    Returns:
        Figure with a single equal-aspect axes covering the whole canvas
    """
    if len(triangulations) > MAX_RENDER_LAYERS:
        raise TooManyLayers(f"At most {MAX_RENDER_LAYERS} triangulations per render, got {len(triangulations)}")
    for t in triangulations:
        if t.polygon != polygon:
            raise PolygonMismatch("Triangulation does not belong to the rendered polygon")

    points = polygon.vertices
    n = polygon.n
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    width = max(xs) - min(xs)
    height = max(ys) - min(ys)
    mx, my = SVG_MARGIN * width, SVG_MARGIN * height

    # Axes fill the figure so the saved canvas is exactly the margin box
    fig = Figure(figsize=(6, 6 * (height + 2 * my) / (width + 2 * mx)))
    ax = fig.add_axes((0, 0, 1, 1))

    boundary = LineCollection(
        [[points[i], points[(i + 1) % n]] for i in range(n)],
        colors="#000000", linewidths=1.5, zorder=3,
    )
    boundary.set_gid("boundary")
    ax.add_collection(boundary)

    for layer, t in enumerate(triangulations):
        lc = LineCollection(
            [[points[a], points[b]] for a, b in t.diagonals],
            colors=SVG_STROKES[layer % len(SVG_STROKES)], linewidths=1.0, alpha=0.8, zorder=2,
        )
        lc.set_gid(f"layer-{layer}")
        ax.add_collection(lc)

    ax.set_xlim(min(xs) - mx, max(xs) + mx)
    ax.set_ylim(min(ys) - my, max(ys) + my)
    ax.set_aspect("equal")
    ax.set_axis_off()
    return fig


def render_svg(polygon: Polygon, triangulations: Sequence[Triangulation] = ()) -> str:
    """SVG document of render_figure, without a date stamp so output is reproducible."""
    fig = render_figure(polygon, triangulations)
    buffer = io.StringIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})

    logger.debug(f"Rendered {polygon.n}-gon with {len(triangulations)} layers")
    return buffer.getvalue()
