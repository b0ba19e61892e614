import pytest

from src.geometry.measures import table_measure
from src.geometry.polygon import validate_polygon
from src.triangulation.triangulation import make_triangulation


@pytest.fixture
def square():
    """Unit square; its four vertices are co-circular."""
    return validate_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def pentagon():
    """Convex pentagon; its five triangulations are the fans at each vertex."""
    return validate_polygon([(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)])


@pytest.fixture
def pentagon_fans(pentagon):
    """Fan triangulations of the pentagon keyed by apex."""
    return {v: make_triangulation(pentagon, [(v, (v + 2) % 5), (v, (v + 3) % 5)]) for v in range(5)}


@pytest.fixture
def hexagon():
    return validate_polygon([(0, 0), (4, 0), (6, 3), (4, 6), (0, 6), (-2, 3)])


@pytest.fixture
def octagon():
    return validate_polygon([(2, 0), (4, 0), (6, 2), (6, 4), (4, 6), (2, 6), (0, 4), (0, 2)])


@pytest.fixture
def l_hexagon():
    """L-shaped hexagon with a reflex vertex at (1, 1); the diagonal (0, 3) is forced."""
    return validate_polygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])


@pytest.fixture
def cocircular_hexagon():
    return validate_polygon([(5, 0), (3, 4), (-3, 4), (-5, 0), (-3, -4), (3, -4)])


@pytest.fixture
def cocircular_pentagon():
    return validate_polygon([(5, 0), (3, 4), (-3, 4), (-5, 0), (0, -5)])


@pytest.fixture
def trapezoid():
    """Quadrilateral with a unique Delaunay triangulation."""
    return validate_polygon([(0, 0), (3, 0), (3, 1), (1, 1)])


@pytest.fixture
def pentagon_weight(pentagon):
    """Integral sum weight: fans 0, 2, 3, 1, 4 weigh 3, 6, 5, 7, 9."""
    atoms = {(0, 2): 1, (0, 3): 2, (1, 3): 3, (1, 4): 4, (2, 4): 5}
    return table_measure(pentagon, atoms, name="weight")


@pytest.fixture
def pentagon_quality(pentagon):
    """Integral sum quality: fans 0, 2, 3, 1, 4 score 6, 5, 2, 3, 2."""
    atoms = {(0, 2): 5, (0, 3): 1, (1, 3): 1, (1, 4): 2, (2, 4): 0}
    return table_measure(pentagon, atoms, name="quality")
