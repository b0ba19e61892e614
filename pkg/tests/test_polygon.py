import logging
import pytest
from fractions import Fraction

from src.geometry.io import load_measure_table, load_polygon, parse_polygon_text, save_measure_table, save_polygon
from src.geometry.measures import evaluate_measure, get_measure, snapped, table_measure
from src.geometry.polygon import diagonal_universe, is_valid_diagonal, validate_polygon
from src.geometry.predicates import circumcircle, incircle, orient, segments_cross
from src.triangulation.triangulation import make_triangulation
from src.utils.errors import DegenerateVertex, InvalidInput, MeasureDomainError, NotSimple, TooFewVertices


def test_orient():
    """Test the orient function."""
    assert orient((0, 0), (1, 0), (0, 1)) > 0
    assert orient((0, 0), (0, 1), (1, 0)) < 0
    assert orient((0, 0), (1, 1), (3, 3)) == 0


def test_incircle():
    """Test the incircle function."""
    a, b, c = (0, 0), (2, 0), (0, 2)
    assert incircle(a, b, c, (1, 1)) > 0
    assert incircle(a, b, c, (2, 2)) == 0
    assert incircle(a, b, c, (5, 5)) < 0


def test_circumcircle():
    """Test the circumcircle function."""
    assert circumcircle((0, 0), (2, 0), (0, 2)) == (Fraction(1), Fraction(1), Fraction(2))

    with pytest.raises(ValueError):
        circumcircle((0, 0), (1, 1), (2, 2))


def test_segments_cross():
    """Test the segments_cross function."""
    assert segments_cross((0, 0), (2, 2), (0, 2), (2, 0))
    # Touching at an endpoint is not a proper crossing
    assert not segments_cross((0, 0), (2, 2), (2, 2), (3, 0))


def test_validate_polygon_reorients_clockwise_input():
    """Test the validate_polygon function on clockwise input."""
    polygon = validate_polygon([(0, 0), (0, 1), (1, 1), (1, 0)])

    assert polygon.flipped
    assert polygon.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))


def test_validate_polygon_errors():
    """Test the validate_polygon function on malformed input."""
    with pytest.raises(TooFewVertices):
        validate_polygon([(0, 0), (1, 0)])

    with pytest.raises(DegenerateVertex):
        validate_polygon([(0, 0), (1, 0), (1, 0), (0, 1)])

    # Vertices 0, 1, 2 are collinear
    with pytest.raises(DegenerateVertex):
        validate_polygon([(0, 0), (1, 0), (2, 0), (1, 1)])

    with pytest.raises(NotSimple):
        validate_polygon([(0, 0), (2, 2), (2, 0), (0, 2)])

    with pytest.raises(InvalidInput):
        validate_polygon([(0, 0), (1.5, 0), (0, 1)])


def test_diagonals_of_convex_polygon(pentagon, hexagon):
    """Test the diagonal_universe function on convex polygons."""
    assert diagonal_universe(pentagon) == [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]
    assert len(hexagon.diagonals) == 9
    assert pentagon.is_convex


def test_diagonals_of_reflex_polygon(l_hexagon):
    """Test the is_valid_diagonal function around a reflex vertex."""
    assert l_hexagon.diagonals == ((0, 2), (0, 3), (0, 4), (1, 3), (3, 5))
    assert not l_hexagon.is_convex

    # Passes through the reflex vertex
    assert not is_valid_diagonal(l_hexagon, 1, 5)
    # Leaves the polygon
    assert not is_valid_diagonal(l_hexagon, 2, 4)
    # Boundary edge
    assert not is_valid_diagonal(l_hexagon, 0, 1)


def test_parse_polygon_text():
    """Test the parse_polygon_text function on both file formats."""
    from_json = parse_polygon_text('{"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}')
    from_text = parse_polygon_text("4\n0 0\n1 0\n1 1\n0 1\n")
    assert from_json == from_text

    with pytest.raises(InvalidInput):
        parse_polygon_text("5\n0 0\n1 0\n1 1\n")

    with pytest.raises(InvalidInput):
        parse_polygon_text('{"vertices": [[0, 0], [1.5, 0], [1, 1]]}')


def test_save_and_load_polygon(tmp_path, pentagon):
    """Test the save_polygon and load_polygon functions."""
    path = tmp_path / "pentagon.json"
    save_polygon(pentagon, path)
    assert load_polygon(path) == pentagon

    with pytest.raises(InvalidInput):
        load_polygon(tmp_path / "missing.json")


def test_builtin_measures(square):
    """Test the built-in measures on the unit square."""
    t = make_triangulation(square, [(0, 2)])

    assert evaluate_measure(get_measure("squared-euclidean", square), t) == 2
    assert evaluate_measure(get_measure("euclidean", square), t) == pytest.approx(2 ** 0.5)
    assert evaluate_measure(get_measure("const0", square), t) == 0
    # Both triangles are right isosceles
    assert evaluate_measure(get_measure("min-angle", square), t) == pytest.approx(3.141592653589793 / 4)
    assert evaluate_measure(get_measure("max-angle", square), t) == pytest.approx(3.141592653589793 / 2)

    with pytest.raises(InvalidInput):
        get_measure("no-such-measure", square)


def test_empty_fold_values():
    """Test the measure identities on a triangle, which has no diagonals."""
    triangle = validate_polygon([(0, 0), (1, 0), (0, 1)])
    t = make_triangulation(triangle, [])

    assert evaluate_measure(get_measure("euclidean", triangle), t) == 0
    assert evaluate_measure(get_measure("max-edge", triangle), t) == 0
    assert evaluate_measure(get_measure("min-edge", triangle), t) == float("inf")


def test_table_measure(pentagon, pentagon_fans):
    """Test the table_measure function."""
    measure = table_measure(pentagon, {(2, 0): 4, (0, 3): 1})

    assert measure.integral
    # Keys are normalized to sorted pairs
    assert measure.atom((0, 2)) == 4
    assert evaluate_measure(measure, pentagon_fans[0]) == 5

    # Missing atoms are undefined without a default
    with pytest.raises(MeasureDomainError):
        evaluate_measure(measure, pentagon_fans[1])

    with pytest.raises(MeasureDomainError):
        table_measure(pentagon, {(0, 2): -1}).atom((0, 2))


def test_snapped(pentagon):
    """Test the snapped function."""
    measure = table_measure(pentagon, {(0, 2): 0.5}, default=0.25)
    integral = snapped(measure, 0.25)

    assert integral.integral
    assert integral.atom((0, 2)) == 2
    assert integral.atom((1, 3)) == 1


def test_measure_table_file(tmp_path, pentagon, pentagon_fans):
    """Test the save_measure_table and load_measure_table functions."""
    path = tmp_path / "table.json"
    save_measure_table({(0, 2): 3, (1, 3): 5}, path, default=0)

    measure = load_measure_table(path, pentagon)
    assert evaluate_measure(measure, pentagon_fans[0]) == 3
    assert evaluate_measure(measure, pentagon_fans[3]) == 5
    assert evaluate_measure(get_measure(f"table:{path}", pentagon), pentagon_fans[1]) == 5

    bad = tmp_path / "bad.json"
    bad.write_text('{"atoms": {"0,1,2": 1}}')
    with pytest.raises(InvalidInput):
        load_measure_table(bad, pentagon)


def test_table_measure_logs_summary(pentagon, caplog):
    """Test that table_measure logs the size of the table."""
    with caplog.at_level(logging.DEBUG, logger="src.geometry.measures"):
        table_measure(pentagon, {(0, 2): 1, (1, 3): 2}, name="weights")

    assert "Table measure 'weights': 2 edge atoms" in caplog.text
