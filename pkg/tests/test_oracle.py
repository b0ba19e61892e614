import pytest

from src.geometry.measures import get_measure
from src.oracle.enumerate import catalan, count_triangulations, enumerate_all, enumerate_backtracking
from src.oracle.optimum import nice_triangulations, oracle_bct, oracle_min_dt, oracle_sum_dnt
from src.utils.errors import Infeasible, InvalidInput, ResourceLimit


def test_catalan():
    """Test the catalan function."""
    assert [catalan(m) for m in range(7)] == [1, 1, 2, 5, 14, 42, 132]
    assert catalan(-1) == 0


def test_count_triangulations(square, pentagon, hexagon, octagon, l_hexagon):
    """Test the count_triangulations function."""
    assert count_triangulations(square) == 2
    assert count_triangulations(pentagon) == 5
    assert count_triangulations(hexagon) == 14
    assert count_triangulations(octagon) == 132
    # (0, 3) is forced, each side has two choices
    assert count_triangulations(l_hexagon) == 4


def test_enumerate_all(l_hexagon):
    """Test the enumerate_all function."""
    result = enumerate_all(l_hexagon)

    assert result.count == 4
    assert [t.diagonals for t in result.triangulations] == [
        ((0, 2), (0, 3), (0, 4)),
        ((0, 2), (0, 3), (3, 5)),
        ((0, 3), (0, 4), (1, 3)),
        ((0, 3), (1, 3), (3, 5)),
    ]


def test_enumerate_all_matches_backtracking(hexagon, l_hexagon):
    """Test the enumerate_all function against the backtracking enumeration."""
    for polygon in (hexagon, l_hexagon):
        fast = [t.diagonals for t in enumerate_all(polygon).triangulations]
        slow = [t.diagonals for t in enumerate_backtracking(polygon)]
        assert fast == slow


def test_enumerate_all_limit(octagon):
    """Test that enumeration beyond the limit raises ResourceLimit."""
    with pytest.raises(ResourceLimit):
        enumerate_all(octagon, limit=100)


def test_oracle_bct(pentagon, pentagon_fans, pentagon_weight, pentagon_quality):
    """Test the oracle_bct function."""
    result = oracle_bct(pentagon, pentagon_weight, pentagon_quality, 3, k=3)

    assert result.values == [5, 7, 9]
    assert result.witnesses == [pentagon_fans[3], pentagon_fans[1], pentagon_fans[4]]
    assert result.qualities == [2, 3, 2]

    with pytest.raises(Infeasible) as excinfo:
        oracle_bct(pentagon, pentagon_weight, pentagon_quality, 3, k=4)
    assert excinfo.value.count_found == 3


def test_nice_triangulations(pentagon, pentagon_fans, pentagon_quality):
    """Test the nice_triangulations function."""
    # sigma* = 2 (fans 3 and 4); alpha = 1.5 admits sigma <= 3
    nice = nice_triangulations(pentagon, pentagon_quality, 1.5)

    assert nice == [pentagon_fans[3], pentagon_fans[1], pentagon_fans[4]]


def test_oracle_sum_dnt(pentagon):
    """Test the oracle_sum_dnt function."""
    const0 = get_measure("const0", pentagon)

    assert oracle_sum_dnt(pentagon, const0, 1, 2).sum_sd == 4
    # Three fans always include one non-adjacent pair
    assert oracle_sum_dnt(pentagon, const0, 1, 3).sum_sd == 10

    with pytest.raises(Infeasible):
        oracle_sum_dnt(pentagon, const0, 1, 6)

    with pytest.raises(InvalidInput):
        oracle_sum_dnt(pentagon, const0, 1, 1)


def test_oracle_min_dt(pentagon, hexagon):
    """Test the oracle_min_dt function."""
    assert oracle_min_dt(pentagon, 2).min_sd == 4
    assert oracle_min_dt(pentagon, 3).min_sd == 2
    # Two disjoint zigzags exist on a convex hexagon
    assert oracle_min_dt(hexagon, 2).min_sd == 6
