import math
import numpy as np
import pytest
from fractions import Fraction
from itertools import combinations
from math import comb

from src.diverse.convex import convex_disjoint, convex_sum_dt_ptas, zigzag_diagonals
from src.diverse.sum_dnt import (
    DntInstance,
    farthest_insertion_step,
    frequency_weight,
    greedy_sum_dnt,
    local_search_swap,
    nice_bound,
    solve_sum_dnt,
    swap_beta,
    swap_round_limit,
)
from src.geometry.measures import evaluate_measure, get_measure
from src.instances.generators import gen_convex_regular, gen_random_simple
from src.oracle.enumerate import catalan, enumerate_all
from src.oracle.optimum import oracle_sum_dnt
from src.triangulation.triangulation import symmetric_difference
from src.utils.errors import Infeasible, InvalidInput, KTooLarge, NotConvex


def test_dnt_instance_validation(pentagon):
    """Test the DntInstance validation."""
    const0 = get_measure("const0", pentagon)

    with pytest.raises(InvalidInput):
        DntInstance(pentagon, const0, 1, 1)

    with pytest.raises(InvalidInput):
        DntInstance(pentagon, const0, Fraction(1, 2), 2)

    with pytest.raises(InvalidInput):
        DntInstance(pentagon, const0, 1, 2, epsilon=0)


def test_frequency_weight(pentagon, pentagon_fans):
    """Test the frequency_weight function."""
    history = [pentagon_fans[0], pentagon_fans[2]]
    weight = frequency_weight(history)

    # (0, 2) is used twice, (0, 3) and (2, 4) once
    assert evaluate_measure(weight, pentagon_fans[0]) == 3
    assert evaluate_measure(weight, pentagon_fans[1]) == 0

    assert evaluate_measure(frequency_weight([], pentagon), pentagon_fans[0]) == 0

    with pytest.raises(InvalidInput):
        frequency_weight([])


def test_frequency_weight_measures_distance(pentagon, pentagon_fans):
    """Test that the frequency weight determines the distance to the history."""
    history = [pentagon_fans[0], pentagon_fans[2]]
    weight = frequency_weight(history)
    i, n3 = len(history), pentagon.n - 3

    for t in enumerate_all(pentagon).triangulations:
        distance = sum(symmetric_difference(t, h) for h in history)
        assert distance == 2 * i * n3 - 2 * evaluate_measure(weight, t)


def test_nice_bound(pentagon, pentagon_quality):
    """Test the nice_bound function."""
    assert nice_bound(DntInstance(pentagon, pentagon_quality, Fraction(3, 2), 2), 2) == 3
    assert nice_bound(DntInstance(pentagon, pentagon_quality, Fraction(7, 5), 2), 2) == 2
    assert nice_bound(DntInstance(pentagon, pentagon_quality, 2, 2), math.inf) == math.inf


def test_swap_parameters():
    """Test the swap_beta and swap_round_limit functions."""
    assert swap_beta(2) == Fraction(1, 2)
    assert swap_beta(3) == Fraction(1, 2)
    assert swap_beta(9) == Fraction(4, 5)
    assert swap_round_limit(1) == 4
    assert swap_round_limit(3) == 24


def test_greedy_sum_dnt(pentagon, pentagon_fans):
    """Test the greedy_sum_dnt function on the pentagon."""
    inst = DntInstance(pentagon, get_measure("const0", pentagon), 1, 3)
    solution = greedy_sum_dnt(inst)

    assert solution.triangulations == [pentagon_fans[0], pentagon_fans[1], pentagon_fans[2]]
    assert solution.sum_sd == 10
    assert solution.certificate.method == "greedy"
    assert solution.certificate.beta == Fraction(1, 2)
    assert solution.certificate.alpha_bound_checked


def test_greedy_sum_dnt_with_alpha(pentagon, pentagon_fans, pentagon_quality):
    """Test the greedy_sum_dnt function with a quality bound."""
    # sigma* = 2, so alpha = 3/2 admits fans 3, 1 and 4
    inst = DntInstance(pentagon, pentagon_quality, Fraction(3, 2), 3)
    solution = solve_sum_dnt(inst, "greedy")

    assert solution.triangulations == [pentagon_fans[3], pentagon_fans[4], pentagon_fans[1]]
    assert solution.sum_sd == 8
    assert solution.sum_sd == oracle_sum_dnt(pentagon, pentagon_quality, Fraction(3, 2), 3).sum_sd
    assert solution.certificate.alpha_effective == Fraction(3, 2)


def test_optimal_quality(pentagon, pentagon_fans, pentagon_quality):
    """Test the optimal-quality method."""
    inst = DntInstance(pentagon, pentagon_quality, 1, 2)
    solution = solve_sum_dnt(inst)

    assert solution.certificate.method == "optimal-quality"
    assert solution.triangulations == [pentagon_fans[3], pentagon_fans[4]]
    assert solution.sum_sd == 4


def test_optimal_quality_infeasible(pentagon, pentagon_quality):
    """Test that asking for more optimal triangulations than exist raises Infeasible."""
    inst = DntInstance(pentagon, pentagon_quality, 1, 3)

    with pytest.raises(Infeasible) as excinfo:
        solve_sum_dnt(inst, "optimal-quality")

    assert excinfo.value.count_found == 2
    assert len(excinfo.value.partial) == 2


def test_optimal_quality_needs_alpha_one(pentagon, pentagon_quality):
    """Test that the optimal-quality method rejects alpha > 1."""
    with pytest.raises(InvalidInput):
        solve_sum_dnt(DntInstance(pentagon, pentagon_quality, 2, 2), "optimal-quality")


def test_local_search_swap(pentagon):
    """Test the local_search_swap function."""
    inst = DntInstance(pentagon, get_measure("const0", pentagon), 1, 4)
    solution = local_search_swap(inst, greedy_sum_dnt(inst))

    # Any four fans of a pentagon give 18
    assert solution.sum_sd == 18
    assert solution.certificate.method == "swap"
    assert solution.certificate.beta == Fraction(3, 5)


def test_sum_dnt_approximation(hexagon):
    """Test the greedy and swap solvers against the exact optimum."""
    sigma = get_measure("euclidean", hexagon)
    inst = DntInstance(hexagon, sigma, Fraction(6, 5), 3)

    optimum = oracle_sum_dnt(hexagon, sigma, Fraction(6, 5), 3).sum_sd
    greedy = solve_sum_dnt(inst, "greedy")
    swapped = solve_sum_dnt(inst, "swap")

    assert 2 * greedy.sum_sd >= optimum
    assert swapped.sum_sd >= greedy.sum_sd
    assert swapped.sum_sd <= optimum


def test_sum_dnt_fptas_path(hexagon):
    """Test the Sum-DNT solver when the quality goes through the FPTAS."""
    sigma = get_measure("euclidean", hexagon)
    inst = DntInstance(hexagon, sigma, Fraction(6, 5), 3, epsilon=Fraction(1, 2))
    assert inst.uses_fptas

    solution = solve_sum_dnt(inst, "greedy")
    assert solution.k == 3
    assert solution.certificate.alpha_effective == Fraction(9, 5)


def test_solve_sum_dnt_unknown_method(pentagon):
    """Test that an unknown method raises InvalidInput."""
    inst = DntInstance(pentagon, get_measure("const0", pentagon), 1, 2)

    with pytest.raises(InvalidInput):
        solve_sum_dnt(inst, "annealing")


def test_zigzag_diagonals():
    """Test the zigzag_diagonals function."""
    assert zigzag_diagonals(5, 0) == [(0, 2), (2, 4)]
    assert zigzag_diagonals(5, 1) == [(0, 3), (1, 3)]
    assert zigzag_diagonals(6, 0) == [(0, 2), (2, 5), (3, 5)]
    assert zigzag_diagonals(6, 1) == [(0, 3), (0, 4), (1, 3)]
    assert zigzag_diagonals(6, 2) == [(1, 4), (1, 5), (2, 4)]


def test_convex_disjoint(pentagon, hexagon, octagon):
    """Test the convex_disjoint function."""
    solution = convex_disjoint(hexagon, 3)
    assert solution.sum_sd == 18
    assert solution.min_sd == 6
    assert solution.certificate.beta == Fraction(1)

    # k(k-1)(n-3) is the largest possible sum
    assert convex_disjoint(octagon, 4).sum_sd == 4 * 3 * 5
    assert convex_disjoint(pentagon, 2).sum_sd == 4


def test_convex_disjoint_errors(pentagon, l_hexagon):
    """Test the convex_disjoint parameter checks."""
    with pytest.raises(KTooLarge):
        convex_disjoint(pentagon, 3)

    with pytest.raises(NotConvex):
        convex_disjoint(l_hexagon, 2)

    with pytest.raises(InvalidInput):
        convex_disjoint(pentagon, 1)


def test_convex_sum_dt_ptas(pentagon, hexagon):
    """Test the convex_sum_dt_ptas dispatch."""
    assert convex_sum_dt_ptas(hexagon, 3, 0.5).certificate.method == "disjoint"

    exhaustive = convex_sum_dt_ptas(pentagon, 3, 0.5)
    assert exhaustive.certificate.method == "exhaustive"
    assert exhaustive.sum_sd == 10

    swapped = convex_sum_dt_ptas(pentagon, 4, 0.5)
    assert swapped.certificate.method == "swap"
    assert swapped.sum_sd == 18

    with pytest.raises(Infeasible):
        convex_sum_dt_ptas(pentagon, 6, 0.5)


def test_solve_sum_dnt_convex_method(pentagon):
    """Test the convex method with the default epsilon."""
    inst = DntInstance(pentagon, get_measure("const0", pentagon), 1, 3)

    assert solve_sum_dnt(inst, "convex").sum_sd == 10


def test_convex_disjoint_all_sizes():
    """Test the convex_disjoint function for every n up to 40 with the largest k."""
    for n in range(4, 41):
        polygon = gen_convex_regular(n)
        k = n // 2
        solution = convex_disjoint(polygon, k)

        assert len(solution.triangulations) == k
        for a, b in combinations(solution.triangulations, 2):
            assert not (a.diagonal_set & b.diagonal_set)
            assert symmetric_difference(a, b) == 2 * (n - 3)
        assert solution.sum_sd == k * (k - 1) * (n - 3)


def test_sum_dnt_factors_against_oracle():
    """Test the greedy and swap factors against the exact optimum on convex and random polygons."""
    polygons = [gen_convex_regular(n) for n in range(5, 10)]
    rng = np.random.default_rng(5)
    polygons += [gen_random_simple(int(rng.integers(6, 9)), seed=int(rng.integers(0, 10**6))) for _ in range(6)]

    for polygon in polygons:
        total = catalan(polygon.n - 2) if polygon.is_convex else len(enumerate_all(polygon).triangulations)
        const0 = get_measure("const0", polygon)
        for k in (2, 3, 4):
            if total < k or comb(total, k) > 200_000:
                continue
            inst = DntInstance(polygon, const0, 1, k)
            optimum = oracle_sum_dnt(polygon, const0, 1, k).sum_sd
            greedy = greedy_sum_dnt(inst)
            swapped = local_search_swap(inst, greedy)

            assert 2 * greedy.sum_sd >= optimum
            assert swapped.sum_sd >= swap_beta(k) * optimum
            assert swapped.sum_sd >= greedy.sum_sd


def test_farthest_step_matches_frequency_minimizers():
    """Test that the farthest triangulations are exactly the frequency-weight minimizers."""
    rng = np.random.default_rng(13)

    for _ in range(12):
        polygon = gen_random_simple(int(rng.integers(6, 9)), seed=int(rng.integers(0, 10**6)))
        triangulations = enumerate_all(polygon).triangulations
        size = min(3, len(triangulations) - 1)
        if size < 1:
            continue
        picks = rng.choice(len(triangulations), size=size, replace=False)
        history = [triangulations[int(i)] for i in picks]
        taken = {t.diagonals for t in history}
        rest = [t for t in triangulations if t.diagonals not in taken]

        weight = frequency_weight(history, polygon)
        distance = {t.diagonals: sum(symmetric_difference(t, h) for h in history) for t in rest}
        frequency = {t.diagonals: evaluate_measure(weight, t) for t in rest}
        farthest = {d for d, v in distance.items() if v == max(distance.values())}
        lightest = {d for d, v in frequency.items() if v == min(frequency.values())}
        assert farthest == lightest

        inst = DntInstance(polygon, get_measure("const0", polygon), 1, size + 1)
        assert farthest_insertion_step(inst, history, 0).diagonals in farthest
