"""
Approximation scheme for bi-criteria triangulation with a real-valued quality.

The quality atoms are scaled by (n-2)/(eps*B) and floored, which turns the
bound into the integer floor((n-2)/eps) and lets the integer-quality DP run.
A triangulation has at most n-2 triangles or n-3 diagonals, so flooring loses
less than n-2 scaled units and the returned quality stays within (1+eps)*B.
"""
import logging
import math
from dataclasses import replace
from fractions import Fraction
from typing import Optional, Union

from config.config import MEASURE_TOLERANCE
from src.bct.kbest import KBestList
from src.bct.solver import BctInstance, solve_bct_integer_quality, solve_bct_minmax
from src.geometry.measures import DecomposableMeasure, evaluate_measure
from src.triangulation.triangulation import Triangulation
from src.utils.errors import Infeasible, InvalidInput, InvariantViolation

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]


def scaled_quality(sigma: DecomposableMeasure, factor: Fraction) -> DecomposableMeasure:
    """Integral measure with atoms floor(factor * sigma(e)), computed in exact arithmetic."""
    return DecomposableMeasure(
        f"{sigma.name}~scaled",
        sigma.base,
        sigma.combiner,
        lambda e: math.floor(factor * Fraction(sigma.atom(e))),
        integral=True,
        polygon=sigma.polygon,
    )


def zero_indicator(sigma: DecomposableMeasure) -> DecomposableMeasure:
    """Integral measure that is 0 exactly on the elements where sigma vanishes."""
    return DecomposableMeasure(
        f"{sigma.name}~zero",
        sigma.base,
        sigma.combiner,
        lambda e: 0 if sigma.atom(e) == 0 else 1,
        integral=True,
        polygon=sigma.polygon,
    )


def _rescore(inst: BctInstance, result: KBestList) -> KBestList:
    qualities = [
        evaluate_measure(inst.quality, t) if t is not None else None
        for t in result.witnesses
    ]
    return KBestList(list(result.values), list(result.witnesses), qualities, result.sense)


def solve_bct_fptas_kbest(inst: BctInstance, epsilon: Number, cell_limit: Optional[int] = None) -> KBestList:
    """
    k best triangulations of the scaled instance, reported with their real quality.

    Args:
        inst: BCT instance with an at-most constraint
        epsilon: Approximation parameter, > 0
        cell_limit: Resource guard for the scaled DP

    Returns:
        KBestList whose witnesses weigh no more than the exact optimum and
        satisfy sigma(T) <= (1 + epsilon) * B
    """
    if epsilon is None or epsilon <= 0:
        raise InvalidInput(f"epsilon must be positive, got {epsilon}")
    if inst.constraint_sense != "at-most":
        raise InvalidInput("The FPTAS handles at-most quality constraints only")

    sigma = inst.quality
    if sigma.combiner != "sum" or inst.weight.combiner != "sum":
        return solve_bct_minmax(inst, cell_limit=cell_limit)

    n = inst.polygon.n
    if inst.bound == 0:
        scaled = replace(inst, quality=zero_indicator(sigma), bound=0)
        logger.info("FPTAS with B = 0: solving the zero-quality instance exactly")
    else:
        factor = Fraction(n - 2) / (Fraction(epsilon) * Fraction(inst.bound))
        bound = math.floor(Fraction(n - 2) / Fraction(epsilon))
        scaled = replace(inst, quality=scaled_quality(sigma, factor), bound=bound)
        logger.info(f"FPTAS: n={n}, epsilon={epsilon}, scaled bound={bound}")

    try:
        result = _rescore(inst, solve_bct_integer_quality(scaled, cell_limit))
    except Infeasible as e:
        if e.partial is not None:
            e.partial = _rescore(inst, e.partial)
        raise

    limit = (1 + Fraction(epsilon)) * Fraction(inst.bound)
    for t, q in zip(result.witnesses, result.qualities):
        if t is not None and Fraction(q) > limit + Fraction(MEASURE_TOLERANCE):
            raise InvariantViolation(f"FPTAS witness {t} has quality {q} above (1+eps)B = {float(limit)}")
    return result


def solve_bct_fptas(inst: BctInstance, epsilon: Number, cell_limit: Optional[int] = None) -> Triangulation:
    """Single best triangulation of the scaled instance."""
    result = solve_bct_fptas_kbest(replace(inst, k=1), epsilon, cell_limit)
    return result.witnesses[0]
