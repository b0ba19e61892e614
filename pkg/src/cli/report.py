"""
Run reports shared by the command line and the HTTP service.

Each ``run_*`` function solves one kind of instance and returns the pieces of
a RunReport; errors propagate as TriangulationError subclasses.
"""
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from tabulate import tabulate

from src.bct.kbest import KBestList
from src.bct.solver import BctInstance, optimal_triangulation, solve_bct
from src.diverse.min_dt import min_dt
from src.diverse.sum_dnt import DntInstance, solve_sum_dnt
from src.geometry.measures import DecomposableMeasure, evaluate_measure, get_measure
from src.geometry.polygon import Polygon
from src.instances.generators import all_cocircular
from src.oracle.enumerate import enumerate_all
from src.triangulation.triangulation import Certificate, DiverseSolution, Triangulation
from src.utils.errors import Infeasible, InvalidInput, InvariantViolation, ResourceLimit
from src.utils.models import CertificateModel, InstanceSummary, RunReport, SolutionModel

logger = logging.getLogger(__name__)

Outcome = Tuple[InstanceSummary, SolutionModel, Optional[CertificateModel]]

SENSE_ALIASES = {"min": "minimize", "max": "maximize", "minimize": "minimize", "maximize": "maximize"}


def fraction_str(value) -> Optional[str]:
    """Rational as "p/q" (or "p" when integral)."""
    if value is None:
        return None
    return str(Fraction(value))


def finite_or_none(value) -> Optional[float]:
    if value is None or (isinstance(value, float) and math.isinf(value)):
        return None
    return float(value)


def instance_summary(polygon: Polygon, cocircular: Optional[bool] = None) -> InstanceSummary:
    return InstanceSummary(
        n=polygon.n,
        diagonal_count=len(polygon.diagonals),
        convex=polygon.is_convex,
        flipped=polygon.flipped,
        cocircular=cocircular,
    )


def triangulation_lists(triangulations: Sequence[Triangulation]) -> List[List[Tuple[int, int]]]:
    return [list(t.diagonals) for t in triangulations]


def certificate_model(certificate: Certificate) -> CertificateModel:
    return CertificateModel(
        method=certificate.method,
        alpha_bound_checked=certificate.alpha_bound_checked,
        alpha_effective=fraction_str(certificate.alpha_effective),
        beta=fraction_str(certificate.beta),
        r_used=certificate.r_used,
    )


def diverse_solution_model(solution: DiverseSolution, quality: Optional[DecomposableMeasure] = None) -> SolutionModel:
    qualities = [finite_or_none(evaluate_measure(quality, t)) for t in solution.triangulations] if quality else []
    return SolutionModel(
        triangulations=triangulation_lists(solution.triangulations),
        count=solution.k,
        sum_sd=solution.sum_sd,
        min_sd=solution.min_sd,
        quality_values=qualities,
    )


def kbest_solution_model(result: KBestList) -> SolutionModel:
    return SolutionModel(
        triangulations=triangulation_lists(result.triangulations),
        count=result.found,
        quality_values=[finite_or_none(q) for q in result.qualities if q is not None],
        weight_values=[finite_or_none(v) for v, t in zip(result.values, result.witnesses) if t is not None],
    )


def partial_solution(error: Infeasible) -> Optional[SolutionModel]:
    """What an Infeasible error found before giving up, if anything."""
    partial = error.partial
    if isinstance(partial, KBestList):
        return kbest_solution_model(partial)
    if isinstance(partial, list) and partial:
        return SolutionModel(triangulations=triangulation_lists(partial), count=len(partial))
    return None


STATUS_BY_ERROR = (
    (Infeasible, "infeasible"),
    (InvalidInput, "invalid"),
    (ResourceLimit, "resource-limit"),
    (InvariantViolation, "internal-error"),
)


def status_for(error: Exception) -> Tuple[str, int]:
    """Report status and exit code for an exception."""
    for cls, status in STATUS_BY_ERROR:
        if isinstance(error, cls):
            return status, error.exit_code
    return "internal-error", InvariantViolation.exit_code


def error_report(command: str, argv: Sequence[str], error: Exception, timing_ms: int = 0, source: Optional[str] = None) -> RunReport:
    status, code = status_for(error)
    logger.debug(f"{command}: {status} report, exit code {code}")
    solution = partial_solution(error) if isinstance(error, Infeasible) else None
    return RunReport(
        command=command,
        argv=list(argv),
        status=status,
        exit_code=code,
        message=str(error),
        solution=solution,
        timing_ms=timing_ms,
        source=source,
    )


def resolve_sense(sense: str) -> str:
    if sense not in SENSE_ALIASES:
        raise InvalidInput(f"Unknown sense '{sense}'")
    return SENSE_ALIASES[sense]


# Solver runs

def run_validate(polygon: Polygon) -> Outcome:
    return instance_summary(polygon, all_cocircular(polygon)), SolutionModel(), None


def run_enumerate(polygon: Polygon, limit: Optional[int] = None) -> Outcome:
    result = enumerate_all(polygon, limit)
    solution = SolutionModel(triangulations=triangulation_lists(result.triangulations), count=result.count)
    return instance_summary(polygon), solution, None


def run_mwt(polygon: Polygon, measure_name: str, sense: str = "minimize", k: int = 1) -> Outcome:
    measure = get_measure(measure_name, polygon)
    sense = resolve_sense(sense)
    if k == 1:
        value, witness = optimal_triangulation(polygon, measure, sense)
        solution = SolutionModel(
            triangulations=[list(witness.diagonals)],
            count=1,
            weight_values=[finite_or_none(value)],
            optimum=finite_or_none(value),
        )
        return instance_summary(polygon), solution, None

    const0 = get_measure("const0", polygon)
    result = solve_bct(BctInstance(polygon, measure, const0, 0, sense, "at-most", k))
    solution = kbest_solution_model(result)
    solution.optimum = finite_or_none(result.values[0])
    return instance_summary(polygon), solution, None


def run_bct(
    polygon: Polygon,
    weight_name: str,
    quality_name: str,
    bound,
    k: int = 1,
    epsilon=None,
    sense: str = "minimize",
    constraint: str = "at-most",
    W: Optional[int] = None,
) -> Outcome:
    weight = get_measure(weight_name, polygon)
    quality = get_measure(quality_name, polygon)
    inst = BctInstance(polygon, weight, quality, bound, resolve_sense(sense), constraint, k)
    result = solve_bct(inst, W=W, epsilon=epsilon)
    solution = kbest_solution_model(result)
    solution.optimum = finite_or_none(result.values[0])
    certificate = CertificateModel(method="fptas" if epsilon is not None else "exact", alpha_bound_checked=True)
    if epsilon is not None:
        certificate.alpha_effective = fraction_str(1 + Fraction(epsilon))
    return instance_summary(polygon), solution, certificate


def run_sum_dnt(
    polygon: Polygon,
    measure_name: str,
    k: int,
    alpha=1,
    epsilon=None,
    method: str = "auto",
) -> Outcome:
    sigma = get_measure(measure_name, polygon)
    solution = solve_sum_dnt(DntInstance(polygon, sigma, alpha, k, epsilon), method)
    return instance_summary(polygon), diverse_solution_model(solution, sigma), certificate_model(solution.certificate)


def run_min_dt(polygon: Polygon, k: int) -> Outcome:
    solution = min_dt(polygon, k)
    return instance_summary(polygon), diverse_solution_model(solution), certificate_model(solution.certificate)


def report_table(report: RunReport) -> str:
    """Human-readable rendering of a report."""
    rows = [["command", report.command], ["status", report.status]]
    if report.message:
        rows.append(["message", report.message])
    if report.instance:
        rows.append(["vertices", report.instance.n])
        rows.append(["diagonals", report.instance.diagonal_count])
        rows.append(["convex", report.instance.convex])
    if report.solution:
        s = report.solution
        for label, value in (("count", s.count), ("sum_sd", s.sum_sd), ("min_sd", s.min_sd), ("optimum", s.optimum)):
            if value is not None:
                rows.append([label, value])
    if report.certificate:
        rows.append(["method", report.certificate.method])
        if report.certificate.beta:
            rows.append(["beta", report.certificate.beta])
        if report.certificate.r_used is not None:
            rows.append(["r_used", report.certificate.r_used])
    rows.append(["time (ms)", report.timing_ms])
    text = tabulate(rows, headers=["field", "value"], tablefmt="pretty")

    if report.solution and report.solution.triangulations:
        tri_rows = [[i + 1, " ".join(f"{a}-{b}" for a, b in t)] for i, t in enumerate(report.solution.triangulations)]
        text += "\n" + tabulate(tri_rows, headers=["#", "diagonals"], tablefmt="pretty")
    return text
