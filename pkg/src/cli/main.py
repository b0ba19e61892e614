"""
Command line front end.

Every subcommand prints one RunReport (JSON or a text table) and returns an
exit code: 0 ok, 2 infeasible, 3 invalid input, 4 resource limit,
5 internal invariant violation.
"""
import argparse
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from colorama import Fore, Style, init
from tqdm import tqdm

from config.config import BATCH_WORKERS, DEFAULT_SEED, INSTANCES_DIR, LOG_LEVEL, SHOW_PROGRESS
from src.cli.render import render_svg
from src.cli.report import (
    error_report,
    instance_summary,
    report_table,
    run_bct,
    run_enumerate,
    run_min_dt,
    run_mwt,
    run_sum_dnt,
    run_validate,
)
from src.diverse.sum_dnt import METHODS
from src.geometry.io import load_polygon, load_triangulations, save_measure_table, save_polygon
from src.instances.generators import GENERATOR_KINDS, GeneratorSpec, all_cocircular, generate
from src.utils.errors import InvalidInput, TriangulationError
from src.utils.models import RunReport, SolutionModel

init()

logger = logging.getLogger(__name__)


def print_status(message, status="INFO", end="\n"):
    """Print a coloured status line to stderr."""
    color = Fore.WHITE
    if status == "INFO":
        color = Fore.BLUE
    elif status == "SUCCESS":
        color = Fore.GREEN
    elif status == "WARNING":
        color = Fore.YELLOW
    elif status == "ERROR":
        color = Fore.RED
    elif status == "PROGRESS":
        color = Fore.CYAN

    print(f"{color}[{status}]{Style.RESET_ALL} {message}", end=end, file=sys.stderr)
    sys.stderr.flush()


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors raised as InvalidInput instead of exiting with 2."""

    def error(self, message):
        raise InvalidInput(f"{self.prog}: {message}")


def rational(text: str) -> Fraction:
    """Parse a decimal or p/q string exactly."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"'{text}' is not a number")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="run_cli.py", description="Diverse and bi-criteria polygon triangulations")
    parser.add_argument("--format", choices=["json", "text"], default="json", help="Report format")
    parser.add_argument("--seed", type=int, default=None, help="Seed for random generators")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="Logging level (DEBUG, INFO, ...)")
    parser.add_argument("--batch", metavar="DIR", help="Run the subcommand on every *.json polygon in DIR")

    sub = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    sub.required = True

    p = sub.add_parser("validate", help="Validate a polygon file")
    p.add_argument("file", nargs="?")

    p = sub.add_parser("enumerate", help="Enumerate all triangulations")
    p.add_argument("file", nargs="?")
    p.add_argument("--limit", type=int, default=None)

    p = sub.add_parser("mwt", help="Optimal triangulation under one measure")
    p.add_argument("file", nargs="?")
    p.add_argument("--measure", required=True)
    p.add_argument("--sense", default="min", choices=["min", "max", "minimize", "maximize"])
    p.add_argument("--k", type=int, default=1)

    p = sub.add_parser("bct", help="Bi-criteria triangulation")
    p.add_argument("file", nargs="?")
    p.add_argument("--weight", required=True)
    p.add_argument("--quality", required=True)
    p.add_argument("--bound", type=rational, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--epsilon", type=rational, default=None)
    p.add_argument("--sense", default="min", choices=["min", "max", "minimize", "maximize"])
    p.add_argument("--constraint", default="at-most", choices=["at-most", "at-least"])
    p.add_argument("--W", type=int, default=None, help="Upper bound on an integral weight")

    p = sub.add_parser("sum-dnt", help="Diverse nice triangulations, sum objective")
    p.add_argument("file", nargs="?")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--measure", default="const0")
    p.add_argument("--alpha", type=rational, default=Fraction(1))
    p.add_argument("--epsilon", type=rational, default=None)
    p.add_argument("--method", default="auto", choices=METHODS)
    p.add_argument("--exact-oracle", action="store_true", help="Same as --method oracle")

    p = sub.add_parser("min-dt", help="Diverse triangulations, minimum objective")
    p.add_argument("file", nargs="?")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("gen", help="Generate an instance polygon")
    p.add_argument("kind", choices=GENERATOR_KINDS)
    p.add_argument("--n", type=int, default=None, help="Vertex count (q for spiral)")
    p.add_argument("--values", type=int, nargs="+", default=[], help="Kite values")
    p.add_argument("--scale", type=int, default=1000)
    p.add_argument("--out", default=None, help="Polygon output file")
    p.add_argument("--measure-out", default=None, help="Kite excess table output file")

    p = sub.add_parser("render", help="Render a polygon and triangulations as SVG")
    p.add_argument("file", nargs="?")
    p.add_argument("--tri", default=None, help="Triangulation file")
    p.add_argument("--out", required=True)
    return parser


def _require_file(args) -> str:
    if not getattr(args, "file", None):
        raise InvalidInput(f"{args.command}: a polygon file is required")
    path = Path(args.file)
    # Bare names fall back to the bundled instance directory
    if not path.exists() and not path.is_absolute() and (INSTANCES_DIR / path).exists():
        return str(INSTANCES_DIR / path)
    return args.file


def execute(args, argv: Sequence[str]) -> RunReport:
    """Run one parsed subcommand and wrap the result or the error in a RunReport."""
    start_time = time.time()
    source = getattr(args, "file", None)
    try:
        certificate = None
        if args.command == "gen":
            seed = DEFAULT_SEED if args.seed is None else args.seed
            polygon, measure = generate(GeneratorSpec(args.kind, args.n, list(args.values), seed, args.scale))
            if args.out:
                save_polygon(polygon, args.out)
            if measure is not None and args.measure_out:
                atoms = {d: measure.atom(d) for d in polygon.diagonals}
                save_measure_table(atoms, args.measure_out, name=measure.name)
            instance, solution = instance_summary(polygon, all_cocircular(polygon)), SolutionModel()
            source = args.out
        else:
            polygon = load_polygon(_require_file(args))
            if args.command == "validate":
                instance, solution, certificate = run_validate(polygon)
            elif args.command == "enumerate":
                instance, solution, certificate = run_enumerate(polygon, args.limit)
            elif args.command == "mwt":
                instance, solution, certificate = run_mwt(polygon, args.measure, args.sense, args.k)
            elif args.command == "bct":
                instance, solution, certificate = run_bct(
                    polygon, args.weight, args.quality, args.bound, args.k,
                    args.epsilon, args.sense, args.constraint, args.W,
                )
            elif args.command == "sum-dnt":
                method = "oracle" if args.exact_oracle else args.method
                instance, solution, certificate = run_sum_dnt(
                    polygon, args.measure, args.k, args.alpha, args.epsilon, method
                )
            elif args.command == "min-dt":
                instance, solution, certificate = run_min_dt(polygon, args.k)
            else:
                triangulations = load_triangulations(args.tri, polygon) if args.tri else []
                Path(args.out).write_text(render_svg(polygon, triangulations))
                instance = instance_summary(polygon)
                solution = SolutionModel(count=len(triangulations))

        timing = int((time.time() - start_time) * 1000)
        return RunReport(
            command=args.command,
            argv=list(argv),
            instance=instance,
            solution=solution,
            certificate=certificate,
            timing_ms=timing,
            source=source,
        )
    except TriangulationError as e:
        logger.warning(f"{args.command} failed: {e}")
        return error_report(args.command, argv, e, int((time.time() - start_time) * 1000), source)
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}", exc_info=True)
        return error_report(args.command, argv, e, int((time.time() - start_time) * 1000), source)


def _run_batch(args, argv: Sequence[str]) -> List[RunReport]:
    files = sorted(Path(args.batch).glob("*.json"))
    if not files:
        raise InvalidInput(f"No *.json polygon files in {args.batch}")

    def one(path: Path) -> RunReport:
        file_args = argparse.Namespace(**vars(args))
        file_args.file = str(path)
        return execute(file_args, argv)

    with ThreadPoolExecutor(max_workers=BATCH_WORKERS) as pool:
        return list(tqdm(pool.map(one, files), total=len(files), desc="Batch", disable=not SHOW_PROGRESS))


def _emit(reports: List[RunReport], fmt: str, batch: bool) -> None:
    if fmt == "json":
        if batch:
            print("[" + ",\n".join(r.model_dump_json(indent=2) for r in reports) + "]")
        else:
            print(reports[0].model_dump_json(indent=2))
        return
    for r in reports:
        label = "SUCCESS" if r.status == "ok" else "ERROR"
        print_status(f"{r.command} {r.source or ''}: {r.status}", label)
        print(report_table(r))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, run the subcommand and print its report.

    Returns:
        Process exit code
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except InvalidInput as e:
        report = error_report("usage", argv, e)
        print(report.model_dump_json(indent=2))
        return report.exit_code

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        reports = _run_batch(args, argv) if args.batch else [execute(args, argv)]
    except TriangulationError as e:
        reports = [error_report(args.command, argv, e)]

    _emit(reports, args.format, bool(args.batch))
    return max(r.exit_code for r in reports)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
