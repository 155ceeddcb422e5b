"""Command-line front end.

    hpm-bvp solve <file.bvp> [--terms K] [--cap D] [--grid N] [--tol T]
                             [--csv PATH] [--coeffs] [--residual]
    hpm-bvp check <file.bvp>

Exit codes: 0 success, 2 parse/semantic error, 3 solver failure, 4 I/O error.
A bare name such as ``ex3_1`` resolves to the bundled problem file of that
name when no file exists at the given path.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import problems, report
from .algebra import SolverError
from .probspec import ProblemSpecError, elaborate, parse_problem


def _read_source(spec: str) -> str:
    path = Path(spec)
    if path.exists():
        return path.read_text(encoding="utf-8")
    name = path.name.removesuffix(".bvp")
    if path.parent == Path(".") and name in problems.names():
        return problems.load_text(name)
    raise FileNotFoundError(f"no such problem file: {spec}")


def _print_report(rep: report.SolveReport, show_coeffs: bool, show_residual: bool) -> None:
    print(f"problem: {rep.problem_name}")
    sol = rep.constants
    print(f"constants ({sol.method}, {sol.iterations} iterations, "
          f"residual max-norm {sol.residual_norm:.3e}):")
    for name, value in sol.assignment.items():
        print(f"  {name} = {value!r}")
    with_exact = rep.table and rep.table[0].exact is not None
    if with_exact:
        print(f"{'x':>6} {'exact':>22} {'approx':>22} {'abs_error':>12}")
        for row in rep.table:
            print(
                f"{row.x:>6.2f} {row.exact:>22.14g} {row.approx:>22.14g} "
                f"{row.abs_error:>12.5e}"
            )
    else:
        print(f"{'x':>6} {'approx':>22}")
        for row in rep.table:
            print(f"{row.x:>6.2f} {row.approx:>22.14g}")
    if show_coeffs:
        print("series coefficients:")
        for power, value in rep.series_coeffs:
            print(f"  x^{power:<3d} {value!r}")
    if show_residual:
        print(f"ODE residual sup over grid: {rep.residual_sup:.5e}")
    for warning in rep.warnings:
        print(f"note: {warning}")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="hpm-bvp",
        description="Homotopy perturbation solver for multi-point boundary value problems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve_parser = sub.add_parser("solve", help="solve a problem file and print the table")
    solve_parser.add_argument("file", help="problem file path or bundled name")
    solve_parser.add_argument("--terms", type=int, help="override ladder length K")
    solve_parser.add_argument("--cap", type=int, help="override series degree cap")
    solve_parser.add_argument("--grid", type=int, default=report.DEFAULT_GRID,
                              help="number of evenly spaced table points (default 11)")
    solve_parser.add_argument("--tol", type=float, default=1e-12,
                              help="constant-solver residual tolerance")
    solve_parser.add_argument("--csv", metavar="PATH", help="also write the table as CSV")
    solve_parser.add_argument("--coeffs", action="store_true",
                              help="print the numeric series coefficients")
    solve_parser.add_argument("--residual", action="store_true",
                              help="print the ODE residual diagnostic")

    check_parser = sub.add_parser("check", help="parse and elaborate only")
    check_parser.add_argument("file", help="problem file path or bundled name")

    args = parser.parse_args(argv)
    try:
        source = _read_source(args.file)
        if args.command == "check":
            pf = parse_problem(source)
            problem = elaborate(pf)
            unknowns = ", ".join(problem.symbols) or "(none)"
            print(f"problem: {pf.name}")
            print(f"order: {problem.order}")
            print(f"unknowns: {len(problem.unknown_ics)} [{unknowns}]")
            print(f"closures: {len(problem.closures)}")
            print(f"terms: {problem.terms}  cap: {problem.cap}")
        else:
            rep = report.solve_source(
                source, terms=args.terms, cap=args.cap, grid=args.grid, tol=args.tol
            )
            _print_report(rep, args.coeffs, args.residual)
            if args.csv:
                report.write_csv(rep, args.csv)
    except (ProblemSpecError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except SolverError as err:
        print(f"solver error: {err}", file=sys.stderr)
        return 3
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
