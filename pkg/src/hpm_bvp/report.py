"""End-to-end solve runs and publication-style comparison tables.

solve_file/solve_source run the full pipeline (parse -> elaborate -> ladder
-> closure solve -> substitution) and tabulate the numeric series on an
evenly spaced grid against the declared exact solution, when one is given.
The residual diagnostic re-evaluates the ODE defect of the numeric series
with the coefficient functions computed by direct numeric evaluation (not
their truncated seeds), so it is an independent check on the truncation.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from . import probspec
from .algebra import ConstantSolution
from .hpm import solve_problem
from .probspec import ProblemFile, eval_numeric
from .series import TruncatedSeries

DEFAULT_GRID = 11


@dataclass(frozen=True)
class TableRow:
    x: float
    exact: Optional[float]
    approx: float
    abs_error: Optional[float]


@dataclass
class SolveReport:
    """Everything the CLI prints or exports for one solve."""

    problem_name: str
    constants: ConstantSolution
    series_coeffs: list[tuple[int, float]]
    table: list[TableRow]
    residual_sup: float
    warnings: list[str]


def residual_diagnostic(
    pf: ProblemFile, numeric_series: TruncatedSeries, grid: Sequence[float]
) -> float:
    """Sup over the grid of |U^(m) - f - sum c_j U^(d_j) - sum g_l U^q_l|."""
    derivative_orders = {0}
    derivative_orders.update(d for _, d in pf.linear)
    derivatives = {
        d: numeric_series.differentiate(d) for d in sorted(derivative_orders)
    }
    lhs_series = numeric_series.differentiate(pf.order)
    sup = 0.0
    for x in grid:
        value = lhs_series.eval_at(x).constant_value() - eval_numeric(pf.forcing, x)
        for coeff, d in pf.linear:
            value -= eval_numeric(coeff, x) * derivatives[d].eval_at(x).constant_value()
        u_value = derivatives[0].eval_at(x).constant_value()
        for coeff, power in pf.nonlinear:
            value -= eval_numeric(coeff, x) * u_value**power
        sup = max(sup, abs(value))
    return sup


def solve_source(
    text: str,
    *,
    terms: Optional[int] = None,
    cap: Optional[int] = None,
    grid: int = DEFAULT_GRID,
    tol: float = 1e-12,
) -> SolveReport:
    """Solve a problem given as file text; see solve_file."""
    if grid < 2:
        raise ValueError("grid needs at least 2 points")
    pf = probspec.with_overrides(probspec.parse_problem(text), terms=terms, cap=cap)
    problem = probspec.elaborate(pf)
    solution = solve_problem(problem, guess=probspec.numeric_guess(pf), tol=tol)

    xs = [i / (grid - 1) for i in range(grid)]
    rows = []
    for x in xs:
        approx = solution.numeric_series.eval_at(x).constant_value()
        if pf.exact is not None:
            exact = eval_numeric(pf.exact, x)
            rows.append(TableRow(x, exact, approx, abs(approx - exact)))
        else:
            rows.append(TableRow(x, None, approx, None))

    coeffs = [
        (k, c.constant_value())
        for k, c in enumerate(solution.numeric_series.coeffs)
    ]
    residual = residual_diagnostic(pf, solution.numeric_series, xs)
    return SolveReport(
        problem_name=pf.name,
        constants=solution.constants,
        series_coeffs=coeffs,
        table=rows,
        residual_sup=residual,
        warnings=list(solution.diagnostics),
    )


def solve_file(
    path: Union[str, Path],
    *,
    terms: Optional[int] = None,
    cap: Optional[int] = None,
    grid: int = DEFAULT_GRID,
    tol: float = 1e-12,
) -> SolveReport:
    """Run the full pipeline on a problem file; deterministic for fixed inputs."""
    text = Path(path).read_text(encoding="utf-8")
    return solve_source(text, terms=terms, cap=cap, grid=grid, tol=tol)


def write_csv(report: SolveReport, path: Union[str, Path]) -> None:
    """Export the comparison table as RFC-4180 CSV with LF line endings."""
    with_exact = any(row.exact is not None for row in report.table)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        header = ["x", "exact", "approx", "abs_error"] if with_exact else ["x", "approx"]
        writer.writerow(header)
        for row in report.table:
            if with_exact:
                writer.writerow(
                    [
                        f"{row.x:.17g}",
                        f"{row.exact:.17g}",
                        f"{row.approx:.17g}",
                        f"{row.abs_error:.17g}",
                    ]
                )
            else:
                writer.writerow([f"{row.x:.17g}", f"{row.approx:.17g}"])
