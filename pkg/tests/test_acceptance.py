"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one PASS/FAIL line (run pytest with -s to see them on
success; on failure the line is part of the assertion message).
"""

import math
import random

from hpm_bvp import ladder_sup_norms, problems, solve_problem, solve_source
from hpm_bvp.probspec import elaborate, parse_problem

import properties


def _report(label: str, ok: bool, detail: str) -> None:
    line = f"[{label}] {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    assert ok, line


def _solve(name: str, **overrides):
    return solve_source(problems.load_text(name), **overrides)


def exact_three_point(x: float) -> float:
    # closed form for ex3_1 (k = 5, a = 1)
    k, a = 5.0, 1.0
    return (
        (a / k**3) * (math.sinh(k / 2) - math.sinh(k * x))
        + (a / k**2) * (x - 0.5)
        + (a / k**3) * math.tanh(k / 2) * (math.cosh(k * x) - math.cosh(k / 2))
    )


def test_criterion_1_ex3_1_constants_and_errors():
    rep = _solve("ex3_1")
    a = rep.constants.assignment["A"]
    b = rep.constants.assignment["B"]
    da = abs(a - (-0.012107085822126442))
    db = abs(b - 0.19732286064025403)
    worst = 0.0
    for row in rep.table:
        err = abs(row.approx - exact_three_point(row.x))
        worst = max(worst, err)
    ok = da <= 1e-9 and db <= 1e-9 and worst <= 5e-9
    _report(
        "C1",
        ok,
        f"|dA|={da:.2e} |dB|={db:.2e} (tol 1e-9); max |err|={worst:.2e} (tol 5e-9)",
    )


def test_criterion_2_ex3_1_boundary_residuals():
    rep = _solve("ex3_1")
    problem = elaborate(parse_problem(problems.load_text("ex3_1")))
    solution = solve_problem(problem)
    u = solution.numeric_series
    at_half = abs(u.eval_at(0.5).constant_value())
    d1 = u.differentiate(1)
    at_zero = abs(d1.eval_at(0.0).constant_value())
    at_one = abs(d1.eval_at(1.0).constant_value())
    ok = at_half <= 1e-11 and at_zero <= 1e-10 and at_one <= 1e-10
    _report(
        "C2",
        ok,
        f"|U(0.5)|={at_half:.2e} (tol 1e-11); |U'(0)|={at_zero:.2e}, "
        f"|U'(1)|={at_one:.2e} (tol 1e-10)",
    )


def test_criterion_3_ex3_2_constants_and_errors():
    reference = {
        "A": 0.9999999980259633,
        "B": 1.0000000216759806,
        "C": -1.6366491839105507e-7,
        "D": 1.00000056811826,
    }
    rep = _solve("ex3_2")
    worst_const = max(
        abs(rep.constants.assignment[name] - value) for name, value in reference.items()
    )
    worst_low = max(
        row.abs_error for row in rep.table if row.x <= 0.5
    )
    worst_high = max(row.abs_error for row in rep.table if row.x > 0.5)
    ok = worst_const <= 1e-6 and worst_low <= 5e-9 and worst_high <= 2e-6
    _report(
        "C3",
        ok,
        f"max const dev {worst_const:.2e} (tol 1e-6); err x<=0.5 {worst_low:.2e} "
        f"(tol 5e-9); err x>0.5 {worst_high:.2e} (tol 2e-6)",
    )


def test_criterion_4_nonlinear_examples():
    budgets = {"ex3_3": 1e-6, "ex3_4": 1e-6, "ex3_5": 1e-6, "ex3_6": 1e-4}
    details = []
    ok = True
    for name, budget in budgets.items():
        rep = _solve(name)
        worst = max(abs(row.approx - math.exp(row.x)) for row in rep.table)
        iterations = rep.constants.iterations
        ok = ok and rep.constants.method == "newton" and iterations <= 10 and worst <= budget
        details.append(f"{name}: {iterations} it, err {worst:.2e} (tol {budget:.0e})")
    _report("C4", ok, "; ".join(details))


def test_criterion_5_ex3_7_errors():
    rep = _solve("ex3_7")
    worst = max(
        abs(row.approx - row.x * (1 - row.x) * math.exp(row.x)) for row in rep.table
    )
    at_one = abs(rep.table[-1].approx)
    ok = worst <= 1e-10 and at_one <= 1e-10
    _report("C5", ok, f"max |err|={worst:.2e}, |U(1)|={at_one:.2e} (tol 1e-10)")


def test_criterion_6_property_suites():
    rng = random.Random(20240614)
    names = []
    for check in properties.ALL_CHECKS:
        check(rng)
        names.append(check.__name__)
    _report("C6", True, f"property checks: {', '.join(names)}")


def test_criterion_7_ladder_norms_decrease():
    problem = elaborate(parse_problem(problems.load_text("ex3_1")))
    solution = solve_problem(problem)
    norms = ladder_sup_norms(solution.ladder, solution.constants.assignment)
    decreasing = all(norms[k] > norms[k + 1] for k in range(3, 10))
    shown = ", ".join(f"{v:.2e}" for v in norms[3:])
    _report("C7", decreasing, f"sup-norms k=3..10 strictly decreasing: {shown}")
