import csv

import pytest

from hpm_bvp import cli, problems, solve_source, write_csv
from hpm_bvp.report import residual_diagnostic, solve_file
from hpm_bvp.probspec import parse_problem

STRAIGHT_LINE = """\
problem "line"
order 2
forcing 0
ic D0 = 0
ic D1 = A
bc D0(1) = 1
exact x
"""

NO_EXACT = """\
problem "plain"
order 1
forcing 1
ic D0 = A
bc D0(1) = 2
"""

SINGULAR = """\
problem "singular"
order 1
forcing 0
ic D0 = A
bc D0(1) - D0(0) = 1
"""


class TestSolveReports:
    def test_exact_polynomial_problem_has_zero_residual(self):
        rep = solve_source(STRAIGHT_LINE)
        assert rep.constants.assignment == pytest.approx({"A": 1.0})
        assert rep.residual_sup == 0.0
        for row in rep.table:
            assert row.approx == pytest.approx(row.x, abs=1e-15)
            assert row.abs_error <= 1e-15

    def test_grid_spacing(self):
        rep = solve_source(STRAIGHT_LINE, grid=5)
        assert [row.x for row in rep.table] == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_missing_exact_column(self):
        rep = solve_source(NO_EXACT)
        assert all(row.exact is None and row.abs_error is None for row in rep.table)

    def test_solve_file_reads_path(self, tmp_path):
        target = tmp_path / "line.bvp"
        target.write_text(STRAIGHT_LINE)
        rep = solve_file(target)
        assert rep.problem_name == "line"

    def test_residual_drops_as_ladder_grows(self):
        source = problems.load_text("ex3_1")
        short = solve_source(source, terms=5)
        full = solve_source(source, terms=11)
        assert full.residual_sup < short.residual_sup
        assert full.residual_sup <= 1e-4  # regression bound for the K=11 ladder

    def test_reference_error_profile_for_nonlocal_problem(self):
        rep = solve_source(problems.load_text("ex3_2"))
        errors = {row.x: row.abs_error for row in rep.table}
        worst = max(errors.values())
        assert worst == errors[1.0]
        assert 1e-7 < worst <= 2e-6

    def test_exact_column_reproduces_published_values(self):
        # reference exact column for the three-point problem, 6 significant
        # digits as printed
        published = [
            -0.0121071, -0.0112685, -0.00922221, -0.00646687, -0.00332019,
            0.0, 0.00332019, 0.00646687, 0.00922221, 0.0112685, 0.0121071,
        ]
        rep = solve_source(problems.load_text("ex3_1"))
        for row, want in zip(rep.table, published):
            assert float(f"{row.exact:.6g}") == pytest.approx(want, abs=1e-12)


class TestCsv:
    def test_row_count_and_header(self, tmp_path):
        rep = solve_source(STRAIGHT_LINE, grid=3)
        path = tmp_path / "out.csv"
        write_csv(rep, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "x,exact,approx,abs_error"
        assert len(lines) == 4

    def test_no_exact_header(self, tmp_path):
        rep = solve_source(NO_EXACT, grid=3)
        path = tmp_path / "out.csv"
        write_csv(rep, path)
        assert path.read_text().splitlines()[0] == "x,approx"

    def test_round_trip_precision(self, tmp_path):
        rep = solve_source(problems.load_text("ex3_1"))
        path = tmp_path / "out.csv"
        write_csv(rep, path)
        with open(path, newline="") as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == len(rep.table)
        for parsed, row in zip(rows, rep.table):
            for field, want in (
                ("x", row.x),
                ("exact", row.exact),
                ("approx", row.approx),
                ("abs_error", row.abs_error),
            ):
                got = float(parsed[field])
                assert got == pytest.approx(want, rel=1e-16, abs=1e-300)

    def test_lf_line_endings(self, tmp_path):
        rep = solve_source(STRAIGHT_LINE, grid=3)
        path = tmp_path / "out.csv"
        write_csv(rep, path)
        raw = path.read_bytes()
        assert b"\r" not in raw

    def test_determinism(self, tmp_path):
        source = problems.load_text("ex3_3")
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        write_csv(solve_source(source), first)
        write_csv(solve_source(source), second)
        assert first.read_bytes() == second.read_bytes()


class TestResidualDiagnostic:
    def test_matches_report_value(self):
        pf = parse_problem(problems.load_text("ex3_1"))
        rep = solve_source(problems.load_text("ex3_1"))
        xs = [row.x for row in rep.table]
        from hpm_bvp.probspec import elaborate
        from hpm_bvp import solve_problem

        solution = solve_problem(elaborate(pf))
        assert residual_diagnostic(pf, solution.numeric_series, xs) == pytest.approx(
            rep.residual_sup
        )


class TestCli:
    def test_solve_exit_zero(self, tmp_path, capsys):
        target = tmp_path / "line.bvp"
        target.write_text(STRAIGHT_LINE)
        code = cli.main(["solve", str(target), "--coeffs", "--residual"])
        out = capsys.readouterr().out
        assert code == 0
        assert "problem: line" in out
        assert "A = 1.0" in out
        assert "ODE residual" in out

    def test_bundled_name_resolution(self, capsys):
        code = cli.main(["check", "ex3_5"])
        out = capsys.readouterr().out
        assert code == 0
        assert "unknowns: 2 [A, B]" in out
        assert "closures: 2" in out

    def test_csv_flag(self, tmp_path, capsys):
        out_csv = tmp_path / "table.csv"
        code = cli.main(["solve", "ex3_7", "--csv", str(out_csv)])
        capsys.readouterr()
        assert code == 0
        assert out_csv.read_text().startswith("x,exact,approx,abs_error\n")

    def test_parse_error_exit_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.bvp"
        bad.write_text('problem "bad"\norder ?\n')
        code = cli.main(["solve", str(bad)])
        err = capsys.readouterr().err
        assert code == 2
        assert "line 2" in err

    def test_semantic_error_exit_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.bvp"
        bad.write_text('problem "bad"\norder 1\nic D0 = A\n')
        code = cli.main(["solve", str(bad)])
        err = capsys.readouterr().err
        assert code == 2
        assert "closure count" in err

    def test_solver_failure_exit_three(self, tmp_path, capsys):
        bad = tmp_path / "singular.bvp"
        bad.write_text(SINGULAR)
        code = cli.main(["solve", str(bad)])
        err = capsys.readouterr().err
        assert code == 3
        assert "solver error" in err

    def test_missing_file_exit_four(self, capsys):
        code = cli.main(["solve", "/no/such/file.bvp"])
        err = capsys.readouterr().err
        assert code == 4
        assert "i/o error" in err

    def test_unwritable_csv_exit_four(self, capsys):
        code = cli.main(["solve", "ex3_7", "--csv", "/no/such/dir/table.csv"])
        capsys.readouterr()
        assert code == 4

    def test_grid_override(self, capsys):
        code = cli.main(["solve", "ex3_7", "--grid", "5"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.count("\n  0.") >= 4  # rows at 0.00, 0.25, 0.50, 0.75
