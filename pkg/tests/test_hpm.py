import random

import pytest
import sympy as sp

from hpm_bvp import (
    BoundaryCondition,
    Problem,
    TruncatedSeries,
    UnknownPoly,
    UnknownSymbol,
    assemble,
    build_ladder,
    build_zeroth_term,
    hes_polynomial,
    next_term,
    problems,
    solve_problem,
)
from hpm_bvp.probspec import elaborate, parse_problem

from properties import check_hes_grading, poly_close, series_close

AB = ("A", "B")


def load_problem(name):
    return elaborate(parse_problem(problems.load_text(name)))


def numeric(values, cap=12):
    return TruncatedSeries.from_constants(values, cap, ())


class TestZerothTerm:
    def test_three_point_linear_problem(self):
        # forcing -1, order 3, data (A, 0, B) -> (1/6)(6A + 3Bx^2 - x^3)
        problem = load_problem("ex3_1")
        u0 = build_zeroth_term(problem)
        a, b = (UnknownPoly.variable(n, AB) for n in AB)
        expected = TruncatedSeries([a, 0.0, b.scale(0.5), -1 / 6], problem.cap, AB)
        assert series_close(u0, expected, rel=1e-15)

    def test_nonlinear_problem_with_known_leading_data(self):
        # zero forcing, order 4, data (1, 1, A, B) -> 1 + x + (A/2)x^2 + (B/6)x^3
        problem = load_problem("ex3_3")
        u0 = build_zeroth_term(problem)
        a, b = (UnknownPoly.variable(n, AB) for n in AB)
        expected = TruncatedSeries(
            [1.0, 1.0, a.scale(0.5), b.scale(1 / 6)], problem.cap, AB
        )
        assert series_close(u0, expected, rel=1e-15)

    def test_all_zero_data(self):
        problem = Problem(
            order=2,
            forcing=TruncatedSeries.zero(8, ()),
            linear_terms=(),
            nonlinear_terms=(),
            known_ics={0: 0.0, 1: 0.0},
            unknown_ics=(),
            closures=(),
            terms=2,
            cap=8,
        )
        assert build_zeroth_term(problem).is_zero()


class TestHesPolynomials:
    def test_grade_zero_is_square(self):
        u0 = numeric([1.0, 2.0, 3.0])
        h0 = hes_polynomial(0, [u0], 2)
        assert series_close(h0, u0 * u0)

    def test_grade_one_has_factor_two(self):
        u0 = numeric([1.0, 1.0])
        u1 = numeric([0.0, 0.5, -2.0])
        h1 = hes_polynomial(1, [u0, u1], 2)
        assert series_close(h1, (u0 * u1).scale(2.0))

    def test_grade_two_binomial(self):
        u0 = numeric([1.0, -1.0])
        u1 = numeric([0.5, 0.25])
        u2 = numeric([2.0, 0.0, 1.0])
        h2 = hes_polynomial(2, [u0, u1, u2], 2)
        assert series_close(h2, (u0 * u2).scale(2.0) + u1 * u1)

    def test_cube_grading(self):
        u0 = numeric([1.0, 1.0])
        u1 = numeric([0.0, 2.0])
        h0 = hes_polynomial(0, [u0], 3)
        h1 = hes_polynomial(1, [u0, u1], 3)
        assert series_close(h0, u0 * u0 * u0)
        assert series_close(h1, (u0 * u0 * u1).scale(3.0))

    def test_needs_enough_terms(self):
        with pytest.raises(ValueError):
            hes_polynomial(1, [numeric([1.0])], 2)

    def test_grading_identity_against_regraded_square(self):
        check_hes_grading(random.Random(20240107))


class TestNextTerm:
    def test_linear_recursion_second_term(self):
        # grade 1 of the three-point problem: triple integral of 25 u0'
        problem = load_problem("ex3_1")
        ladder = [build_zeroth_term(problem)]
        u1 = next_term(problem, ladder, 1)
        b = UnknownPoly.variable("B", AB)
        expected = TruncatedSeries(
            [0.0, 0.0, 0.0, 0.0, b.scale(25 / 24), -5 / 24], problem.cap, AB
        )
        assert series_close(u1, expected, rel=1e-15)

    def test_no_bracket_terms_gives_zero(self):
        problem = Problem(
            order=2,
            forcing=TruncatedSeries.from_constants([1.0], 8, ()),
            linear_terms=(),
            nonlinear_terms=(),
            known_ics={0: 1.0, 1: 0.0},
            unknown_ics=(),
            closures=(),
            terms=3,
            cap=8,
        )
        ladder = build_ladder(problem)
        assert ladder[1].is_zero() and ladder[2].is_zero()

    def test_nonlinear_first_correction_against_sympy(self):
        # u1 = 4-fold zero-data integral of e^-x (1 + x + A x^2/2 + B x^3/6)^2
        problem = load_problem("ex3_3")
        u0 = build_zeroth_term(problem)
        u1 = next_term(problem, [u0], 1)

        a_sym, b_sym, x = sp.symbols("A B x")
        u0_exact = 1 + x + a_sym * x**2 / 2 + b_sym * x**3 / 6
        count = 14
        rhs = sp.series(sp.exp(-x) * u0_exact**2, x, 0, count).removeO().expand()
        rhs_poly = sp.Poly(rhs, x)
        for j in range(count):
            cj = rhs_poly.coeff_monomial(x**j)
            factor = sp.Rational(1, (j + 1) * (j + 2) * (j + 3) * (j + 4))
            expected = sp.Poly(sp.expand(cj * factor), a_sym, b_sym).as_dict()
            got = dict(u1.coefficient(j + 4).terms)
            monomials = set(expected) | set(got)
            for mono in monomials:
                want = float(expected.get(mono, 0))
                have = got.get(tuple(mono), 0.0)
                assert abs(have - want) <= 1e-12 * max(1.0, abs(want))


class TestLadderInvariants:
    def test_zero_initial_data_for_higher_grades(self):
        for name in ("ex3_1", "ex3_2", "ex3_3", "ex3_7"):
            problem = load_problem(name)
            ladder = build_ladder(problem)
            for k in range(1, len(ladder)):
                for i in range(problem.order):
                    value = ladder[k].differentiate(i).eval_at(0.0)
                    assert value.is_zero()

    def test_linear_problems_stay_affine_in_unknowns(self):
        for name in ("ex3_1", "ex3_2", "ex3_7"):
            problem = load_problem(name)
            for term in build_ladder(problem).terms:
                assert all(c.degree() <= 1 for c in term.coeffs)

    def test_ladder_exactness(self):
        # differentiating each u_k m times recovers the grade-k right side
        for name in ("ex3_1", "ex3_2", "ex3_3", "ex3_5"):
            problem = load_problem(name)
            ladder = build_ladder(problem)
            m = problem.order
            for k in range(1, len(ladder)):
                rhs = TruncatedSeries.zero(problem.cap, problem.symbols)
                for term in problem.linear_terms:
                    rhs = rhs + term.coeff * ladder[k - 1].differentiate(term.deriv_order)
                for term in problem.nonlinear_terms:
                    rhs = rhs + term.coeff * hes_polynomial(k - 1, ladder.terms, term.power)
                recovered = ladder[k].differentiate(m)
                for j in range(problem.cap - m + 1):
                    assert poly_close(recovered.coefficient(j), rhs.coefficient(j))

    def test_zero_initial_data_on_random_problems(self):
        rng = random.Random(20240108)
        for _ in range(10):
            m = rng.randrange(1, 4)
            cap = 16
            unknown_order = rng.randrange(m)
            known = {d: rng.uniform(-2, 2) for d in range(m) if d != unknown_order}
            problem = Problem(
                order=m,
                forcing=TruncatedSeries.from_constants(
                    [rng.uniform(-2, 2) for _ in range(3)], cap, ("A",)
                ),
                linear_terms=(),
                nonlinear_terms=(),
                known_ics=known,
                unknown_ics=((unknown_order, UnknownSymbol("A")),),
                closures=(BoundaryCondition.point_value(0, 1.0, 0.0),),
                terms=3,
                cap=cap,
            )
            ladder = build_ladder(problem)
            for k in range(1, len(ladder)):
                for i in range(m):
                    assert ladder[k].differentiate(i).eval_at(0.0).is_zero()


class TestAssemble:
    def test_single_term(self):
        u0 = numeric([1.0, 2.0])
        from hpm_bvp import TermLadder

        assert assemble(TermLadder((u0,))) == u0

    def test_zeros(self):
        zero = TruncatedSeries.zero(8, ())
        assert assemble([zero, zero, zero]).is_zero()

    def test_eleven_term_assembly_reaches_degree_23(self):
        problem = load_problem("ex3_1")
        series = assemble(build_ladder(problem))
        assert series.deg == 23

    def test_solved_constants_match_reference(self):
        problem = load_problem("ex3_1")
        solution = solve_problem(problem)
        assert solution.constants.assignment["A"] == pytest.approx(
            -0.012107085822126442, abs=1e-9
        )
        assert solution.constants.assignment["B"] == pytest.approx(
            0.19732286064025403, abs=1e-9
        )

    def test_quartic_coefficient_has_maclaurin_scale(self):
        # for the exponential-solution problems the x^4 coefficient sits at
        # the 1/24 scale of exp's Maclaurin series
        problem = load_problem("ex3_3")
        solution = solve_problem(problem)
        coeff = solution.numeric_series.coefficient(4).constant_value()
        assert coeff == pytest.approx(1 / 24, rel=1e-4)
