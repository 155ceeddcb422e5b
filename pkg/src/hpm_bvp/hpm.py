"""The homotopy perturbation engine.

A problem is held in the normal form

    u^(m)(x) = f(x) + p * [ sum_j c_j(x) u^(d_j)(x) + sum_l g_l(x) u(x)^q_l ]

where p is the embedding parameter.  Expanding u as a power series in p
and matching grades gives the term ladder: u_0 solves u_0^(m) = f with the
prescribed initial data at 0 (known values or unknown constants), and each
later term solves a linear m-th order equation with zero initial data whose
right-hand side is built from the previous grade.  Power nonlinearities
enter through He's polynomials, the graded components of u^q.  Summing the
ladder (the p -> 1 limit) yields the approximate series solution, still
carrying the unknown constants; the closure conditions then determine them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import (
    BoundaryCondition,
    ConstantSolution,
    closure_residual,
    solve_constants,
    substitute,
)
from .series import CapExhaustedWarning, TruncatedSeries
from .sympoly import UnknownPoly, UnknownSymbol


@dataclass(frozen=True)
class LinearTerm:
    """Contribution coeff(x) * u^(deriv_order)(x) under the p-bracket."""

    coeff: TruncatedSeries
    deriv_order: int


@dataclass(frozen=True)
class NonlinearTerm:
    """Contribution coeff(x) * u(x)^power under the p-bracket."""

    coeff: TruncatedSeries
    power: int


@dataclass
class Problem:
    """Validated normal form of a multi-point boundary value problem."""

    order: int
    forcing: TruncatedSeries
    linear_terms: tuple[LinearTerm, ...]
    nonlinear_terms: tuple[NonlinearTerm, ...]
    known_ics: dict[int, float]
    unknown_ics: tuple[tuple[int, UnknownSymbol], ...]
    closures: tuple[BoundaryCondition, ...]
    terms: int
    cap: int

    def __post_init__(self):
        m = self.order
        if m < 1:
            raise ValueError("order must be >= 1")
        if self.terms < 1:
            raise ValueError("ladder length must be >= 1")
        declared = sorted(list(self.known_ics) + [d for d, _ in self.unknown_ics])
        if declared != list(range(m)):
            raise ValueError(
                f"initial data must cover derivative orders 0..{m - 1} exactly once,"
                f" got {declared}"
            )
        names = [sym.name for _, sym in self.unknown_ics]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate unknown symbols: {names}")
        if len(self.closures) != len(self.unknown_ics):
            raise ValueError(
                f"closure count {len(self.closures)} != unknown count {len(self.unknown_ics)}"
            )
        for term in self.linear_terms:
            if not 0 <= term.deriv_order <= m - 1:
                raise ValueError(f"linear derivative order {term.deriv_order} not < {m}")
        for term in self.nonlinear_terms:
            if term.power < 2:
                raise ValueError("nonlinear power must be >= 2")
        for bc in self.closures:
            for atom in bc.atoms:
                if atom.deriv_order > m - 1:
                    raise ValueError(
                        f"boundary functional uses derivative order {atom.deriv_order} >= {m}"
                    )

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(sym.name for _, sym in self.unknown_ics)

    def initial_polys(self) -> list[UnknownPoly]:
        """Initial data for u_0 by derivative order: value or unknown symbol."""
        out = []
        by_order = {d: sym for d, sym in self.unknown_ics}
        for d in range(self.order):
            if d in self.known_ics:
                out.append(UnknownPoly.constant(self.known_ics[d], self.symbols))
            else:
                out.append(UnknownPoly.variable(by_order[d], self.symbols))
        return out


@dataclass
class TermLadder:
    """The graded terms u_0 .. u_{K-1}; grade k multiplies p^k."""

    terms: tuple[TruncatedSeries, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, k: int) -> TruncatedSeries:
        return self.terms[k]


@dataclass
class HpmSolution:
    """Everything a solve produces: ladder, series, constants, diagnostics."""

    ladder: TermLadder
    series: TruncatedSeries
    constants: ConstantSolution
    numeric_series: TruncatedSeries
    diagnostics: list[str] = field(default_factory=list)


def build_zeroth_term(problem: Problem) -> TruncatedSeries:
    """u_0: m-fold antiderivative of the forcing with the prescribed data."""
    return problem.forcing.antidifferentiate(problem.order, problem.initial_polys())


def _graded_product(
    a: Sequence[TruncatedSeries], b: Sequence[TruncatedSeries], max_grade: int
) -> list[TruncatedSeries]:
    template = a[0] if a else b[0]
    out = [TruncatedSeries.zero(template.cap, template.symbols) for _ in range(max_grade + 1)]
    for i, ai in enumerate(a[: max_grade + 1]):
        if ai.is_zero():
            continue
        for j in range(min(len(b), max_grade + 1 - i)):
            if b[j].is_zero():
                continue
            out[i + j] = out[i + j] + ai * b[j]
    return out


def hes_polynomial(
    n: int, ladder_terms: Sequence[TruncatedSeries], power: int
) -> TruncatedSeries:
    """Grade-n component of (sum_j p^j u_j)^power, by graded convolution.

    For a square nonlinearity this is H_n = sum_{i+j=n} u_i * u_j, so
    H_0 = u_0^2, H_1 = 2 u_0 u_1, H_2 = 2 u_0 u_2 + u_1^2, ...
    """
    if power < 2:
        raise ValueError("power must be >= 2")
    if len(ladder_terms) < n + 1:
        raise ValueError(f"grade {n} needs ladder terms u_0..u_{n}")
    graded = list(ladder_terms[: n + 1])
    acc = graded
    for _ in range(power - 1):
        acc = _graded_product(acc, graded, n)
    return acc[n]


def next_term(problem: Problem, ladder_terms: Sequence[TruncatedSeries], k: int) -> TruncatedSeries:
    """Solve the grade-k equation given u_0..u_{k-1} (zero initial data)."""
    if k < 1:
        raise ValueError("next_term applies to grades k >= 1")
    if len(ladder_terms) < k:
        raise ValueError(f"grade {k} needs {k} previous terms, got {len(ladder_terms)}")
    previous = ladder_terms[k - 1]
    rhs = TruncatedSeries.zero(problem.cap, problem.symbols)
    for term in problem.linear_terms:
        rhs = rhs + term.coeff * previous.differentiate(term.deriv_order)
    for term in problem.nonlinear_terms:
        rhs = rhs + term.coeff * hes_polynomial(k - 1, ladder_terms, term.power)
    zeros = [0.0] * problem.order
    return rhs.antidifferentiate(problem.order, zeros)


def build_ladder(problem: Problem) -> TermLadder:
    """Construct the full ladder u_0 .. u_{K-1}."""
    terms = [build_zeroth_term(problem)]
    for k in range(1, problem.terms):
        terms.append(next_term(problem, terms, k))
    return TermLadder(tuple(terms))


def assemble(ladder: TermLadder | Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Coefficientwise sum of the ladder: the p -> 1 series."""
    terms = ladder.terms if isinstance(ladder, TermLadder) else tuple(ladder)
    if not terms:
        raise ValueError("cannot assemble an empty ladder")
    total = terms[0]
    for term in terms[1:]:
        total = total + term
    return total


def ladder_sup_norms(
    ladder: TermLadder,
    assignment: Mapping[str, float],
    samples: int = 201,
) -> list[float]:
    """Sup-norm of each numeric ladder term over [0, 1], on a sample grid."""
    norms = []
    xs = [i / (samples - 1) for i in range(samples)]
    for term in ladder.terms:
        numeric = substitute(term, assignment)
        norms.append(max(abs(numeric.eval_at(x).constant_value()) for x in xs))
    return norms


def solve_problem(
    problem: Problem,
    guess: Mapping[str, float] | None = None,
    tol: float = 1e-12,
    max_iter: int = 50,
) -> HpmSolution:
    """Run the full pipeline: ladder, assembly, closure solve, substitution.

    Cap-exhaustion warnings raised during ladder construction are captured
    into the diagnostics (note: Python's warning capture is process-global,
    so concurrent solves may attribute these notes to the wrong solve).
    """
    diagnostics: list[str] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", CapExhaustedWarning)
        ladder = build_ladder(problem)
    for entry in caught:
        if issubclass(entry.category, CapExhaustedWarning):
            diagnostics.append(str(entry.message))
        else:
            warnings.warn_explicit(
                entry.message, entry.category, entry.filename, entry.lineno
            )
    series = assemble(ladder)
    residuals = [closure_residual(series, bc) for bc in problem.closures]
    full_guess = {name: 1.0 for name in problem.symbols}
    full_guess.update(guess or {})
    constants = solve_constants(
        residuals, problem.symbols, full_guess, tol=tol, max_iter=max_iter
    )
    numeric = substitute(series, constants)
    if len(ladder) > 1:
        norms = ladder_sup_norms(ladder, constants.assignment)
        diagnostics.append(
            "ladder sup-norms: " + ", ".join(f"{v:.3e}" for v in norms)
        )
    return HpmSolution(ladder, series, constants, numeric, diagnostics)
