"""Homotopy perturbation solver for multi-point boundary value problems.

The solver builds the perturbation term ladder symbolically in the unknown
initial-value constants, imposes the (possibly nonlocal) boundary
conditions on the assembled series, solves for the constants, and reports
the numeric series solution with error tables against an optional exact
solution.
"""

from ._kernels import active_backend, available_backends, use_backend
from .algebra import (
    BcAtom,
    BoundaryCondition,
    ConstantSolution,
    DimensionMismatch,
    NoConvergence,
    SingularSystem,
    SolverError,
    closure_residual,
    solve_constants,
    substitute,
)
from .hpm import (
    HpmSolution,
    LinearTerm,
    NonlinearTerm,
    Problem,
    TermLadder,
    assemble,
    build_ladder,
    build_zeroth_term,
    hes_polynomial,
    ladder_sup_norms,
    next_term,
    solve_problem,
)
from .probspec import (
    ParseError,
    ProblemFile,
    ProblemSpecError,
    SemanticError,
    elaborate,
    eval_numeric,
    format_problem,
    parse_problem,
)
from .report import SolveReport, residual_diagnostic, solve_file, solve_source, write_csv
from .series import CapExhaustedWarning, KnownFn, TruncatedSeries
from .sympoly import MissingSymbol, UnknownPoly, UnknownSymbol

__version__ = "0.1.0"

__all__ = [
    "BcAtom",
    "BoundaryCondition",
    "CapExhaustedWarning",
    "ConstantSolution",
    "DimensionMismatch",
    "HpmSolution",
    "KnownFn",
    "LinearTerm",
    "MissingSymbol",
    "NoConvergence",
    "NonlinearTerm",
    "ParseError",
    "Problem",
    "ProblemFile",
    "ProblemSpecError",
    "SemanticError",
    "SingularSystem",
    "SolveReport",
    "SolverError",
    "TermLadder",
    "TruncatedSeries",
    "UnknownPoly",
    "UnknownSymbol",
    "active_backend",
    "assemble",
    "available_backends",
    "build_ladder",
    "build_zeroth_term",
    "closure_residual",
    "elaborate",
    "eval_numeric",
    "format_problem",
    "hes_polynomial",
    "ladder_sup_norms",
    "next_term",
    "parse_problem",
    "residual_diagnostic",
    "solve_constants",
    "solve_file",
    "solve_problem",
    "solve_source",
    "substitute",
    "use_backend",
    "write_csv",
]
