"""Constraint assembly and the constant solver.

Imposing the closure conditions on the assembled series yields one
polynomial residual per condition in the unknown constants.  Affine
systems (every linear problem) are solved in one shot by Gaussian
elimination with partial pivoting; polynomial systems go through damped
Newton iteration with the analytic Jacobian from UnknownPoly.partial.
The systems are tiny (at most ~6 unknowns), so plain Python arithmetic is
used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence, Union

from .series import TruncatedSeries
from .sympoly import UnknownPoly, UnknownSymbol, _as_name

PIVOT_THRESHOLD = 1e-14
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 50
MAX_HALVINGS = 30


class SolverError(Exception):
    """Base class for constant-solver failures."""


class SingularSystem(SolverError):
    pass


class NoConvergence(SolverError):
    pass


class DimensionMismatch(SolverError):
    pass


class BcAtom(NamedTuple):
    weight: float
    deriv_order: int
    point: float


@dataclass(frozen=True)
class BoundaryCondition:
    """A linear functional sum_i w_i * u^(d_i)(x_i) = rhs.

    Single-atom conditions are plain point evaluations; several atoms give
    nonlocal combinations such as u(1/2) - u(3/4) = c.
    """

    atoms: tuple[BcAtom, ...]
    rhs: float

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("boundary condition needs at least one atom")
        atoms = tuple(BcAtom(float(w), int(d), float(x)) for w, d, x in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "rhs", float(self.rhs))
        for atom in atoms:
            if atom.deriv_order < 0:
                raise ValueError("derivative order must be nonnegative")
            if not 0.0 <= atom.point <= 1.0:
                raise ValueError(f"boundary point {atom.point} outside [0, 1]")

    @classmethod
    def point_value(cls, deriv_order: int, point: float, rhs: float) -> "BoundaryCondition":
        return cls((BcAtom(1.0, deriv_order, point),), rhs)


@dataclass(frozen=True)
class ConstantSolution:
    """Solved constants plus solver diagnostics."""

    assignment: dict[str, float]
    iterations: int
    residual_norm: float
    method: str


def closure_residual(u: TruncatedSeries, bc: BoundaryCondition) -> UnknownPoly:
    """Residual polynomial sum_i w_i * u^(d_i)(x_i) - rhs."""
    acc = UnknownPoly.constant(-bc.rhs, u.symbols)
    for weight, order, point in bc.atoms:
        acc = acc + u.differentiate(order).eval_at(point).scale(weight)
    return acc


def _solve_linear(matrix: list[list[float]], rhs: list[float]) -> list[float]:
    """Gaussian elimination with partial pivoting on a small dense system."""
    n = len(rhs)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[pivot_row][col]) < PIVOT_THRESHOLD:
            raise SingularSystem(f"pivot {a[pivot_row][col]:.3e} below threshold")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        for r in range(col + 1, n):
            factor = a[r][col] / a[col][col]
            if factor:
                for c in range(col, n + 1):
                    a[r][c] -= factor * a[col][c]
    x = [0.0] * n
    for row in range(n - 1, -1, -1):
        acc = a[row][n] - sum(a[row][c] * x[c] for c in range(row + 1, n))
        x[row] = acc / a[row][row]
    return x


def _max_norm(values: Sequence[float]) -> float:
    return max((abs(v) for v in values), default=0.0)


def solve_constants(
    residuals: Sequence[UnknownPoly],
    unknowns: Sequence[Union[str, UnknownSymbol]],
    guess: Mapping[str, float] | None = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    method: str = "auto",
) -> ConstantSolution:
    """Solve the closure system for the unknown constants.

    Affine systems take the direct linear path; anything of higher degree
    runs damped Newton (analytic Jacobian, step halving until the residual
    max-norm does not increase, at most 30 halvings per step).
    """
    names = [_as_name(s) for s in unknowns]
    if len(residuals) != len(names):
        raise DimensionMismatch(
            f"{len(residuals)} residuals for {len(names)} unknowns"
        )
    if not names:
        return ConstantSolution({}, 0, 0.0, "direct-linear")
    if method == "auto":
        affine = all(r.degree() <= 1 for r in residuals)
        method = "direct-linear" if affine else "newton"

    if method == "direct-linear":
        matrix = []
        rhs = []
        for r in residuals:
            const, gradient = r.affine_parts()
            foreign = set(gradient) - set(names)
            if foreign:
                raise DimensionMismatch(
                    f"residual involves symbols outside the unknowns: {sorted(foreign)}"
                )
            matrix.append([gradient.get(name, 0.0) for name in names])
            rhs.append(-const)
        solution = _solve_linear(matrix, rhs)
        assignment = dict(zip(names, solution))
        norm = _max_norm([r.eval(assignment) for r in residuals])
        return ConstantSolution(assignment, 1, norm, "direct-linear")

    if method != "newton":
        raise ValueError(f"unknown method {method!r}")

    guess = dict(guess or {})
    missing = [name for name in names if name not in guess]
    if missing:
        raise ValueError(f"guess lacks unknowns: {missing}")
    x = [float(guess[name]) for name in names]
    jacobian = [[r.partial(name) for name in names] for r in residuals]

    assignment = dict(zip(names, x))
    values = [r.eval(assignment) for r in residuals]
    norm = _max_norm(values)
    for iteration in range(1, max_iter + 1):
        if norm <= tol:
            return ConstantSolution(assignment, iteration - 1, norm, "newton")
        jac = [[entry.eval(assignment) for entry in row] for row in jacobian]
        delta = _solve_linear(jac, [-v for v in values])
        step = 1.0
        for _ in range(MAX_HALVINGS + 1):
            candidate = [xi + step * di for xi, di in zip(x, delta)]
            cand_assignment = dict(zip(names, candidate))
            cand_values = [r.eval(cand_assignment) for r in residuals]
            cand_norm = _max_norm(cand_values)
            if cand_norm <= norm:
                break
            step *= 0.5
        x, assignment, values, norm = candidate, cand_assignment, cand_values, cand_norm
    if norm <= tol:
        return ConstantSolution(assignment, max_iter, norm, "newton")
    raise NoConvergence(
        f"residual max-norm {norm:.3e} > tol {tol:.1e} after {max_iter} iterations"
    )


def substitute(
    u: TruncatedSeries, solution: Union[ConstantSolution, Mapping[str, float]]
) -> TruncatedSeries:
    """Replace the unknowns by solved values, yielding a numeric series."""
    assignment = solution.assignment if isinstance(solution, ConstantSolution) else solution
    out = [
        UnknownPoly.constant(c.eval(assignment), u.symbols) for c in u.coeffs
    ]
    return TruncatedSeries(out, u.cap, u.symbols)
