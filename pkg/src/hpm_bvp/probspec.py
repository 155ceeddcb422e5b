"""Parser and elaborator for the problem-definition text format.

A problem file is line-oriented UTF-8 with ``#`` comments.  It declares the
ODE normal form, the conditions at the expansion point x = 0 (``ic`` lines,
known values or unknown constants), the closure conditions elsewhere
(``bc`` lines, possibly nonlocal combinations), truncation parameters, and
optionally Newton guesses and an exact solution for error tables:

    problem "ex3_1"
    order 3
    terms 11
    forcing -1
    linear 25 D1           # coeff(x) * u^(d) under the p-bracket
    ic D0 = A              # unknown constant
    ic D1 = 0              # known value
    ic D2 = B
    bc D1(1) = 0           # weight * u^(d)(point) combinations
    bc D0(0.5) = 0
    exact ...

Expressions support + - * / ^ with the usual precedence (^ binds tightest,
then unary minus, then * /, then + -), literals, ``x``, the constant ``e``,
and calls exp/sinh/cosh with arguments affine in x.  Division is only by
x-free subexpressions (folded numerically) and ^ takes a nonnegative
integer literal, so every expression elaborates to a truncated series.

Parsing is purely syntactic; ``elaborate`` runs the semantic checks and
produces a validated Problem.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from typing import Optional, Union

from .algebra import BcAtom, BoundaryCondition
from .hpm import LinearTerm, NonlinearTerm, Problem
from .series import DEFAULT_CAP, KnownFn, TruncatedSeries
from .sympoly import UnknownSymbol

DEFAULT_TERMS = 8


class ProblemSpecError(Exception):
    """Base class for problem-file errors."""


class ParseError(ProblemSpecError):
    """Syntax error, with 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class SemanticError(ProblemSpecError):
    """A structurally valid file that violates a semantic rule."""


# -- expression AST ----------------------------------------------------------


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Lit(Expr):
    value: float


@dataclass(frozen=True)
class EConst(Expr):
    """The constant e."""


@dataclass(frozen=True)
class VarX(Expr):
    """The independent variable x."""


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str  # one of + - * /
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call(Expr):
    fn: str  # exp | sinh | cosh
    arg: Expr


def expr_has_x(expr: Expr) -> bool:
    if isinstance(expr, VarX):
        return True
    if isinstance(expr, Neg):
        return expr_has_x(expr.arg)
    if isinstance(expr, BinOp):
        return expr_has_x(expr.left) or expr_has_x(expr.right)
    if isinstance(expr, Power):
        return expr_has_x(expr.base)
    if isinstance(expr, Call):
        return expr_has_x(expr.arg)
    return False


def eval_numeric(expr: Expr, x: float = 0.0) -> float:
    """Evaluate with library elementary functions (x ignored if absent)."""
    if isinstance(expr, Lit):
        return expr.value
    if isinstance(expr, EConst):
        return math.e
    if isinstance(expr, VarX):
        return x
    if isinstance(expr, Neg):
        return -eval_numeric(expr.arg, x)
    if isinstance(expr, BinOp):
        left = eval_numeric(expr.left, x)
        right = eval_numeric(expr.right, x)
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        if expr.op == "*":
            return left * right
        return left / right
    if isinstance(expr, Power):
        return eval_numeric(expr.base, x) ** expr.exponent
    if isinstance(expr, Call):
        value = eval_numeric(expr.arg, x)
        return getattr(math, expr.fn)(value)
    raise TypeError(f"not an expression: {expr!r}")


def _affine_parts(expr: Expr) -> tuple[float, float]:
    """Decompose an expression affine in x as (constant, slope)."""
    if not expr_has_x(expr):
        return eval_numeric(expr), 0.0
    if isinstance(expr, VarX):
        return 0.0, 1.0
    if isinstance(expr, Neg):
        c, b = _affine_parts(expr.arg)
        return -c, -b
    if isinstance(expr, BinOp):
        if expr.op in "+-":
            lc, lb = _affine_parts(expr.left)
            rc, rb = _affine_parts(expr.right)
            if expr.op == "+":
                return lc + rc, lb + rb
            return lc - rc, lb - rb
        if expr.op == "*":
            if not expr_has_x(expr.left):
                scale = eval_numeric(expr.left)
                c, b = _affine_parts(expr.right)
            elif not expr_has_x(expr.right):
                scale = eval_numeric(expr.right)
                c, b = _affine_parts(expr.left)
            else:
                raise SemanticError("function argument must be affine in x")
            return scale * c, scale * b
        if expr.op == "/":
            if expr_has_x(expr.right):
                raise SemanticError("division only by x-free expressions")
            scale = 1.0 / eval_numeric(expr.right)
            c, b = _affine_parts(expr.left)
            return scale * c, scale * b
    if isinstance(expr, Power) and expr.exponent == 1:
        return _affine_parts(expr.base)
    raise SemanticError("function argument must be affine in x")


def expr_to_series(expr: Expr, cap: int, symbols: tuple[str, ...]) -> TruncatedSeries:
    """Elaborate an expression to a constant-coefficient truncated series."""
    if not expr_has_x(expr):
        return TruncatedSeries.from_constants([eval_numeric(expr)], cap, symbols)
    if isinstance(expr, VarX):
        return TruncatedSeries.from_constants([0.0, 1.0], cap, symbols)
    if isinstance(expr, Neg):
        return -expr_to_series(expr.arg, cap, symbols)
    if isinstance(expr, BinOp):
        if expr.op == "/":
            if expr_has_x(expr.right):
                raise SemanticError("division only by x-free expressions")
            return expr_to_series(expr.left, cap, symbols).scale(
                1.0 / eval_numeric(expr.right)
            )
        left = expr_to_series(expr.left, cap, symbols)
        right = expr_to_series(expr.right, cap, symbols)
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        return left * right
    if isinstance(expr, Power):
        out = TruncatedSeries.from_constants([1.0], cap, symbols)
        base = expr_to_series(expr.base, cap, symbols)
        for _ in range(expr.exponent):
            out = out * base
        return out
    if isinstance(expr, Call):
        shift, rate = _affine_parts(expr.arg)
        if expr.fn == "exp":
            return KnownFn.exp(rate).seed(cap, symbols).scale(math.exp(shift))
        cosh_part = KnownFn.cosh(rate).seed(cap, symbols)
        sinh_part = KnownFn.sinh(rate).seed(cap, symbols)
        if expr.fn == "sinh":
            return cosh_part.scale(math.sinh(shift)) + sinh_part.scale(math.cosh(shift))
        if expr.fn == "cosh":
            return cosh_part.scale(math.cosh(shift)) + sinh_part.scale(math.sinh(shift))
    raise SemanticError(f"cannot elaborate expression: {unparse_expr(expr)}")


# -- canonical printing -------------------------------------------------------

_PREC_ATOM = 9
_PREC_POWER = 4
_PREC_NEG = 3
_PREC_MUL = 2
_PREC_ADD = 1


def _prec(expr: Expr) -> int:
    if isinstance(expr, (Lit, EConst, VarX, Call)):
        return _PREC_ATOM
    if isinstance(expr, Power):
        return _PREC_POWER
    if isinstance(expr, Neg):
        return _PREC_NEG
    return _PREC_MUL if expr.op in "*/" else _PREC_ADD  # type: ignore[union-attr]


def _fmt_float(value: float) -> str:
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def unparse_expr(expr: Expr) -> str:
    """Canonical text form; reparsing yields a structurally identical tree."""
    if isinstance(expr, Lit):
        return _fmt_float(expr.value)
    if isinstance(expr, EConst):
        return "e"
    if isinstance(expr, VarX):
        return "x"
    if isinstance(expr, Neg):
        inner = unparse_expr(expr.arg)
        if _prec(expr.arg) < _PREC_NEG:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(expr, BinOp):
        mine = _prec(expr)
        left = unparse_expr(expr.left)
        if _prec(expr.left) < mine:
            left = f"({left})"
        right = unparse_expr(expr.right)
        # the parser is left-associative, so a right child of equal
        # precedence must keep its parentheses to round-trip structurally
        if _prec(expr.right) <= mine:
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    if isinstance(expr, Power):
        base = unparse_expr(expr.base)
        if _prec(expr.base) < _PREC_ATOM:
            base = f"({base})"
        return f"{base}^{expr.exponent}"
    if isinstance(expr, Call):
        return f"{expr.fn}({unparse_expr(expr.arg)})"
    raise TypeError(f"not an expression: {expr!r}")


# -- tokenizer -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>[ \t\r]+)
    | (?P<comment>\#[^\n]*)
    | (?P<newline>\n)
    | (?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+|\d+)
    | (?P<string>"[^"\n]*")
    | (?P<deriv>D\d+)
    | (?P<symbol>[A-Z]+)
    | (?P<ident>[a-z][a-z_0-9]*)
    | (?P<op>[-+*/^()=])
    """,
    re.VERBOSE,
)

_INT_RE = re.compile(r"\d+")


@dataclass(frozen=True)
class Token:
    kind: str  # number | string | deriv | symbol | ident | op | newline | eof
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = match.lastgroup
        value = match.group()
        col = match.start() - line_start + 1
        if kind == "newline":
            tokens.append(Token("newline", value, line, col))
            line += 1
            line_start = match.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, value, line, col))
        pos = match.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


# -- parsed statements ----------------------------------------------------------


@dataclass(frozen=True)
class BcTermSpec:
    sign: int  # +1 or -1
    weight: Optional[Expr]  # None means weight 1
    deriv_order: int
    point: Expr


@dataclass(frozen=True)
class BcSpec:
    terms: tuple[BcTermSpec, ...]
    rhs: Expr


@dataclass(frozen=True)
class ProblemFile:
    """Parsed (not yet validated) problem description."""

    name: str
    order: int
    terms: int
    cap: int
    forcing: Expr
    linear: tuple[tuple[Expr, int], ...]
    nonlinear: tuple[tuple[Expr, int], ...]
    ic: tuple[tuple[int, Union[Expr, str]], ...]
    bc: tuple[BcSpec, ...]
    guess: tuple[tuple[str, Expr], ...]
    exact: Optional[Expr]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "eof":
            self.pos += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.peek()
        shown = token.text or "end of input"
        return ParseError(f"{message} (got {shown!r})", token.line, token.col)

    def expect_op(self, op: str) -> Token:
        token = self.peek()
        if token.kind != "op" or token.text != op:
            raise self.error(f"expected {op!r}")
        return self.advance()

    def expect_int(self) -> int:
        token = self.peek()
        if token.kind != "number" or not _INT_RE.fullmatch(token.text):
            raise self.error("expected an integer literal")
        self.advance()
        return int(token.text)

    def skip_newlines(self) -> None:
        while self.peek().kind == "newline":
            self.advance()

    def end_statement(self) -> None:
        token = self.peek()
        if token.kind not in ("newline", "eof"):
            raise self.error("unexpected trailing input")
        self.skip_newlines()

    # expression grammar, tightest first: atoms and calls, ^, unary -, * /, + -

    def parse_expr(self, stop_before_deriv: bool = False) -> Expr:
        expr = self.parse_term(stop_before_deriv)
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            right = self.parse_term(stop_before_deriv)
            expr = BinOp(op, expr, right)
        return expr

    def parse_term(self, stop_before_deriv: bool = False) -> Expr:
        expr = self.parse_unary(stop_before_deriv)
        while self.peek().kind == "op" and self.peek().text in "*/":
            if (
                stop_before_deriv
                and self.peek().text == "*"
                and self.peek(1).kind == "deriv"
            ):
                break
            op = self.advance().text
            right = self.parse_unary(stop_before_deriv)
            expr = BinOp(op, expr, right)
        return expr

    def parse_unary(self, stop_before_deriv: bool = False) -> Expr:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.advance()
            return Neg(self.parse_unary(stop_before_deriv))
        return self.parse_power(stop_before_deriv)

    def parse_power(self, stop_before_deriv: bool = False) -> Expr:
        expr = self.parse_atom(stop_before_deriv)
        while self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            expr = Power(expr, self.expect_int())
        return expr

    def parse_atom(self, stop_before_deriv: bool = False) -> Expr:
        token = self.peek()
        if token.kind == "number":
            self.advance()
            return Lit(float(token.text))
        if token.kind == "ident":
            if token.text == "x":
                self.advance()
                return VarX()
            if token.text == "e":
                self.advance()
                return EConst()
            if token.text in ("exp", "sinh", "cosh"):
                self.advance()
                self.expect_op("(")
                arg = self.parse_expr()
                self.expect_op(")")
                return Call(token.text, arg)
            raise self.error(f"unknown name {token.text!r} in expression")
        if token.kind == "op" and token.text == "(":
            self.advance()
            expr = self.parse_expr(stop_before_deriv)
            self.expect_op(")")
            return expr
        raise self.error("expected a number, x, e, a function call, or '('")

    # statements

    def parse_file(self) -> ProblemFile:
        self.skip_newlines()
        token = self.peek()
        if not (token.kind == "ident" and token.text == "problem"):
            raise self.error("file must start with: problem \"<name>\"")
        self.advance()
        name_token = self.peek()
        if name_token.kind != "string":
            raise self.error("expected a quoted problem name")
        self.advance()
        name = name_token.text[1:-1]
        self.end_statement()

        scalars: dict[str, int] = {}
        forcing: Optional[Expr] = None
        exact: Optional[Expr] = None
        linear: list[tuple[Expr, int]] = []
        nonlinear: list[tuple[Expr, int]] = []
        ic: list[tuple[int, Union[Expr, str]]] = []
        bc: list[BcSpec] = []
        guess: list[tuple[str, Expr]] = []

        while self.peek().kind != "eof":
            token = self.peek()
            if token.kind != "ident":
                raise self.error("expected a statement keyword")
            keyword = token.text
            self.advance()
            if keyword in ("order", "terms", "cap"):
                if keyword in scalars:
                    raise self.error(f"duplicate {keyword!r} statement", token)
                scalars[keyword] = self.expect_int()
            elif keyword == "forcing":
                if forcing is not None:
                    raise self.error("duplicate 'forcing' statement", token)
                forcing = self.parse_expr()
            elif keyword == "linear":
                coeff = self.parse_expr(stop_before_deriv=True)
                deriv = self.expect_deriv()
                linear.append((coeff, deriv))
            elif keyword == "nonlinear":
                coeff = self.parse_expr()
                power_token = self.peek()
                if not (power_token.kind == "symbol" and power_token.text == "U"):
                    raise self.error("expected U^<power> after the coefficient")
                self.advance()
                self.expect_op("^")
                nonlinear.append((coeff, self.expect_int()))
            elif keyword == "ic":
                deriv = self.expect_deriv()
                self.expect_op("=")
                if self.peek().kind == "symbol":
                    ic.append((deriv, self.advance().text))
                else:
                    ic.append((deriv, self.parse_expr()))
            elif keyword == "bc":
                bc.append(self.parse_bc())
            elif keyword == "guess":
                sym_token = self.peek()
                if sym_token.kind != "symbol":
                    raise self.error("expected an unknown-constant symbol")
                self.advance()
                self.expect_op("=")
                guess.append((sym_token.text, self.parse_expr()))
            elif keyword == "exact":
                if exact is not None:
                    raise self.error("duplicate 'exact' statement", token)
                exact = self.parse_expr()
            else:
                raise self.error(f"unknown statement keyword {keyword!r}", token)
            self.end_statement()

        if "order" not in scalars:
            raise self.error("missing 'order' statement")
        return ProblemFile(
            name=name,
            order=scalars["order"],
            terms=scalars.get("terms", DEFAULT_TERMS),
            cap=scalars.get("cap", DEFAULT_CAP),
            forcing=forcing if forcing is not None else Lit(0.0),
            linear=tuple(linear),
            nonlinear=tuple(nonlinear),
            ic=tuple(ic),
            bc=tuple(bc),
            guess=tuple(guess),
            exact=exact,
        )

    def expect_deriv(self) -> int:
        token = self.peek()
        if token.kind != "deriv":
            raise self.error("expected a derivative marker like D2")
        self.advance()
        return int(token.text[1:])

    def parse_bc(self) -> BcSpec:
        terms = [self.parse_bc_term(1)]
        while self.peek().kind == "op" and self.peek().text in "+-":
            sign = 1 if self.advance().text == "+" else -1
            terms.append(self.parse_bc_term(sign))
        self.expect_op("=")
        rhs = self.parse_expr()
        return BcSpec(tuple(terms), rhs)

    def parse_bc_term(self, sign: int) -> BcTermSpec:
        weight: Optional[Expr] = None
        if self.peek().kind != "deriv":
            weight = self.parse_expr(stop_before_deriv=True)
            self.expect_op("*")
        deriv = self.expect_deriv()
        self.expect_op("(")
        point = self.parse_expr()
        self.expect_op(")")
        return BcTermSpec(sign, weight, deriv, point)


def parse_problem(text: str) -> ProblemFile:
    """Parse problem-file text; semantic validation happens in elaborate."""
    return _Parser(_tokenize(text)).parse_file()


# -- elaboration ------------------------------------------------------------------


def _fold_numeric(expr: Expr, what: str) -> float:
    if expr_has_x(expr):
        raise SemanticError(f"x not allowed in {what}")
    return eval_numeric(expr)


def elaborate(pf: ProblemFile) -> Problem:
    """Validate a parsed file and build the Problem normal form."""
    m = pf.order
    if m < 1:
        raise SemanticError(f"order must be >= 1, got {m}")
    if pf.terms < 1:
        raise SemanticError(f"terms must be >= 1, got {pf.terms}")
    if pf.cap < m:
        raise SemanticError(f"cap {pf.cap} below the equation order {m}")

    known_ics: dict[int, float] = {}
    unknown_ics: list[tuple[int, UnknownSymbol]] = []
    seen_orders: set[int] = set()
    for deriv, value in pf.ic:
        if deriv >= m:
            raise SemanticError(
                f"initial condition on derivative order {deriv} >= order {m}"
            )
        if deriv in seen_orders:
            raise SemanticError(f"duplicate initial condition for derivative {deriv}")
        seen_orders.add(deriv)
        if isinstance(value, str):
            unknown_ics.append((deriv, UnknownSymbol(value)))
        else:
            known_ics[deriv] = _fold_numeric(value, "an initial value")
    missing = sorted(set(range(m)) - seen_orders)
    if missing:
        raise SemanticError(f"no initial condition for derivative orders {missing}")
    names = [sym.name for _, sym in unknown_ics]
    if len(set(names)) != len(names):
        raise SemanticError(f"unknown constants reused: {names}")

    if len(pf.bc) != len(unknown_ics):
        raise SemanticError(
            f"closure count {len(pf.bc)} != unknown count {len(unknown_ics)}"
        )

    symbols = tuple(names)
    cap = pf.cap
    forcing = expr_to_series(pf.forcing, cap, symbols)

    linear_terms = []
    for coeff, deriv in pf.linear:
        if deriv > m - 1:
            raise SemanticError(f"linear term derivative order {deriv} >= order {m}")
        linear_terms.append(LinearTerm(expr_to_series(coeff, cap, symbols), deriv))

    nonlinear_terms = []
    for coeff, power in pf.nonlinear:
        if power < 2:
            raise SemanticError(f"nonlinear power must be >= 2, got {power}")
        nonlinear_terms.append(NonlinearTerm(expr_to_series(coeff, cap, symbols), power))

    closures = []
    for spec in pf.bc:
        atoms = []
        for term in spec.terms:
            weight = 1.0 if term.weight is None else _fold_numeric(term.weight, "a weight")
            point = _fold_numeric(term.point, "a boundary point")
            if not 0.0 <= point <= 1.0:
                raise SemanticError(f"boundary point {point} outside [0, 1]")
            if term.deriv_order > m - 1:
                raise SemanticError(
                    f"boundary functional derivative order {term.deriv_order} >= order {m}"
                )
            atoms.append(BcAtom(term.sign * weight, term.deriv_order, point))
        rhs = _fold_numeric(spec.rhs, "a boundary value")
        closures.append(BoundaryCondition(tuple(atoms), rhs))

    for name, _ in pf.guess:
        if name not in names:
            raise SemanticError(f"guess for {name!r}, which is not an unknown constant")

    return Problem(
        order=m,
        forcing=forcing,
        linear_terms=tuple(linear_terms),
        nonlinear_terms=tuple(nonlinear_terms),
        known_ics=known_ics,
        unknown_ics=tuple(unknown_ics),
        closures=tuple(closures),
        terms=pf.terms,
        cap=cap,
    )


def numeric_guess(pf: ProblemFile) -> dict[str, float]:
    """Newton starting values declared in the file (may be partial)."""
    return {name: _fold_numeric(expr, "a guess") for name, expr in pf.guess}


def with_overrides(
    pf: ProblemFile, terms: Optional[int] = None, cap: Optional[int] = None
) -> ProblemFile:
    """Copy with the truncation parameters replaced (CLI flags)."""
    out = pf
    if terms is not None:
        out = replace(out, terms=terms)
    if cap is not None:
        out = replace(out, cap=cap)
    return out


# -- canonical file form ------------------------------------------------------------


def format_problem(pf: ProblemFile) -> str:
    """Canonical text form; parse(format_problem(pf)) == pf."""
    lines = [f'problem "{pf.name}"']
    lines.append(f"order {pf.order}")
    lines.append(f"terms {pf.terms}")
    lines.append(f"cap {pf.cap}")
    lines.append(f"forcing {unparse_expr(pf.forcing)}")
    for coeff, deriv in pf.linear:
        text = unparse_expr(coeff)
        if _prec(coeff) < _PREC_MUL:
            text = f"({text})"
        lines.append(f"linear {text} D{deriv}")
    for coeff, power in pf.nonlinear:
        lines.append(f"nonlinear {unparse_expr(coeff)} U^{power}")
    for deriv, value in pf.ic:
        shown = value if isinstance(value, str) else unparse_expr(value)
        lines.append(f"ic D{deriv} = {shown}")
    for spec in pf.bc:
        parts = []
        for i, term in enumerate(spec.terms):
            body = f"D{term.deriv_order}({unparse_expr(term.point)})"
            if term.weight is not None:
                weight = unparse_expr(term.weight)
                if _prec(term.weight) < _PREC_MUL:
                    weight = f"({weight})"
                body = f"{weight}*{body}"
            if i == 0:
                parts.append(body)
            else:
                parts.append(f"{'+' if term.sign > 0 else '-'} {body}")
        lines.append(f"bc {' '.join(parts)} = {unparse_expr(spec.rhs)}")
    for name, expr in pf.guess:
        lines.append(f"guess {name} = {unparse_expr(expr)}")
    if pf.exact is not None:
        lines.append(f"exact {unparse_expr(pf.exact)}")
    return "\n".join(lines) + "\n"
