"""Multivariate polynomials in the unknown integration constants.

Everything symbolic in the solver is built over this ring: the coefficients
of the power series carry the algebraic dependence on the undetermined
initial values (A, B, C, ...), and the closure residuals handed to the
constant solver are values of this type.

Representation: a polynomial over a fixed, ordered symbol universe stores a
mapping from dense exponent tuples to float coefficients,

    6*A + 3*B  over ("A", "B")  ->  {(1, 0): 6.0, (0, 1): 3.0}

The zero polynomial is the empty map.  Coefficients whose magnitude drops
below ``PRUNE_THRESHOLD`` (true underflow only) are removed, so exact
cancellations do not leave 0.0 entries behind; no other epsilon-rounding is
applied.  Values are immutable by convention: no operation mutates its
operands, so instances can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from . import _kernels

# Only true underflow is pruned; small coefficients are kept so the algebra
# stays predictable.
PRUNE_THRESHOLD = 1e-300

class MissingSymbol(KeyError):
    """An assignment lacks a symbol that appears in the polynomial."""


@dataclass(frozen=True, order=True)
class UnknownSymbol:
    """An undetermined initial-value constant, identified by name."""

    name: str


def _as_name(symbol: Union[str, UnknownSymbol]) -> str:
    return symbol.name if isinstance(symbol, UnknownSymbol) else symbol


class UnknownPoly:
    """Polynomial with float coefficients over a fixed symbol universe."""

    __slots__ = ("symbols", "terms")

    def __init__(self, symbols: tuple[str, ...], terms: Mapping = ()):
        self.symbols = tuple(symbols)
        nsym = len(self.symbols)
        clean: dict = {}
        for mono, coeff in dict(terms).items():
            if len(mono) != nsym:
                raise ValueError(
                    f"exponent tuple {mono!r} does not match universe {self.symbols!r}"
                )
            c = float(coeff)
            if abs(c) >= PRUNE_THRESHOLD:
                clean[tuple(mono)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, symbols: tuple[str, ...]) -> "UnknownPoly":
        return cls(symbols)

    @classmethod
    def constant(cls, value: float, symbols: tuple[str, ...]) -> "UnknownPoly":
        return cls(symbols, {(0,) * len(symbols): value})

    @classmethod
    def variable(cls, symbol: Union[str, UnknownSymbol], symbols: tuple[str, ...]) -> "UnknownPoly":
        name = _as_name(symbol)
        if name not in symbols:
            raise ValueError(f"symbol {name!r} not in universe {symbols!r}")
        mono = tuple(1 if s == name else 0 for s in symbols)
        return cls(symbols, {mono: 1.0})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Max total degree over stored terms; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(mono) for mono in self.terms)

    def constant_value(self) -> float:
        """The value of a constant polynomial (degree <= 0)."""
        if self.degree() > 0:
            raise ValueError(f"polynomial is not constant: {self!r}")
        return self.terms.get((0,) * len(self.symbols), 0.0)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "UnknownPoly":
        if isinstance(other, UnknownPoly):
            if other.symbols != self.symbols:
                raise ValueError(
                    f"mixed symbol universes: {self.symbols!r} vs {other.symbols!r}"
                )
            return other
        if isinstance(other, (int, float)):
            return UnknownPoly.constant(float(other), self.symbols)
        return NotImplemented

    def __add__(self, other) -> "UnknownPoly":
        q = self._coerce(other)
        if q is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in q.terms.items():
            out[mono] = out.get(mono, 0.0) + coeff
        return UnknownPoly(self.symbols, out)

    __radd__ = __add__

    def __neg__(self) -> "UnknownPoly":
        return UnknownPoly(self.symbols, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "UnknownPoly":
        q = self._coerce(other)
        if q is NotImplemented:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other) -> "UnknownPoly":
        return (-self) + other

    def __mul__(self, other) -> "UnknownPoly":
        if isinstance(other, (int, float)):
            return self.scale(float(other))
        q = self._coerce(other)
        if q is NotImplemented:
            return NotImplemented
        product = _kernels.poly_mul(self.terms, q.terms, len(self.symbols))
        return UnknownPoly(self.symbols, product)

    __rmul__ = __mul__

    def scale(self, factor: float) -> "UnknownPoly":
        return UnknownPoly(self.symbols, {m: c * factor for m, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "UnknownPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = UnknownPoly.constant(1.0, self.symbols)
        for _ in range(exponent):
            out = out * self
        return out

    # -- calculus and evaluation -------------------------------------------

    def eval(self, assignment: Mapping[str, float]) -> float:
        """Numeric value under a symbol -> value assignment.

        Raises MissingSymbol if a symbol occurring with positive exponent
        is absent from the assignment.
        """
        total = 0.0
        for mono, coeff in self.terms.items():
            value = coeff
            for name, e in zip(self.symbols, mono):
                if e:
                    if name not in assignment:
                        raise MissingSymbol(name)
                    value *= assignment[name] ** e
            total += value
        return total

    def partial(self, symbol: Union[str, UnknownSymbol]) -> "UnknownPoly":
        """Formal partial derivative with respect to one symbol."""
        name = _as_name(symbol)
        if name not in self.symbols:
            return UnknownPoly.zero(self.symbols)
        idx = self.symbols.index(name)
        out: dict = {}
        for mono, coeff in self.terms.items():
            e = mono[idx]
            if e:
                key = mono[:idx] + (e - 1,) + mono[idx + 1 :]
                out[key] = out.get(key, 0.0) + coeff * e
        return UnknownPoly(self.symbols, out)

    def affine_parts(self) -> tuple[float, dict[str, float]]:
        """Split an affine polynomial into (constant, {symbol: coefficient}).

        Raises ValueError when the total degree exceeds 1.
        """
        const = 0.0
        gradient: dict[str, float] = {}
        for mono, coeff in self.terms.items():
            total = sum(mono)
            if total == 0:
                const = coeff
            elif total == 1:
                name = self.symbols[mono.index(1)]
                gradient[name] = coeff
            else:
                raise ValueError(f"polynomial is not affine: {self!r}")
        return const, gradient

    # -- comparison and display ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, float)):
            other = UnknownPoly.constant(float(other), self.symbols)
        if not isinstance(other, UnknownPoly):
            return NotImplemented
        return self.symbols == other.symbols and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.terms:
            return "UnknownPoly(0)"
        parts = []
        for mono, coeff in sorted(self.terms.items()):
            factors = [f"{coeff:g}"]
            for name, e in zip(self.symbols, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return f"UnknownPoly({' + '.join(parts)})"
