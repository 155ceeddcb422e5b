"""Truncated power series in x about 0, with UnknownPoly coefficients.

This is the working representation of every function in a solve: forcing
terms, variable coefficients, and the ladder terms themselves.  A series
holds coefficients for x^0 .. x^deg (trailing zeros trimmed) plus a degree
cap shared by all series in one problem; products silently discard powers
beyond the cap, while integration warns when it drops a nonzero tail (see
CapExhaustedWarning) because that bias propagates into the solved
constants.

Elementary seeds (exp, sinh, cosh, plain polynomials) build their Maclaurin
coefficients incrementally, c_{k+1} = c_k * a / (k+1), so no explicit
factorials are formed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from . import _kernels
from .sympoly import UnknownPoly

DEFAULT_CAP = 32


class CapExhaustedWarning(UserWarning):
    """Integration discarded a nonzero coefficient tail beyond the cap."""


def _as_poly(value, symbols: tuple[str, ...]) -> UnknownPoly:
    if isinstance(value, UnknownPoly):
        if value.symbols != symbols:
            raise ValueError("coefficient has a different symbol universe")
        return value
    return UnknownPoly.constant(float(value), symbols)


class TruncatedSeries:
    """Power series sum_k c_k x^k truncated at a fixed degree cap."""

    __slots__ = ("cap", "symbols", "coeffs")

    def __init__(
        self,
        coeffs: Iterable,
        cap: int,
        symbols: tuple[str, ...],
    ):
        if cap < 0:
            raise ValueError("cap must be nonnegative")
        self.cap = int(cap)
        self.symbols = tuple(symbols)
        polys = [_as_poly(c, self.symbols) for c in coeffs]
        if len(polys) > self.cap + 1:
            raise ValueError(f"{len(polys)} coefficients exceed cap {self.cap}")
        while polys and polys[-1].is_zero():
            polys.pop()
        self.coeffs = tuple(polys)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, cap: int, symbols: tuple[str, ...]) -> "TruncatedSeries":
        return cls((), cap, symbols)

    @classmethod
    def from_constants(
        cls, values: Iterable[float], cap: int, symbols: tuple[str, ...]
    ) -> "TruncatedSeries":
        vals = list(values)
        return cls(vals[: cap + 1], cap, symbols)

    # -- queries --------------------------------------------------------------

    @property
    def deg(self) -> int:
        """Highest power with a nonzero coefficient; -1 for the zero series."""
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> UnknownPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return UnknownPoly.zero(self.symbols)

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_abs_coeff(self) -> float:
        return max((c.max_abs_coeff() for c in self.coeffs), default=0.0)

    def numeric_coeffs(self) -> list[float]:
        """Coefficients as plain floats (requires constant coefficients)."""
        return [c.constant_value() for c in self.coeffs]

    # -- arithmetic ------------------------------------------------------------

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if self.cap != other.cap:
            raise ValueError(f"mixed caps: {self.cap} vs {other.cap}")
        if self.symbols != other.symbols:
            raise ValueError("mixed symbol universes")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        return TruncatedSeries(out, self.cap, self.symbols)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.cap, self.symbols)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, float, UnknownPoly)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        raw = _kernels.series_mul(
            [c.terms for c in self.coeffs],
            [c.terms for c in other.coeffs],
            len(self.symbols),
            self.cap,
        )
        out = [UnknownPoly(self.symbols, terms) for terms in raw]
        return TruncatedSeries(out, self.cap, self.symbols)

    __rmul__ = __mul__

    def scale(self, factor: Union[float, UnknownPoly]) -> "TruncatedSeries":
        if isinstance(factor, UnknownPoly):
            out = [c * factor for c in self.coeffs]
        else:
            out = [c.scale(float(factor)) for c in self.coeffs]
        return TruncatedSeries(out, self.cap, self.symbols)

    # -- calculus ---------------------------------------------------------------

    def differentiate(self, times: int = 1) -> "TruncatedSeries":
        """Formal derivative; coefficient k picks up the falling factorial."""
        if times < 0:
            raise ValueError("times must be nonnegative")
        if times == 0:
            return self
        out = []
        for k in range(times, len(self.coeffs)):
            factor = 1.0
            for t in range(k - times + 1, k + 1):
                factor *= t
            out.append(self.coeffs[k].scale(factor))
        return TruncatedSeries(out, self.cap, self.symbols)

    def antidifferentiate(
        self, times: int, initial_values: Sequence
    ) -> "TruncatedSeries":
        """m-fold antiderivative with prescribed derivative values at 0.

        ``initial_values[i]`` is the value of the i-th derivative of the
        result at x = 0 (a float or an UnknownPoly).  Warns with
        CapExhaustedWarning if a nonzero part of the integrand is pushed
        beyond the cap and discarded.
        """
        if times < 1:
            raise ValueError("times must be >= 1")
        if len(initial_values) != times:
            raise ValueError(f"expected {times} initial values, got {len(initial_values)}")
        out = [UnknownPoly.zero(self.symbols) for _ in range(self.cap + 1)]
        factorial = 1.0
        for i, value in enumerate(initial_values):
            if i:
                factorial *= i
            out[i] = _as_poly(value, self.symbols).scale(1.0 / factorial)
        if self.deg + times > self.cap and not self.is_zero():
            warnings.warn(
                f"integration pushed degree {self.deg}+{times} past cap {self.cap};"
                " nonzero tail discarded",
                CapExhaustedWarning,
                stacklevel=2,
            )
        for k, coeff in enumerate(self.coeffs):
            if k + times > self.cap:
                break
            factor = 1.0
            for t in range(k + 1, k + times + 1):
                factor *= t
            out[k + times] = out[k + times] + coeff.scale(1.0 / factor)
        return TruncatedSeries(out, self.cap, self.symbols)

    def eval_at(self, x: float) -> UnknownPoly:
        """Horner evaluation; the result is a polynomial in the unknowns."""
        zero_key = (0,) * len(self.symbols)
        for coeff in self.coeffs:
            terms = coeff.terms
            if terms and (len(terms) > 1 or zero_key not in terms):
                break
        else:
            # constant coefficients (the post-substitution case): plain
            # float Horner instead of one polynomial per step
            total = 0.0
            for coeff in reversed(self.coeffs):
                total = total * x + coeff.terms.get(zero_key, 0.0)
            return UnknownPoly.constant(total, self.symbols)
        acc = UnknownPoly.zero(self.symbols)
        for coeff in reversed(self.coeffs):
            acc = acc.scale(x) + coeff
        return acc

    # -- comparison and display ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.cap == other.cap
            and self.symbols == other.symbols
            and self.coeffs == other.coeffs
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "TruncatedSeries(0)"
        shown = ", ".join(f"x^{k}: {c!r}" for k, c in enumerate(self.coeffs[:5]))
        more = ", ..." if len(self.coeffs) > 5 else ""
        return f"TruncatedSeries(deg={self.deg}, cap={self.cap}; {shown}{more})"


@dataclass(frozen=True)
class KnownFn:
    """A seedable elementary function: polynomial, exp, sinh, or cosh.

    The hyperbolic/exponential kinds represent f(a*x); affine arguments and
    products are assembled from these seeds by the expression elaborator.
    """

    kind: str
    rate: float = 0.0
    poly_coeffs: tuple[float, ...] = ()

    @classmethod
    def poly(cls, coeffs: Sequence[float]) -> "KnownFn":
        return cls("poly", poly_coeffs=tuple(float(c) for c in coeffs))

    @classmethod
    def exp(cls, rate: float) -> "KnownFn":
        return cls("exp", rate=float(rate))

    @classmethod
    def sinh(cls, rate: float) -> "KnownFn":
        return cls("sinh", rate=float(rate))

    @classmethod
    def cosh(cls, rate: float) -> "KnownFn":
        return cls("cosh", rate=float(rate))

    def seed(self, cap: int, symbols: tuple[str, ...]) -> TruncatedSeries:
        """Maclaurin expansion truncated at the cap."""
        if self.kind == "poly":
            return TruncatedSeries.from_constants(self.poly_coeffs, cap, symbols)
        a = self.rate
        coeffs = [0.0] * (cap + 1)
        if self.kind == "exp":
            c = 1.0
            coeffs[0] = c
            for k in range(cap):
                c = c * a / (k + 1)
                coeffs[k + 1] = c
        elif self.kind == "cosh":
            c = 1.0
            coeffs[0] = c
            for k in range(0, cap - 1, 2):
                c = c * a * a / ((k + 1) * (k + 2))
                coeffs[k + 2] = c
        elif self.kind == "sinh":
            if cap >= 1:
                c = a
                coeffs[1] = c
                for k in range(1, cap - 1, 2):
                    c = c * a * a / ((k + 1) * (k + 2))
                    coeffs[k + 2] = c
        else:
            raise ValueError(f"unknown seed kind {self.kind!r}")
        return TruncatedSeries.from_constants(coeffs, cap, symbols)
