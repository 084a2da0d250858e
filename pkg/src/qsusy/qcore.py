"""Exact scalar layer: rationals, Gaussian rationals, and symmetric q-numbers.

Every computation in this package bottoms out here. The base field is the
rationals (arbitrary precision, always in lowest terms, positive denominator);
Gaussian rationals ``re + im*i`` extend them just far enough to express the
substitution x -> ix exactly. The deformation parameter q is itself an exact
positive rational, so every identity downstream can be checked coefficient by
coefficient with no epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = [
    "Rational",
    "GaussRational",
    "Deformation",
    "q_number",
    "q_factorial",
    "parse_rational",
    "format_rational",
    "to_gauss",
    "i_power",
    "GAUSS_ZERO",
    "GAUSS_ONE",
    "GAUSS_I",
]

#: The base field. Backed by the standard library's exact rational type,
#: which already guarantees lowest terms and a positive denominator.
Rational = Fraction

RationalLike = Union[Fraction, int]

_FRACTION_ZERO = Fraction(0)


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, float):
        raise TypeError(
            f"refusing float {value!r}: floats are not exact, pass a Fraction or a string"
        )
    return Fraction(value)


def parse_rational(text: str) -> Rational:
    """Parse "p/q", integer, or decimal strings to an exact rational.

    Decimal strings stay exact: "1.5" parses to 3/2, never through a float.
    """
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(value: RationalLike) -> str:
    """Render a rational as "p/q", or plain "p" when the denominator is 1."""
    value = _as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, slots=True)
class GaussRational:
    """A Gaussian rational re + im*i with exact rational parts.

    Field arithmetic is exact and multiplication satisfies i*i = -1. A value
    with im = 0 compares equal to (and hashes like) the plain rational re, so
    real results can be used interchangeably with Rational.
    """

    re: Rational = Fraction(0)
    im: Rational = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", _as_fraction(self.re))
        object.__setattr__(self, "im", _as_fraction(self.im))

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussRational":
        # arithmetic-internal constructor: operands are already Fractions,
        # so the coercion in __post_init__ would only burn time
        out = object.__new__(cls)
        object.__setattr__(out, "re", re)
        object.__setattr__(out, "im", im)
        return out

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def as_rational(self) -> Rational:
        """Demote to a plain rational; rejects values with a nonzero im part."""
        if self.im != 0:
            raise ValueError(f"{self} has a nonzero imaginary part")
        return self.re

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def max_abs(self) -> Rational:
        """max(|re|, |im|), the coefficient magnitude used in deviation reports."""
        return max(abs(self.re), abs(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self) -> "GaussRational":
        return GaussRational._raw(-self.re, -self.im)

    def __add__(self, other: object) -> "GaussRational":
        other = to_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: object) -> "GaussRational":
        other = to_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: object) -> "GaussRational":
        other = to_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> "GaussRational":
        other = to_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.im and not other.im:
            # the dominant case everywhere outside the i-rotation
            return GaussRational._raw(self.re * other.re, _FRACTION_ZERO)
        return GaussRational._raw(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "GaussRational":
        other = to_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.im and not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero GaussRational")
            return GaussRational._raw(self.re / other.re, _FRACTION_ZERO)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero GaussRational")
        num = self * other.conjugate()
        return GaussRational._raw(num.re / norm, num.im / norm)

    def __rtruediv__(self, other: object) -> "GaussRational":
        other = to_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "GaussRational":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GAUSS_ONE / self ** (-exponent)
        out = GAUSS_ONE
        base = self
        n = exponent
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        return f"({format_rational(self.re)}{'+' if self.im >= 0 else '-'}{format_rational(abs(self.im))}i)"

    def __repr__(self) -> str:
        return f"GaussRational({self.re!r}, {self.im!r})"


GAUSS_ZERO = GaussRational(0, 0)
GAUSS_ONE = GaussRational(1, 0)
GAUSS_I = GaussRational(0, 1)

_I_CYCLE = (
    GAUSS_ONE,
    GAUSS_I,
    GaussRational(-1, 0),
    GaussRational(0, -1),
)


def i_power(n: int) -> GaussRational:
    """i**n for any integer n (period four)."""
    return _I_CYCLE[n % 4]


def to_gauss(value: object) -> GaussRational:
    """Promote ints and rationals to GaussRational; pass GaussRational through."""
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussRational(Fraction(value), Fraction(0))
    return NotImplemented


@dataclass(frozen=True, slots=True)
class Deformation:
    """The deformation parameter: an exact positive rational q.

    q = 1 is the undeformed (classical) point. Because every construction in
    this package uses the symmetric convention, q and 1/q describe the same
    deformation; ``reciprocal`` returns the mirror value for symmetry tests.
    """

    q: Rational = Fraction(1)

    def __post_init__(self) -> None:
        q = _as_fraction(self.q)
        if q <= 0:
            raise ValueError(f"deformation parameter must be positive, got {q}")
        object.__setattr__(self, "q", q)

    @property
    def is_classical(self) -> bool:
        return self.q == 1

    def reciprocal(self) -> "Deformation":
        return Deformation(1 / self.q)

    def __str__(self) -> str:
        return f"q={format_rational(self.q)}"


@lru_cache(maxsize=None)
def q_number(n: int, d: Deformation) -> Rational:
    """Symmetric q-analog of the integer n: (q**n - q**-n) / (q - 1/q).

    Returns n itself at q = 1 (the limit value). Odd in n, invariant under
    q -> 1/q, and equal to n when q = 1.
    """
    q = d.q
    if q == 1:
        return Fraction(n)
    return (q**n - q**-n) / (q - 1 / q)


@lru_cache(maxsize=None)
def q_factorial(n: int, d: Deformation) -> Rational:
    """Product [1][2]...[n] of symmetric q-numbers; the empty product is 1."""
    if n < 0:
        raise ValueError(f"q-factorial needs n >= 0, got {n}")
    if n == 0:
        return Fraction(1)
    return q_factorial(n - 1, d) * q_number(n, d)
