"""Truncated formal power series over Gaussian rationals.

A series stores exact coefficients c_0..c_N together with the highest retained
power N (its order). Coefficients beyond N are unknown, never assumed zero.
Binary operations keep only the part both operands can vouch for, so ``order``
always names the highest coefficient that is exact:

* add/sub and mul truncate to min(N_a, N_b),
* the q-derivative drops the order by one,
* multiplying by an exactly known polynomial raises the order by the
  polynomial's lowest nonzero degree,
* equality compares coefficients up to the common valid order, exactly.

There is no epsilon anywhere in this module; the float entry point is the
single evaluator ``evaluate_float`` used at the grid/plotting boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .qcore import (
    GAUSS_I,
    GAUSS_ZERO,
    Deformation,
    GaussRational,
    Rational,
    q_number,
    to_gauss,
)

__all__ = [
    "PowerSeries",
    "NonInvertibleSeriesError",
    "make_series",
    "zero_series",
    "constant_series",
    "monomial",
    "add",
    "sub",
    "mul",
    "div",
    "mul_poly",
    "scale_arg",
    "i_rotate",
    "jackson_derivative",
    "evaluate",
    "evaluate_float",
]

CoeffLike = Union[GaussRational, Fraction, int]


class NonInvertibleSeriesError(ValueError):
    """Raised when dividing by a series whose constant term is zero."""


def _coerce_coeffs(coeffs: Iterable[CoeffLike]) -> tuple[GaussRational, ...]:
    out = []
    for c in coeffs:
        g = to_gauss(c)
        if g is NotImplemented:
            raise TypeError(f"cannot use {c!r} as a series coefficient")
        out.append(g)
    return tuple(out)


@dataclass(frozen=True, slots=True, eq=False)
class PowerSeries:
    """Sum of c_n x**n for n = 0..order, with exact GaussRational c_n.

    ``order`` may be -1 for the degenerate series with no retained
    coefficients (the result of differentiating a bare constant); such a
    series compares equal to anything, vacuously, so tests always pin the
    order they expect alongside coefficient assertions.
    """

    coeffs: tuple[GaussRational, ...]
    order: int

    def __post_init__(self) -> None:
        if self.order < -1:
            raise ValueError(f"series order must be >= -1, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"series of order {self.order} needs {self.order + 1} coefficients, "
                f"got {len(self.coeffs)}"
            )

    # -- accessors ---------------------------------------------------------

    def coeff(self, n: int) -> GaussRational:
        """Coefficient of x**n; only retained indices are addressable."""
        if n < 0 or n > self.order:
            raise IndexError(f"coefficient {n} is beyond the retained order {self.order}")
        return self.coeffs[n]

    @property
    def is_zero(self) -> bool:
        """True when every retained coefficient is zero."""
        return all(not c for c in self.coeffs)

    def first_nonzero_index(self) -> Optional[int]:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def max_abs_coeff(self) -> Rational:
        """Largest coefficient magnitude max(|re|, |im|), exactly."""
        out = Fraction(0)
        for c in self.coeffs:
            m = c.max_abs()
            if m > out:
                out = m
        return out

    def truncated(self, order: int) -> "PowerSeries":
        """Forget coefficients above ``order`` (which must not exceed self.order)."""
        if order > self.order:
            raise ValueError(
                f"cannot extend a truncated series from order {self.order} to {order}"
            )
        return PowerSeries(self.coeffs[: order + 1], order)

    # -- equality ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        """Exact coefficient equality up to the common valid order."""
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    __hash__ = None  # equality is order-relative, so hashing would mislead

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-c for c in self.coeffs), self.order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return PowerSeries(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), n
        )

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return PowerSeries(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), n
        )

    def __mul__(self, other: object) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            if n < 0:
                return PowerSeries((), -1)
            out = [GAUSS_ZERO] * (n + 1)
            for i, a in enumerate(self.coeffs[: n + 1]):
                if not a:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
            return PowerSeries(tuple(out), n)
        scalar = to_gauss(other)
        if scalar is NotImplemented:
            return NotImplemented
        return PowerSeries(tuple(c * scalar for c in self.coeffs), self.order)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return div(self, other)
        scalar = to_gauss(other)
        if scalar is NotImplemented:
            return NotImplemented
        return PowerSeries(tuple(c / scalar for c in self.coeffs), self.order)

    # -- calculus and substitutions -----------------------------------------

    def mul_poly(self, poly: Sequence[CoeffLike]) -> "PowerSeries":
        """Multiply by an exactly known polynomial (not a truncation).

        Because every polynomial coefficient is known at all degrees, the
        product is exact up to self.order + v, where v is the polynomial's
        lowest nonzero degree. Multiplying by x (poly [0, 1]) therefore
        raises the order by one instead of truncating.
        """
        p = _coerce_coeffs(poly)
        val = next((k for k, c in enumerate(p) if c), None)
        if val is None:
            # the zero polynomial: the product is identically zero
            return zero_series(max(self.order, 0))
        n = self.order + val
        if n < 0:
            return PowerSeries((), -1)
        out = [GAUSS_ZERO] * (n + 1)
        for k in range(val, len(p)):
            c = p[k]
            if not c:
                continue
            for j, a in enumerate(self.coeffs):
                if k + j <= n and a:
                    out[k + j] = out[k + j] + c * a
        return PowerSeries(tuple(out), n)

    def scale_arg(self, lam: CoeffLike) -> "PowerSeries":
        """Substitute x -> lam*x, i.e. c_n -> lam**n c_n, exactly."""
        lam = to_gauss(lam)
        if lam is NotImplemented:
            raise TypeError("scale factor must be an exact scalar")
        out = []
        power = to_gauss(1)
        for c in self.coeffs:
            out.append(c * power)
            power = power * lam
        return PowerSeries(tuple(out), self.order)

    def i_rotate(self) -> "PowerSeries":
        """Substitute x -> ix (c_n -> i**n c_n); four applications are the identity."""
        return self.scale_arg(GAUSS_I)

    def jackson_derivative(self, d: Deformation) -> "PowerSeries":
        """Symmetric q-derivative: c_n x**n -> [n]_q c_n x**(n-1).

        At q = 1 this is the classical derivative. The output order drops by
        one; differentiating a bare constant leaves no retained coefficients.
        """
        out = tuple(
            c * q_number(n, d)
            for n, c in enumerate(self.coeffs)
            if n >= 1
        )
        return PowerSeries(out, self.order - 1)

    def evaluate(self, x0: CoeffLike) -> GaussRational:
        """Horner evaluation of the retained polynomial part at an exact point."""
        x0 = to_gauss(x0)
        if x0 is NotImplemented:
            raise TypeError("evaluation point must be an exact scalar")
        acc = GAUSS_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def evaluate_float(self, x0: float) -> float:
        """Float Horner evaluation; requires purely real coefficients."""
        acc = 0.0
        x0 = float(x0)
        for c in reversed(self.coeffs):
            if c.im != 0:
                raise ValueError("series has imaginary coefficients; no float value")
            acc = acc * x0 + float(c.re)
        return acc

    def __str__(self) -> str:
        if self.order < 0:
            return "<empty series>"
        terms = [f"{c}*x^{n}" for n, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(x^{self.order + 1})"

    def __repr__(self) -> str:
        return f"PowerSeries(order={self.order}, coeffs={[str(c) for c in self.coeffs]})"


# -- constructors ------------------------------------------------------------


def make_series(coeffs: Sequence[CoeffLike], order: int) -> PowerSeries:
    """Build a series from low-to-high coefficients, zero-padded to ``order``."""
    if order < 0:
        raise ValueError(f"series order must be >= 0, got {order}")
    cs = _coerce_coeffs(coeffs)
    if len(cs) > order + 1:
        raise ValueError(
            f"{len(cs)} coefficients do not fit in a series of order {order}"
        )
    cs = cs + (GAUSS_ZERO,) * (order + 1 - len(cs))
    return PowerSeries(cs, order)


def zero_series(order: int) -> PowerSeries:
    return make_series([], order)


def constant_series(value: CoeffLike, order: int) -> PowerSeries:
    return make_series([value], order)


def monomial(n: int, order: int, coeff: CoeffLike = 1) -> PowerSeries:
    """The series coeff * x**n retained through ``order``."""
    if n < 0 or n > order:
        raise ValueError(f"monomial degree {n} must lie in 0..{order}")
    return make_series([0] * n + [coeff], order)


# -- operation aliases (functional spelling of the methods above) ------------


def add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a + b


def sub(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a - b


def mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a * b


def div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Series division: the unique c with b*c = a up to the truncation order.

    The divisor's constant term must be invertible; a zero constant term
    (a function vanishing at the origin) raises NonInvertibleSeriesError.
    """
    if b.order < 0 or not b.coeffs[0]:
        raise NonInvertibleSeriesError(
            "non-invertible divisor: constant term is zero"
        )
    n = min(a.order, b.order)
    if n < 0:
        return PowerSeries((), -1)
    b0 = b.coeffs[0]
    out: list[GaussRational] = []
    for k in range(n + 1):
        acc = a.coeffs[k]
        for j in range(1, k + 1):
            if b.coeffs[j]:
                acc = acc - b.coeffs[j] * out[k - j]
        out.append(acc / b0)
    return PowerSeries(tuple(out), n)


def mul_poly(a: PowerSeries, poly: Sequence[CoeffLike]) -> PowerSeries:
    return a.mul_poly(poly)


def scale_arg(a: PowerSeries, lam: CoeffLike) -> PowerSeries:
    return a.scale_arg(lam)


def i_rotate(a: PowerSeries) -> PowerSeries:
    return a.i_rotate()


def jackson_derivative(a: PowerSeries, d: Deformation) -> PowerSeries:
    return a.jackson_derivative(d)


def evaluate(a: PowerSeries, x0: CoeffLike) -> GaussRational:
    return a.evaluate(x0)


def evaluate_float(a: PowerSeries, x0: float) -> float:
    return a.evaluate_float(x0)
