"""Named series of the deformed oscillator construction.

The symmetric q-exponential e_q(u) = sum u**n / [n]_q!, the deformed Gaussian
vacua e_q(beta x^2), the drift coefficient series beta_q(x^2) and its
q-increment, deformed Hermite functions via the Rodrigues-style product, the
i-rotated transformation functions for the negative-energy sector, and the
classical (q = 1) Hermite oracles used to cross-check all of it.

A note on terminology: for q != 1 the Rodrigues product does not terminate,
because e_q(x^2) * e_q(-x^2) != 1 in the symmetric convention. ``q_hermite``
therefore returns a truncated series, not a polynomial; only the q = 1 limit
collapses to the classical Hermite polynomial of degree n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qcore import Deformation, Rational, i_power, q_factorial
from .series import PowerSeries, constant_series, make_series

__all__ = [
    "VacuumSpec",
    "q_exp",
    "q_gauss",
    "beta_q",
    "delta_beta_q",
    "q_hermite",
    "classical_hermite",
    "classical_norm",
    "u_transform",
]


@dataclass(frozen=True, slots=True)
class VacuumSpec:
    """Parameters of a deformed Gaussian vacuum e_q(beta x^2).

    beta = -1/2 is the regular (normalizable) vacuum, beta = +1/2 the
    irregular one; any nonzero rational is accepted. ``order`` is the
    truncation order used for every series derived from this vacuum.
    """

    beta: Rational
    d: Deformation
    order: int

    def __post_init__(self) -> None:
        beta = Fraction(self.beta)
        if beta == 0:
            raise ValueError("vacuum coefficient beta must be nonzero")
        if self.order < 0:
            raise ValueError(f"vacuum order must be >= 0, got {self.order}")
        object.__setattr__(self, "beta", beta)


def q_exp(u: PowerSeries, d: Deformation) -> PowerSeries:
    """Deformed exponential sum u**n / [n]_q! of a series with u(0) = 0.

    The zero constant term makes the composition well defined on truncations:
    u**n only feeds degrees >= n, so the sum terminates at n = order. At q = 1
    the result is the truncated classical exponential, and the output is
    invariant under q -> 1/q because every [n]_q! is.
    """
    if u.order >= 0 and u.coeffs[0]:
        raise ValueError("q_exp needs a series with zero constant term")
    out = constant_series(1, max(u.order, 0))
    power = out
    for n in range(1, u.order + 1):
        power = power * u
        out = out + power * (1 / q_factorial(n, d))
    return out


def _x_squared(scale: Rational, order: int) -> PowerSeries:
    coeffs = [Fraction(0), Fraction(0), Fraction(scale)][: order + 1]
    return make_series(coeffs, order)


@lru_cache(maxsize=None)
def q_gauss(v: VacuumSpec) -> PowerSeries:
    """Deformed Gaussian vacuum e_q(beta x^2): an even series with constant 1."""
    return q_exp(_x_squared(v.beta, v.order), v.d)


@lru_cache(maxsize=None)
def beta_q(v: VacuumSpec) -> PowerSeries:
    """Drift coefficient series of the vacuum's logarithmic q-derivative.

    beta_q(x^2) = beta * (q e_q(q beta x^2) + (1/q) e_q(beta x^2 / q)) / e_q(beta x^2),
    the even series with D_q e_q(beta x^2) = x * beta_q(x^2) * e_q(beta x^2).
    Its constant term is beta * [2]_q, and at q = 1 it collapses to the
    constant 2 beta.
    """
    q = v.d.q
    up = q_exp(_x_squared(q * v.beta, v.order), v.d)
    down = q_exp(_x_squared(v.beta / q, v.order), v.d)
    numerator = up * q + down * (1 / q)
    return (numerator / q_gauss(v)) * v.beta


def delta_beta_q(v: VacuumSpec) -> PowerSeries:
    """q-increment of the drift series: beta_q(x^2) - (1/q) beta_q(x^2/q^2).

    This is the coefficient of the first-derivative term in the second-order
    partner operators. It vanishes identically at q = 1; its constant term
    beta [2]_q (1 - 1/q) is first order in (q - 1), so it is not invariant
    under q -> 1/q even though beta_q itself is.
    """
    b = beta_q(v)
    return b - b.scale_arg(1 / v.d.q) * (1 / v.d.q)


@lru_cache(maxsize=None)
def q_hermite(n: int, d: Deformation, order: int) -> PowerSeries:
    """Deformed Hermite function (-1)**n e_q(x^2) D_q**n e_q(-x^2), truncated.

    Needs order >= n + 2 so the n q-derivatives leave usable coefficients.
    The result has parity (-1)**n and, for q != 1, nonzero coefficients above
    degree n (the product does not terminate); at q = 1 its coefficients
    through degree n are exactly the classical Hermite polynomial's and the
    next retained coefficients vanish.
    """
    if n < 0:
        raise ValueError(f"q_hermite needs n >= 0, got {n}")
    if order < n + 2:
        raise ValueError(
            f"q_hermite(n={n}) needs order >= {n + 2} to keep exact coefficients, got {order}"
        )
    decay = q_exp(_x_squared(Fraction(-1), order), d)
    for _ in range(n):
        decay = decay.jackson_derivative(d)
    grow = q_exp(_x_squared(Fraction(1), order), d)
    out = grow * decay
    if n % 2:
        out = -out
    return out


def classical_hermite(n: int, order: int | None = None) -> PowerSeries:
    """Classical Hermite polynomial H_n by the three-term recurrence.

    H_0 = 1, H_1 = 2x, H_{n+1} = 2x H_n - 2n H_{n-1}. This is an independent
    oracle: it never touches the Rodrigues product. Because a polynomial's
    tail is exactly zero, the result may be retained to any requested order.
    """
    if n < 0:
        raise ValueError(f"classical_hermite needs n >= 0, got {n}")
    prev = [Fraction(1)]
    if n == 0:
        coeffs = prev
    else:
        cur = [Fraction(0), Fraction(2)]
        for k in range(1, n):
            nxt = [Fraction(0)] + [2 * c for c in cur]
            for i, c in enumerate(prev):
                nxt[i] -= 2 * k * c
            prev, cur = cur, nxt
        coeffs = cur
    if order is None:
        order = n
    if order < n:
        raise ValueError(f"order {order} cannot hold H_{n}")
    return make_series(coeffs, order)


def classical_norm(n: int) -> float:
    """Oscillator normalization (2**n n! sqrt(pi)) ** (-1/2) as a float."""
    if n < 0:
        raise ValueError(f"classical_norm needs n >= 0, got {n}")
    return 1.0 / math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi))


def u_transform(p: int, d: Deformation, order: int) -> PowerSeries:
    """Nodeless transformation function for the negative-energy sector.

    Rotates the p-th deformed Hermite function to imaginary argument and
    attaches the growing Gaussian factor:

        u_p = i**(-p) * q_hermite(p)(ix) * e_q(x^2 / 2)

    Only even p is accepted: for odd p the function vanishes at the origin
    and cannot serve as a division-safe transformation function. The i**(-p)
    prefactor makes every retained coefficient purely real.
    """
    if p < 0 or p % 2:
        raise ValueError(f"u_transform needs even p >= 0, got {p}")
    rotated = q_hermite(p, d, order).i_rotate()
    grow = q_exp(_x_squared(Fraction(1, 2), order), d)
    return (rotated * grow) * i_power(-p)
