"""Linear operators on truncated series: intertwiners and partner operators.

A QOperator carries two parallel realizations of the same linear map:

* a series action, exact on Gaussian-rational coefficients, used for all
  identity checks near the origin;
* an optional pointwise action on float evaluators, used on grids away from
  the origin, where the q-shifted arguments f(qx), f(x/q) are evaluated
  directly.

Operators are immutable and closed under sum, scalar multiple, and
composition. ``order_cost`` records how many trailing coefficients one
application invalidates (1 for first-order operators, 2 for second-order);
composition adds the costs, sums keep the worst one.

The pointwise action exists only for q != 1: the classical derivative has no
finite q-quotient, so undeformed operators answer through the series path
(that same fallback serves the x = 0 grid point of deformed operators, where
the quotient degenerates).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .qcore import Deformation, Rational, to_gauss
from .series import PowerSeries, div
from .qspecial import VacuumSpec, beta_q, delta_beta_q

__all__ = [
    "QOperator",
    "FactorizationPair",
    "SweepRow",
    "identity_op",
    "scalar_op",
    "multiplication_op",
    "poly_multiplication_op",
    "jackson_op",
    "classical_darboux",
    "darboux_potential_difference",
    "t_plus_q",
    "t_minus_q",
    "second_order_composed",
    "second_order_direct",
    "classical_hermite_op",
    "classical_schrodinger_op",
    "susy_pair_limit",
    "t_generalized",
    "vacuum_pair",
    "generalized_pair",
    "limit_sweep",
    "convergence_ratios",
]

Evaluator = Callable[[float], float]
PointFn = Callable[[Evaluator, float], float]


@dataclass(frozen=True)
class QOperator:
    """An exact linear map on series, with an optional float pointwise twin."""

    name: str
    order_cost: int
    series_fn: Callable[[PowerSeries], PowerSeries] = field(repr=False)
    point_fn: Optional[PointFn] = field(default=None, repr=False)

    def apply(self, f: PowerSeries) -> PowerSeries:
        return self.series_fn(f)

    __call__ = apply

    @property
    def has_point_form(self) -> bool:
        return self.point_fn is not None

    def apply_at(self, f: Evaluator, x: float) -> float:
        """Pointwise action on a float evaluator; x = 0 raises ZeroDivisionError."""
        if self.point_fn is None:
            raise ValueError(
                f"{self.name} has no pointwise form; use the series path"
            )
        return self.point_fn(f, float(x))

    # -- algebra -------------------------------------------------------------

    def __add__(self, other: "QOperator") -> "QOperator":
        if not isinstance(other, QOperator):
            return NotImplemented
        pt = None
        if self.point_fn is not None and other.point_fn is not None:
            sa, sb = self.point_fn, other.point_fn
            pt = lambda f, x: sa(f, x) + sb(f, x)
        return QOperator(
            name=f"({self.name} + {other.name})",
            order_cost=max(self.order_cost, other.order_cost),
            series_fn=lambda f: self.series_fn(f) + other.series_fn(f),
            point_fn=pt,
        )

    def __sub__(self, other: "QOperator") -> "QOperator":
        if not isinstance(other, QOperator):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "QOperator":
        return self * -1

    def __mul__(self, scalar: object) -> "QOperator":
        c = to_gauss(scalar)
        if c is NotImplemented:
            return NotImplemented
        pt = None
        if self.point_fn is not None and c.im == 0:
            sp = self.point_fn
            cf = float(c.re)
            pt = lambda f, x: cf * sp(f, x)
        return QOperator(
            name=f"({c} * {self.name})",
            order_cost=self.order_cost,
            series_fn=lambda f: self.series_fn(f) * c,
            point_fn=pt,
        )

    __rmul__ = __mul__

    def compose(self, inner: "QOperator") -> "QOperator":
        """self after inner: (self @ inner)(f) = self(inner(f))."""
        if not isinstance(inner, QOperator):
            raise TypeError("can only compose QOperators")
        pt = None
        if self.point_fn is not None and inner.point_fn is not None:
            so, si = self.point_fn, inner.point_fn
            pt = lambda f, x: so(lambda y: si(f, y), x)
        return QOperator(
            name=f"({self.name} . {inner.name})",
            order_cost=self.order_cost + inner.order_cost,
            series_fn=lambda f: self.series_fn(inner.series_fn(f)),
            point_fn=pt,
        )

    __matmul__ = compose


# -- elementary operators -----------------------------------------------------


def identity_op() -> QOperator:
    return QOperator("1", 0, lambda f: f, lambda f, x: f(x))


def scalar_op(c: object) -> QOperator:
    g = to_gauss(c)
    if g is NotImplemented:
        raise TypeError(f"not an exact scalar: {c!r}")
    return identity_op() * g


def multiplication_op(g: PowerSeries, name: str = "mult") -> QOperator:
    """Multiplication by a truncated series, f -> g * f.

    The result is only valid to min(order of g, order of f); build g at least
    as long as the series the operator will act on.
    """
    return QOperator(
        name=name,
        order_cost=0,
        series_fn=lambda f: g * f,
        point_fn=lambda f, x: g.evaluate_float(x) * f(x),
    )


def poly_multiplication_op(poly: Sequence[object], name: str = "poly") -> QOperator:
    """Multiplication by an exactly known polynomial (order-exact, see mul_poly)."""
    coeffs = [to_gauss(c) for c in poly]
    if any(c is NotImplemented for c in coeffs):
        raise TypeError("polynomial coefficients must be exact scalars")
    if any(c.im != 0 for c in coeffs):
        floats = None
    else:
        floats = [float(c.re) for c in coeffs]

    def pt(f: Evaluator, x: float) -> float:
        acc = 0.0
        for c in reversed(floats):
            acc = acc * x + c
        return acc * f(x)

    return QOperator(
        name=name,
        order_cost=0,
        series_fn=lambda f: f.mul_poly(coeffs),
        point_fn=pt if floats is not None else None,
    )


def jackson_op(d: Deformation) -> QOperator:
    """The symmetric q-derivative as an operator; classical derivative at q = 1.

    The pointwise twin (f(qx) - f(x/q)) / (x (q - 1/q)) exists only for
    q != 1 and degenerates at x = 0, where the series view must be used.
    """
    pt = None
    if not d.is_classical:
        qf = float(d.q)
        iqf = 1.0 / qf
        span = qf - iqf
        pt = lambda f, x: (f(qf * x) - f(iqf * x)) / (x * span)
    return QOperator(
        name=f"D[{d}]",
        order_cost=1,
        series_fn=lambda f: f.jackson_derivative(d),
        point_fn=pt,
    )


# -- classical Darboux layer --------------------------------------------------

_CLASSICAL = Deformation(Fraction(1))


def classical_darboux(u: PowerSeries, sign: int = 1) -> QOperator:
    """First-order intertwiner sign*D - u'/u built from a transformation function.

    sign=+1 gives the forward operator annihilating u; sign=-1 gives its
    conjugate -D - u'/u. The logarithmic derivative is computed by exact
    series division, so u must not vanish at the origin.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ratio = div(u.jackson_derivative(_CLASSICAL), u)
    base = jackson_op(_CLASSICAL)
    if sign == -1:
        base = -base
    op = base - multiplication_op(ratio, name="u'/u")
    label = "T" if sign == 1 else "T+"
    return QOperator(label, op.order_cost, op.series_fn, op.point_fn)


def darboux_potential_difference(u: PowerSeries) -> PowerSeries:
    """Partner potential shift -2 (ln u)'' computed as -2 D(u'/u)."""
    ratio = div(u.jackson_derivative(_CLASSICAL), u)
    return ratio.jackson_derivative(_CLASSICAL) * -2


# -- deformed intertwiners and partner operators ------------------------------


def t_plus_q(v: VacuumSpec) -> QOperator:
    """Forward deformed intertwiner D_q - beta_q(x^2) x, annihilating the vacuum."""
    w = beta_q(v).mul_poly([0, 1])
    op = jackson_op(v.d) - multiplication_op(w, name="beta_q*x")
    return QOperator(f"Tplus(beta={v.beta}, {v.d})", op.order_cost, op.series_fn, op.point_fn)


def t_minus_q(v: VacuumSpec) -> QOperator:
    """Backward deformed intertwiner -D_q - beta_q(x^2) x."""
    w = beta_q(v).mul_poly([0, 1])
    op = -jackson_op(v.d) - multiplication_op(w, name="beta_q*x")
    return QOperator(f"Tminus(beta={v.beta}, {v.d})", op.order_cost, op.series_fn, op.point_fn)


def second_order_composed(v: VacuumSpec, which: str) -> QOperator:
    """Second-order partner operator as an explicit product of intertwiners.

    which="b" gives Tminus after Tplus (the operator annihilating the vacuum);
    which="f" gives Tplus after Tminus.
    """
    if which not in ("b", "f"):
        raise ValueError("which must be 'b' or 'f'")
    plus, minus = t_plus_q(v), t_minus_q(v)
    op = minus @ plus if which == "b" else plus @ minus
    return QOperator(f"O{which}[composed]({v.beta}, {v.d})", op.order_cost, op.series_fn, op.point_fn)


def second_order_direct(v: VacuumSpec, which: str) -> QOperator:
    """Second-order partner operator in expanded five-term form.

    Acting on f, with B = beta_q(x^2) and dB = B(x^2) - (1/q) B(x^2/q^2):

        which="b":  -D_q^2 f - dB x (D_q f) + B^2 x^2 f
                    + q (D_q B) x f(qx) + B(x^2/q^2) f(qx)
        which="f":  same with the dB, q(D_q B)x, and B(x^2/q^2) terms negated.

    The coefficient series that multiply f(qx) act on the q-shifted argument;
    the others multiply f at x itself. Equality with the composed product is
    the defining cross-check of this expansion.
    """
    if which not in ("b", "f"):
        raise ValueError("which must be 'b' or 'f'")
    d = v.d
    q = d.q
    sign = 1 if which == "b" else -1
    b = beta_q(v)
    dbx = delta_beta_q(v).mul_poly([0, 1])
    b_sq_x2 = (b * b).mul_poly([0, 0, 1])
    jbx_q = b.jackson_derivative(d).mul_poly([0, 1]) * q
    b_down = b.scale_arg(1 / q)

    def series_fn(f: PowerSeries) -> PowerSeries:
        df = f.jackson_derivative(d)
        ddf = df.jackson_derivative(d)
        fq = f.scale_arg(q)
        out = -ddf + b_sq_x2 * f - (dbx * df) * sign
        return out + (jbx_q * fq + b_down * fq) * sign

    pt = None
    if not d.is_classical:
        qf = float(q)
        iqf = 1.0 / qf
        span = qf - iqf
        sf = float(sign)

        def pt(f: Evaluator, x: float) -> float:
            dq = lambda g, y: (g(qf * y) - g(iqf * y)) / (y * span)
            df = lambda y: dq(f, y)
            fq = f(qf * x)
            return (
                -dq(df, x)
                + b_sq_x2.evaluate_float(x) * f(x)
                - sf * dbx.evaluate_float(x) * df(x)
                + sf * (jbx_q.evaluate_float(x) + b_down.evaluate_float(x)) * fq
            )

    return QOperator(
        name=f"O{which}[direct]({v.beta}, {v.d})",
        order_cost=2,
        series_fn=series_fn,
        point_fn=pt,
    )


# -- classical oracles ---------------------------------------------------------


def classical_hermite_op(n: int) -> QOperator:
    """Hermite differential operator D^2 - 2x D + 2n (annihilates H_n)."""
    if n < 0:
        raise ValueError(f"needs n >= 0, got {n}")
    dd = jackson_op(_CLASSICAL)
    op = (dd @ dd) - (poly_multiplication_op([0, 2], "2x") @ dd) + scalar_op(2 * n)
    return QOperator(f"OH(n={n})", op.order_cost, op.series_fn, op.point_fn)


def classical_schrodinger_op(n: int) -> QOperator:
    """Oscillator operator -D^2 + x^2 - (2n + 1) (annihilates exp(-x^2/2) H_n)."""
    if n < 0:
        raise ValueError(f"needs n >= 0, got {n}")
    dd = jackson_op(_CLASSICAL)
    op = -(dd @ dd) + poly_multiplication_op([-(2 * n + 1), 0, 1], "x^2-(2n+1)")
    return QOperator(f"Ophi(n={n})", op.order_cost, op.series_fn, op.point_fn)


def susy_pair_limit(v: VacuumSpec) -> tuple[QOperator, QOperator]:
    """Undeformed partner pair (h0, h1) = -D^2 + b1^2 x^2 +- b1 with b1 = 2 beta."""
    b1 = 2 * Fraction(v.beta)
    dd = jackson_op(_CLASSICAL)
    kinetic = -(dd @ dd)
    h0 = kinetic + poly_multiplication_op([b1, 0, b1 * b1], "b1^2x^2+b1")
    h1 = kinetic + poly_multiplication_op([-b1, 0, b1 * b1], "b1^2x^2-b1")
    h0 = QOperator(f"h0(beta={v.beta})", h0.order_cost, h0.series_fn, h0.point_fn)
    h1 = QOperator(f"h1(beta={v.beta})", h1.order_cost, h1.series_fn, h1.point_fn)
    return h0, h1


# -- generalized (negative energy) intertwiners -------------------------------


def t_generalized(u: PowerSeries, d: Deformation, sign: int = 1) -> QOperator:
    """Intertwiner sign*D_q - (D_q u)/u from an arbitrary transformation function.

    Scale invariant in u (the logarithmic q-derivative kills constants) and
    annihilates its own u when sign=+1. u must be invertible at the origin.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ratio = div(u.jackson_derivative(d), u)
    base = jackson_op(d)
    if sign == -1:
        base = -base
    op = base - multiplication_op(ratio, name="(D_q u)/u")
    label = "Tgen+" if sign == 1 else "Tgen-"
    return QOperator(f"{label}({d})", op.order_cost, op.series_fn, op.point_fn)


@dataclass(frozen=True)
class FactorizationPair:
    """A forward/backward intertwiner pair with its factorization energy.

    ``epsilon`` is the exact eigenvalue of the transformation function under
    the undeformed partner operator h0 (zero for the vacuum construction,
    negative for the rotated excited-state construction). ``source`` is a
    human-readable description of the transformation function, including any
    bookkeeping about eigenvalue conventions.
    """

    t_plus: QOperator
    t_minus: QOperator
    epsilon: Rational
    source: str

    def __post_init__(self) -> None:
        eps = Fraction(self.epsilon)
        if eps > 0:
            raise ValueError(f"factorization energy must be <= 0, got {eps}")
        object.__setattr__(self, "epsilon", eps)


def vacuum_pair(v: VacuumSpec) -> FactorizationPair:
    """Zero-energy pair built on the deformed Gaussian vacuum."""
    return FactorizationPair(
        t_plus=t_plus_q(v),
        t_minus=t_minus_q(v),
        epsilon=Fraction(0),
        source=f"deformed Gaussian vacuum, beta={v.beta}, {v.d}",
    )


def generalized_pair(
    u: PowerSeries, d: Deformation, epsilon: Rational, source: str = ""
) -> FactorizationPair:
    """Pair built on an arbitrary nodeless transformation function."""
    return FactorizationPair(
        t_plus=t_generalized(u, d, 1),
        t_minus=t_generalized(u, d, -1),
        epsilon=epsilon,
        source=source or f"user transformation function, {d}",
    )


# -- undeformed-limit sweeps ---------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    """One row of a limit sweep: deviation from the undeformed target at q."""

    q: Rational
    deviation: Rational
    deviation_float: float


def limit_sweep(
    builder: Callable[[Deformation], QOperator],
    qs: Sequence[Rational],
    probe: PowerSeries,
) -> list[SweepRow]:
    """Apply a q-parametrized operator family to a probe and compare with q = 1.

    For every q the builder's operator acts on the probe, the q = 1 action is
    subtracted, and the largest coefficient magnitude of the difference is
    reported exactly (plus a float rendering).
    """
    target = builder(_CLASSICAL).apply(probe)
    rows = []
    for q in qs:
        qq = Fraction(q)
        got = builder(Deformation(qq)).apply(probe)
        dev = (got - target).max_abs_coeff()
        rows.append(SweepRow(q=qq, deviation=dev, deviation_float=float(dev)))
    return rows


def convergence_ratios(values: Sequence[Rational]) -> list[Rational]:
    """Successive ratios values[k+1]/values[k]; the sweep's own rate oracle."""
    out = []
    for prev, cur in zip(values, values[1:]):
        if prev == 0:
            raise ValueError("cannot form a ratio after an exactly-zero deviation")
        out.append(Fraction(cur) / Fraction(prev))
    return out
