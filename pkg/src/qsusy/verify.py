"""Identity suites: the machine-checkable claims behind the construction.

Each suite returns a list of CheckResult records, one per (identity, cell).
Everything except the float cross-check is exact: a check passes only when
the residual series is zero in every valid coefficient, and the reported
worst deviation is an exact rational (so "0" really means zero).

Suites:

* kernel: the forward intertwiner annihilates its vacuum.
* factorization: the five-term expanded partner operators equal the composed
  products on a full monomial basis.
* leibniz: the product rule of the symmetric q-derivative on random
  polynomial pairs.
* limits: undeformed reduction at q = 1 and the convergence rates of the
  drift data as q -> 1.
* classical: Hermite/oscillator annihilation and the q = 1 collapse of the
  deformed Hermite functions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .qcore import Deformation, Rational, format_rational
from .series import PowerSeries, make_series, monomial
from .qspecial import (
    VacuumSpec,
    beta_q,
    classical_hermite,
    delta_beta_q,
    q_gauss,
    q_hermite,
    q_exp,
)
from .operators import (
    classical_hermite_op,
    classical_schrodinger_op,
    convergence_ratios,
    second_order_composed,
    second_order_direct,
    susy_pair_limit,
    t_plus_q,
)

__all__ = [
    "CheckResult",
    "DEFAULT_QS",
    "DEFAULT_BETAS",
    "SUITES",
    "kernel_suite",
    "factorization_suite",
    "leibniz_suite",
    "limits_suite",
    "classical_suite",
    "run_suite",
]

DEFAULT_QS: tuple[Rational, ...] = (Fraction(2), Fraction(3, 2), Fraction(5, 4))
DEFAULT_BETAS: tuple[Rational, ...] = (Fraction(-1, 2), Fraction(1, 2))
LEIBNIZ_SEED = 0x5EED


@dataclass(frozen=True)
class CheckResult:
    name: str
    params: dict[str, str] = field(default_factory=dict)
    status: str = "pass"
    worst_deviation: str = "0"
    first_failure_index: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _residual_result(
    name: str, params: dict[str, str], residual: PowerSeries, min_order: int
) -> CheckResult:
    """Pass only if the residual is exactly zero and long enough to mean it."""
    if residual.order < min_order:
        return CheckResult(
            name=name,
            params=params,
            status="fail",
            worst_deviation=f"insufficient order {residual.order} < {min_order}",
        )
    ok = residual.is_zero
    return CheckResult(
        name=name,
        params=params,
        status="pass" if ok else "fail",
        worst_deviation=format_rational(residual.max_abs_coeff()),
        first_failure_index=None if ok else residual.first_nonzero_index(),
    )


def _cell_params(v: VacuumSpec) -> dict[str, str]:
    return {
        "q": format_rational(v.d.q),
        "beta": format_rational(v.beta),
        "order": str(v.order),
    }


# -- suites -------------------------------------------------------------------


def kernel_suite(
    qs: Iterable[Rational] = DEFAULT_QS,
    betas: Iterable[Rational] = DEFAULT_BETAS,
    order: int = 40,
) -> list[CheckResult]:
    """Tplus annihilates e_q(beta x^2), exactly, in every valid coefficient."""
    out = []
    for q in qs:
        for beta in betas:
            v = VacuumSpec(beta=beta, d=Deformation(q), order=order)
            residual = t_plus_q(v).apply(q_gauss(v))
            out.append(
                _residual_result("kernel", _cell_params(v), residual, order - 1)
            )
    return out


def factorization_suite(
    qs: Iterable[Rational] = DEFAULT_QS,
    betas: Iterable[Rational] = DEFAULT_BETAS,
    order: int = 32,
) -> list[CheckResult]:
    """Expanded five-term partner operators equal the composed products.

    Checked on the complete monomial basis x^0..x^order, which settles the
    operator identity on the whole truncated space by linearity.
    """
    out = []
    basis = [monomial(j, order) for j in range(order + 1)]
    for q in qs:
        for beta in betas:
            v = VacuumSpec(beta=beta, d=Deformation(q), order=order)
            for which in ("b", "f"):
                direct = second_order_direct(v, which)
                composed = second_order_composed(v, which)
                worst = CheckResult(
                    name=f"factorization[{which}]", params=_cell_params(v)
                )
                for probe in basis:
                    res = _residual_result(
                        f"factorization[{which}]",
                        _cell_params(v),
                        direct.apply(probe) - composed.apply(probe),
                        order - 2,
                    )
                    if not res.passed:
                        worst = res
                        break
                out.append(worst)
    return out


def _random_polynomial(rng: random.Random, max_degree: int, order: int) -> PowerSeries:
    """Polynomial with rational coefficients in [-5, 5], small denominators."""
    degree = rng.randint(0, max_degree)
    coeffs = []
    for _ in range(degree + 1):
        den = rng.randint(1, 6)
        num = rng.randint(-5 * den, 5 * den)
        coeffs.append(Fraction(num, den))
    return make_series(coeffs, order)


def leibniz_suite(
    qs: Iterable[Rational] = (Fraction(2), Fraction(3, 2)),
    pairs: int = 200,
    max_degree: int = 10,
    seed: int = LEIBNIZ_SEED,
) -> list[CheckResult]:
    """Product rule D_q(FG) = (D_q F) G(qx) + F(x/q) (D_q G), exactly."""
    out = []
    order = 2 * max_degree + 2
    for q in qs:
        d = Deformation(q)
        rng = random.Random(seed)
        worst = CheckResult(
            name="leibniz",
            params={"q": format_rational(q), "pairs": str(pairs), "seed": str(seed)},
        )
        for _ in range(pairs):
            f = _random_polynomial(rng, max_degree, order)
            g = _random_polynomial(rng, max_degree, order)
            lhs = (f * g).jackson_derivative(d)
            rhs = f.jackson_derivative(d) * g.scale_arg(q) + f.scale_arg(
                1 / Fraction(q)
            ) * g.jackson_derivative(d)
            res = _residual_result(
                "leibniz", dict(worst.params), lhs - rhs, order - 1
            )
            if not res.passed:
                worst = res
                break
        out.append(worst)
    return out


def _ratio_band_result(
    name: str,
    params: dict[str, str],
    ratios: Sequence[Rational],
    target: Rational,
    tolerance: Rational,
    require_all: bool,
) -> CheckResult:
    """Successive-ratio convergence check, computed and compared exactly.

    With require_all, every ratio must sit inside target +- tolerance;
    otherwise only the final ratio must, and the distance to the target must
    shrink monotonically (the sequence converges into the band).
    """
    gaps = [abs(r - target) for r in ratios]
    if require_all:
        ok = all(g <= tolerance for g in gaps)
    else:
        ok = gaps[-1] <= tolerance and all(a > b for a, b in zip(gaps, gaps[1:]))
    return CheckResult(
        name=name,
        params=params,
        status="pass" if ok else "fail",
        worst_deviation=format_rational(max(gaps)),
    )


def limits_suite(order: int = 24, top_degree: int = 20) -> list[CheckResult]:
    """Undeformed reduction at q = 1 and convergence of the drift data.

    * At q = 1 exactly, the composed partner operators act on monomials
      x^0..x^top_degree identically to -D^2 + b1^2 x^2 +- b1, b1 = 2 beta.
    * Along q = 1 + 2**-k the deviation beta_q(0) - 2 beta is second order
      in (q - 1), successive ratios inside 1/4 +- 1/20.
    * The drift series beta_q(x^2) - (1/q) beta_q(x^2/q^2) goes to zero at
      first order: its constant term carries the factor (1 - 1/q), so the
      ratios converge to 1/2, checked inside 1/2 +- 1/20.
    """
    out = []
    need = max(order, top_degree + 4)
    basis = [monomial(j, need) for j in range(top_degree + 1)]
    for beta in DEFAULT_BETAS:
        v1 = VacuumSpec(beta=beta, d=Deformation(1), order=need)
        h0, h1 = susy_pair_limit(v1)
        for which, target in (("b", h0), ("f", h1)):
            deformed = second_order_composed(v1, which)
            worst = CheckResult(
                name=f"undeformed_reduction[{which}]",
                params={"beta": format_rational(beta), "order": str(need)},
            )
            for probe in basis:
                res = _residual_result(
                    worst.name,
                    dict(worst.params),
                    deformed.apply(probe) - target.apply(probe),
                    need - 2,
                )
                if not res.passed:
                    worst = res
                    break
            out.append(worst)

    sweep = [1 + Fraction(1, 2**k) for k in range(1, 7)]
    for beta in DEFAULT_BETAS:
        beta0_devs = []
        drift_devs = []
        for q in sweep:
            v = VacuumSpec(beta=beta, d=Deformation(q), order=8)
            beta0_devs.append(abs(beta_q(v).coeff(0).as_rational() - 2 * beta))
            drift_devs.append(delta_beta_q(v).max_abs_coeff())
        params = {"beta": format_rational(beta), "sweep": "1+2^-k, k=1..6"}
        out.append(
            _ratio_band_result(
                "limit_rate[beta0]",
                params,
                convergence_ratios(beta0_devs),
                Fraction(1, 4),
                Fraction(1, 20),
                require_all=True,
            )
        )
        shrink_ok = all(a > b for a, b in zip(drift_devs, drift_devs[1:]))
        out.append(
            CheckResult(
                name="drift_vanishes",
                params=params,
                status="pass" if shrink_ok and drift_devs[-1] < drift_devs[0] / 8 else "fail",
                worst_deviation=format_rational(drift_devs[-1]),
            )
        )
        out.append(
            _ratio_band_result(
                "limit_rate[drift]",
                params,
                convergence_ratios(drift_devs),
                Fraction(1, 2),
                Fraction(1, 20),
                require_all=False,
            )
        )
    return out


def classical_suite(max_n: int = 6, order: int = 24) -> list[CheckResult]:
    """q = 1 oracles: operator annihilation and Rodrigues/recurrence agreement."""
    out = []
    d1 = Deformation(1)
    gauss = q_exp(make_series([0, 0, Fraction(-1, 2)], order), d1)
    for n in range(max_n + 1):
        params = {"n": str(n), "order": str(order)}
        hn = classical_hermite(n, order)
        out.append(
            _residual_result(
                "hermite_annihilation",
                params,
                classical_hermite_op(n).apply(hn),
                order - 2,
            )
        )
        phi = gauss * hn
        out.append(
            _residual_result(
                "oscillator_annihilation",
                params,
                classical_schrodinger_op(n).apply(phi),
                order - 2,
            )
        )
        # the Rodrigues product loses n orders and the tail check reads two
        # coefficients above degree n, so size the truncation per level
        h_order = max(order, 2 * n + 4)
        deformed = q_hermite(n, d1, h_order)
        residual = deformed - classical_hermite(n, h_order)
        res = _residual_result(
            "rodrigues_collapse", params, residual, h_order - n
        )
        # the q = 1 Rodrigues product must also be a genuine polynomial:
        # the two coefficients above degree n must vanish
        if res.passed and any(deformed.coeff(n + k) for k in (1, 2)):
            res = CheckResult(
                name="rodrigues_collapse",
                params=params,
                status="fail",
                worst_deviation="nonzero tail coefficient",
                first_failure_index=n + 1,
            )
        out.append(res)
    return out


SUITES = ("kernel", "factorization", "leibniz", "limits", "classical")


def run_suite(
    suite: str,
    q: Optional[Rational] = None,
    beta: Optional[Rational] = None,
    order: Optional[int] = None,
) -> list[CheckResult]:
    """Run one named suite, optionally pinned to a single (q, beta) cell."""
    qs = DEFAULT_QS if q is None else (Fraction(q),)
    betas = DEFAULT_BETAS if beta is None else (Fraction(beta),)
    if suite == "kernel":
        return kernel_suite(qs, betas, order or 40)
    if suite == "factorization":
        return factorization_suite(qs, betas, order or 32)
    if suite == "leibniz":
        return leibniz_suite(qs if q is not None else (Fraction(2), Fraction(3, 2)))
    if suite == "limits":
        return limits_suite(order or 24)
    if suite == "classical":
        return classical_suite(order=order or 24)
    raise ValueError(f"unknown verification suite: {suite!r}")
