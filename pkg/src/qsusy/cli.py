"""Command-line front end: constructors, operator application, verification.

Commands:

* ``hermite``, ``beta``, ``ufunc``: build the named series and emit JSON/CSV.
* ``apply``: apply a named operator to a series file.
* ``verify``: run an identity suite; exit 0 when every check passes, 1 on the
  first identity failure, 2 on usage errors.
* ``limit``: deviation table of the deformed data from the q = 1 limit along
  a q sweep.
* ``table``: float samples (x, value) of a named series, or of an operator
  applied pointwise to an input series (x = 0 and undeformed operators fall
  back to the series path).

All rational flags are parsed exactly: "--q 1.5" means 3/2, never a float.
The environment variable QSUSY_ORDER overrides the default truncation order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .qcore import Deformation, Rational, format_rational, parse_rational
from .series import PowerSeries, make_series
from .qspecial import (
    VacuumSpec,
    beta_q,
    delta_beta_q,
    q_exp,
    q_gauss,
    q_hermite,
    u_transform,
)
from .operators import (
    QOperator,
    classical_hermite_op,
    classical_schrodinger_op,
    second_order_composed,
    susy_pair_limit,
    t_minus_q,
    t_plus_q,
)
from .serialize import series_from_json, series_to_csv, series_to_json
from .verify import DEFAULT_BETAS, DEFAULT_QS, SUITES, CheckResult, run_suite

__all__ = ["RunConfig", "parse_args", "main"]

DEFAULT_ORDER = 32
MIN_ORDER = 4
DEFAULT_SWEEP: tuple[Rational, ...] = (
    Fraction(2),
    Fraction(3, 2),
    Fraction(5, 4),
    Fraction(9, 8),
    Fraction(17, 16),
    Fraction(1),
)
OPERATOR_NAMES = ("Ob", "Of", "Tplus", "Tminus", "h0", "h1", "OH", "Ophi")
TABLE_FUNCS = ("beta", "dbeta", "gauss", "hermite", "ufunc")


@dataclass
class RunConfig:
    """Validated run parameters; construction implies the flags parsed cleanly."""

    command: str
    q: Rational = Fraction(1)
    beta: Rational = Fraction(-1, 2)
    order: int = DEFAULT_ORDER
    n_or_p: int = 0
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    emit: str = "json"
    suite: Optional[str] = None
    op: Optional[str] = None
    func: str = "beta"
    delta: bool = False
    qs: tuple[Rational, ...] = DEFAULT_SWEEP
    xs: tuple[Rational, ...] = ()
    q_given: bool = False
    beta_given: bool = False
    jobs: int = 4


def _rational_arg(text: str) -> Rational:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive_rational_arg(text: str) -> Rational:
    value = _rational_arg(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return value


def _nonzero_rational_arg(text: str) -> Rational:
    value = _rational_arg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be nonzero")
    return value


def _rational_list_arg(text: str) -> tuple[Rational, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(_rational_arg(part) for part in text.split(","))


def _positive_rational_list_arg(text: str) -> tuple[Rational, ...]:
    values = _rational_list_arg(text)
    if any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError("all sweep values must be positive")
    return values


def _order_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer order: {text!r}") from exc
    if value < MIN_ORDER:
        raise argparse.ArgumentTypeError(f"order must be >= {MIN_ORDER}, got {value}")
    return value


def _default_order(parser: argparse.ArgumentParser) -> int:
    env = os.environ.get("QSUSY_ORDER")
    if env is None:
        return DEFAULT_ORDER
    try:
        return _order_arg(env)
    except argparse.ArgumentTypeError as exc:
        parser.error(f"QSUSY_ORDER: {exc}")


def _add_common(sub: argparse.ArgumentParser, *, beta: bool = True) -> None:
    sub.add_argument("--q", type=_positive_rational_arg, default=None,
                     help="deformation parameter, exact rational (default 1)")
    if beta:
        sub.add_argument("--beta", type=_nonzero_rational_arg, default=None,
                         help="vacuum coefficient, exact rational (default -1/2)")
    sub.add_argument("--order", type=_order_arg, default=None,
                     help=f"truncation order (default {DEFAULT_ORDER}, env QSUSY_ORDER)")
    sub.add_argument("--output", default=None, help="output path (default stdout)")


# let argparse accept values like "-1/2" or "-1,2,-3/4" after an option flag
_NEGATIVE_VALUE = re.compile(r"^-\d+(?:[/.]\d+)?(?:,-?\d+(?:[/.]\d+)?)*$")


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="qsusy",
        description="exact q-deformed oscillator intertwining toolkit",
    )
    parser._negative_number_matcher = _NEGATIVE_VALUE
    commands = parser.add_subparsers(dest="command", required=True)

    def add_parser(*args, **kwargs):
        sub = commands.add_parser(*args, **kwargs)
        sub._negative_number_matcher = _NEGATIVE_VALUE
        return sub

    p = add_parser("hermite", help="deformed Hermite function series")
    p.add_argument("--n", type=int, default=0, help="index n >= 0")
    _add_common(p, beta=False)
    p.add_argument("--emit", choices=("json", "csv"), default="json")

    p = add_parser("beta", help="drift coefficient series beta_q(x^2)")
    _add_common(p)
    p.add_argument("--delta", action="store_true",
                   help="emit the q-increment beta_q(x^2) - (1/q) beta_q(x^2/q^2)")
    p.add_argument("--emit", choices=("json", "csv"), default="json")

    p = add_parser("ufunc", help="nodeless transformation function series")
    p.add_argument("--p", type=int, default=0, help="even index p >= 0")
    _add_common(p, beta=False)
    p.add_argument("--emit", choices=("json", "csv"), default="json")

    p = add_parser("apply", help="apply a named operator to a series file")
    p.add_argument("--op", required=True, choices=OPERATOR_NAMES)
    p.add_argument("--n", type=int, default=0, help="index for OH/Ophi")
    _add_common(p)
    p.add_argument("--input", required=True, help="input series JSON path")
    p.add_argument("--emit", choices=("json", "csv"), default="json")

    p = add_parser("verify", help="run an identity suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    _add_common(p)
    p.add_argument("--jobs", type=int, default=4, help="worker threads for cells")

    p = add_parser("limit", help="deviation table along a q sweep")
    p.add_argument("--qs", type=_positive_rational_list_arg, default=None,
                   help="comma-separated sweep, e.g. 2,3/2,5/4 (default standard sweep)")
    _add_common(p)
    p.add_argument("--emit", choices=("csv", "json"), default="csv")

    p = add_parser("table", help="float samples of a series or operator")
    p.add_argument("--func", choices=TABLE_FUNCS, default="beta")
    p.add_argument("--op", choices=OPERATOR_NAMES, default=None,
                   help="sample an operator applied to --input instead of --func")
    p.add_argument("--input", default=None, help="input series JSON for --op mode")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--xs", type=_rational_list_arg, default=None,
                   help='comma-separated sample points (default "-1,-1/2,0,1/2,1")')
    _add_common(p)

    args = parser.parse_args(argv)

    config = RunConfig(command=args.command)
    config.order = args.order if args.order is not None else _default_order(parser)
    config.q_given = getattr(args, "q", None) is not None
    if config.q_given:
        config.q = args.q
    config.beta_given = getattr(args, "beta", None) is not None
    if config.beta_given:
        config.beta = args.beta
    config.output_path = getattr(args, "output", None)
    config.input_path = getattr(args, "input", None)
    config.emit = getattr(args, "emit", "json")
    config.suite = getattr(args, "suite", None)
    config.op = getattr(args, "op", None)
    config.func = getattr(args, "func", "beta")
    config.delta = getattr(args, "delta", False)
    config.jobs = getattr(args, "jobs", 4)
    if getattr(args, "qs", None) is not None:
        config.qs = args.qs
    if getattr(args, "xs", None) is not None:
        config.xs = args.xs
    elif args.command == "table":
        config.xs = _rational_list_arg("-1,-1/2,0,1/2,1")

    uses_p = args.command == "ufunc" or (args.command == "table" and args.func == "ufunc")
    if uses_p:
        config.n_or_p = getattr(args, "p", 0)
        if config.n_or_p < 0 or config.n_or_p % 2:
            parser.error(f"--p must be even and >= 0, got {config.n_or_p}")
    else:
        config.n_or_p = getattr(args, "n", 0)
        if config.n_or_p < 0:
            parser.error(f"--n must be >= 0, got {config.n_or_p}")
    hermite_like = (
        args.command in ("hermite", "ufunc")
        or (args.command == "table" and args.func in ("hermite", "ufunc"))
    )
    if hermite_like and config.order < config.n_or_p + 2:
        parser.error(
            f"order {config.order} too small for index {config.n_or_p} (needs index + 2)"
        )
    if args.command == "table" and args.op is not None and args.input is None:
        parser.error("table --op needs --input")
    return config


# -- emit helpers ---------------------------------------------------------------


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _emit_series(series: PowerSeries, config: RunConfig) -> int:
    if config.emit == "csv":
        _write(series_to_csv(series), config.output_path)
    else:
        _write(series_to_json(series), config.output_path)
    return 0


# -- command implementations -----------------------------------------------------


def _vacuum(config: RunConfig, order: Optional[int] = None) -> VacuumSpec:
    return VacuumSpec(
        beta=config.beta,
        d=Deformation(config.q),
        order=order if order is not None else config.order,
    )


def _build_operator(config: RunConfig, min_order: int) -> QOperator:
    """Resolve an --op name; coefficient series are built long enough for the input."""
    order = max(config.order, min_order)
    name = config.op
    if name in ("Ob", "Of"):
        return second_order_composed(_vacuum(config, order), "b" if name == "Ob" else "f")
    if name == "Tplus":
        return t_plus_q(_vacuum(config, order))
    if name == "Tminus":
        return t_minus_q(_vacuum(config, order))
    if name in ("h0", "h1"):
        h0, h1 = susy_pair_limit(_vacuum(config, order))
        return h0 if name == "h0" else h1
    if name == "OH":
        return classical_hermite_op(config.n_or_p)
    if name == "Ophi":
        return classical_schrodinger_op(config.n_or_p)
    raise ValueError(f"unknown operator: {name!r}")


def _run_hermite(config: RunConfig) -> int:
    series = q_hermite(config.n_or_p, Deformation(config.q), config.order)
    return _emit_series(series, config)


def _run_beta(config: RunConfig) -> int:
    v = _vacuum(config)
    series = delta_beta_q(v) if config.delta else beta_q(v)
    return _emit_series(series, config)


def _run_ufunc(config: RunConfig) -> int:
    series = u_transform(config.n_or_p, Deformation(config.q), config.order)
    return _emit_series(series, config)


def _load_series(path: str) -> PowerSeries:
    with open(path, "r", encoding="utf-8") as handle:
        return series_from_json(handle.read())


def _run_apply(config: RunConfig) -> int:
    series = _load_series(config.input_path)
    op = _build_operator(config, series.order)
    return _emit_series(op.apply(series), config)


def _check_to_dict(check: CheckResult) -> dict:
    out = {
        "name": check.name,
        "params": dict(sorted(check.params.items())),
        "status": check.status,
        "worst_deviation": check.worst_deviation,
    }
    if check.first_failure_index is not None:
        out["first_failure_index"] = check.first_failure_index
    return out


def _verify_cells(config: RunConfig) -> list[tuple]:
    """Independent (suite, q, beta) work units; each one is a pure computation."""
    suites = SUITES if config.suite == "all" else (config.suite,)
    q = config.q if config.q_given else None
    beta = config.beta if config.beta_given else None
    cells = []
    for suite in suites:
        if suite in ("kernel", "factorization"):
            for qq in (q,) if q is not None else DEFAULT_QS:
                for bb in (beta,) if beta is not None else DEFAULT_BETAS:
                    cells.append((suite, qq, bb))
        elif suite == "leibniz":
            for qq in (q,) if q is not None else (Fraction(2), Fraction(3, 2)):
                cells.append((suite, qq, None))
        else:
            cells.append((suite, None, None))
    return cells


def _run_verify(config: RunConfig) -> int:
    cells = _verify_cells(config)

    def one(cell: tuple) -> list[CheckResult]:
        suite, q, beta = cell
        return run_suite(suite, q=q, beta=beta, order=config.order)

    if config.jobs > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=min(config.jobs, len(cells))) as pool:
            results = [c for batch in pool.map(one, cells) for c in batch]
    else:
        results = [c for cell in cells for c in one(cell)]

    # sorting fixes the output bytes no matter how the cells were scheduled
    results.sort(key=lambda c: (c.name, sorted(c.params.items())))
    report = {
        "version": __version__,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "checks": [_check_to_dict(c) for c in results],
    }
    _write(json.dumps(report, indent=2), config.output_path)
    return 0 if all(c.passed for c in results) else 1


def _run_limit(config: RunConfig) -> int:
    rows = []
    order = config.order
    probe = q_exp(make_series([0, 0, Fraction(-1, 2)], order), Deformation(1))
    h0, _ = susy_pair_limit(_vacuum(config, order))
    target = h0.apply(probe)
    for q in config.qs:
        cell = RunConfig(command="limit", q=q, beta=config.beta, order=order)
        v = _vacuum(cell)
        beta0_dev = abs(beta_q(v).coeff(0).as_rational() - 2 * config.beta)
        drift_dev = delta_beta_q(v).max_abs_coeff()
        partner_dev = (
            second_order_composed(v, "b").apply(probe) - target
        ).max_abs_coeff()
        rows.append((q, beta0_dev, drift_dev, partner_dev))

    if config.emit == "json":
        payload = [
            {
                "q": format_rational(q),
                "beta0_deviation": format_rational(a),
                "drift_deviation": format_rational(b),
                "partner_deviation": format_rational(c),
            }
            for q, a, b, c in rows
        ]
        _write(json.dumps(payload, indent=2), config.output_path)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["q", "beta0_deviation", "drift_deviation", "partner_deviation"])
        for q, a, b, c in rows:
            writer.writerow([format_rational(q), float(a), float(b), float(c)])
        _write(buf.getvalue(), config.output_path)
    return 0


def _table_series(config: RunConfig) -> PowerSeries:
    if config.func == "beta":
        return beta_q(_vacuum(config))
    if config.func == "dbeta":
        return delta_beta_q(_vacuum(config))
    if config.func == "gauss":
        return q_gauss(_vacuum(config))
    if config.func == "hermite":
        return q_hermite(config.n_or_p, Deformation(config.q), config.order)
    if config.func == "ufunc":
        return u_transform(config.n_or_p, Deformation(config.q), config.order)
    raise ValueError(f"unknown table function: {config.func!r}")


def _run_table(config: RunConfig) -> int:
    if config.op is not None:
        series = _load_series(config.input_path)
        op = _build_operator(config, series.order)
        result = op.apply(series)

        def value_at(x: Rational) -> float:
            # the q-quotient degenerates at x = 0, and undeformed operators
            # have no pointwise form at all; both cases answer via the series
            if x == 0 or not op.has_point_form:
                return result.evaluate_float(float(x))
            return op.apply_at(series.evaluate_float, float(x))

    else:
        series = _table_series(config)

        def value_at(x: Rational) -> float:
            return series.evaluate_float(float(x))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "value"])
    for x in config.xs:
        writer.writerow([format_rational(x), repr(value_at(x))])
    _write(buf.getvalue(), config.output_path)
    return 0


_COMMANDS = {
    "hermite": _run_hermite,
    "beta": _run_beta,
    "ufunc": _run_ufunc,
    "apply": _run_apply,
    "verify": _run_verify,
    "limit": _run_limit,
    "table": _run_table,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return _COMMANDS[config.command](config)
    except (OSError, ValueError) as exc:
        print(f"qsusy: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
