"""Batch command-line surface: deterministic, exact-rational reports.

Every subcommand prints `table` (human), `json`, or `csv` output built from
the same data, with atoms sorted and rationals rendered canonically as
"num/den", so identical invocations are byte-identical.  Exit codes: 0 on
success, 1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .convergence_lab import (
    LimitReport,
    MeasureFamily,
    RealSequence,
    SetFamily,
    branch_check,
    builtin_family,
    integral_limit,
    lower_ray_family,
    order_a_limit,
    order_b_limit,
    parse_sequence_spec,
    set_table_family,
    singleton_family,
    table_family,
    tightness_probe,
    weak_limit_identify,
)
from .errors import LimitGapError, NRangeError
from .event_dsl import parse_event, print_event
from .extended_line import compactify_measure, h, saturating_float
from .measure_core import (
    DiscreteMeasure,
    MeasurableSet,
    check_additivity,
    finite,
    measure_from_dict,
    measure_to_dict,
    parse_ext_real,
    parse_rational,
    rat_str,
    set_from_dict,
)
from .process_lab import (
    FAIR,
    IdentityReport,
    enumerate_outcomes,
    escaped_mass_profile,
    event_probability,
    mu_closed_form,
    verify_process_identities,
)

_TEST_FUNCTIONS: dict[str, Callable] = {
    "sin": lambda x: math.sin(saturating_float(x)),
    "atan": lambda x: math.atan(saturating_float(x)),
    "h": lambda x: h(x).value,
}


# ---------------------------------------------------------------------------
# the end-to-end walkthrough


@dataclass(frozen=True, slots=True)
class TheoremRow:
    n: int
    last_flip_zero: Fraction  # P(X_N == 0)
    split_below: Fraction  # P(X_N == 0 and Z < N)
    split_at: Fraction  # P(X_N == 0 and Z == N)
    ray_mass: Fraction  # mu_n((-inf, n-1])


@dataclass(frozen=True, slots=True)
class TheoremReport:
    """The full two-route pipeline for the limit of P(X_n = 0).

    Each row decomposes the constant 1/2 into the two split events and
    records the ray mass mu_n((-inf, n-1]).  The two orders then evaluate
    the limit of that ray mass: order (b) follows the numbers to 1/2, order
    (a) applies the limiting measure to the limiting set and gets 0.
    divergence_step names the exact substitution where the routes part.
    """

    rows: tuple[TheoremRow, ...]
    order_a: LimitReport
    order_b: LimitReport
    divergence_step: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "rows": [
                {
                    "n": r.n,
                    "p_last_zero": rat_str(r.last_flip_zero),
                    "p_last_zero_and_z_below": rat_str(r.split_below),
                    "p_last_zero_and_z_at": rat_str(r.split_at),
                    "ray_mass": rat_str(r.ray_mass),
                }
                for r in self.rows
            ],
            "order_a": self.order_a.to_dict(),
            "order_b": self.order_b.to_dict(),
            "divergence_step": self.divergence_step,
        }


def verify_theorem(n_max: int) -> TheoremReport:
    """Walk the decomposition P(X_n=0) = P(X_n=0, Z<n) + P(X_n=0, Z=n) to
    its limit under both evaluation orders.

    Rows for n up to 12 are cross-checked against exhaustive enumeration;
    a mismatch would mean the closed forms and the oracle disagree, which is
    a broken build, not a domain error.
    """
    if not 2 <= n_max <= 20:
        raise NRangeError(f"n_max must lie in [2, 20], got {n_max}")
    ev_below = parse_event("X[N]==0 && Z<N")
    ev_at = parse_event("X[N]==0 && Z==N")
    ev_zero = parse_event("X[N]==0")
    rows = []
    for n in range(2, n_max + 1):
        last_zero = Fraction(1, 2)
        split_below = Fraction(1, 2) - Fraction(1, 2**n)
        split_at = Fraction(1, 2**n)
        ray_mass = mu_closed_form(n).mass_of_set(
            MeasurableSet.lower_ray(finite(n - 1))
        )
        if n <= 12:
            checks = (
                (ev_zero, last_zero),
                (ev_below, split_below),
                (ev_at, split_at),
            )
            for event, expected in checks:
                got = event_probability(n, FAIR, event)
                if got != expected:
                    raise RuntimeError(
                        f"enumeration disagrees with closed form at n={n} for "
                        f"{print_event(event)}: {rat_str(got)} != {rat_str(expected)}"
                    )
            if ray_mass != split_below:
                raise RuntimeError(
                    f"ray mass {rat_str(ray_mass)} != split probability "
                    f"{rat_str(split_below)} at n={n}"
                )
        if last_zero != split_below + split_at:
            raise RuntimeError(f"row decomposition broken at n={n}")
        rows.append(TheoremRow(n, last_zero, split_below, split_at, ray_mass))
    fam = builtin_family("mu")
    sets = lower_ray_family(parse_sequence_spec("n-1"))
    order_a = order_a_limit(fam, sets)
    order_b = order_b_limit(fam, sets, horizon=32)
    divergence_step = (
        "the per-n identities are exact; the routes part at the final "
        "substitution, where the limit of the numbers mu_n((-inf, n-1]) "
        f"(order b, {rat_str(order_b.value)}) is replaced by the mass of the "
        f"limiting set under the limiting measure (order a, "
        f"{rat_str(order_a.value)})"
    )
    return TheoremReport(tuple(rows), order_a, order_b, divergence_step)


# ---------------------------------------------------------------------------
# argument parsing helpers


def _load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _family_arg(spec: str) -> MeasureFamily:
    if spec in ("mu", "lambda", "dirac_n"):
        return builtin_family(spec)
    if spec.startswith("@"):
        data = _load_json(spec[1:])
        if isinstance(data, dict) and "measures" in data:
            data = data["measures"]
        if isinstance(data, dict):
            data = [data]
        return table_family([measure_from_dict(d) for d in data])
    raise LimitGapError(
        f"unknown family {spec!r}; use mu, lambda, dirac_n, or @file.json"
    )


_RAY_SEQ = re.compile(r"^I\((.+)\)$")


def _set_family_arg(spec: str) -> SetFamily:
    match = _RAY_SEQ.match(spec)
    if match:
        return lower_ray_family(parse_sequence_spec(match.group(1)))
    if spec.startswith("I="):
        return lower_ray_family(RealSequence("const", parse_rational(spec[2:])))
    if spec.startswith("point="):
        return singleton_family(parse_ext_real(spec[6:]))
    if spec.startswith("@"):
        data = _load_json(spec[1:])
        if isinstance(data, dict) and "sets" in data:
            data = data["sets"]
        if isinstance(data, dict):
            data = [data]
        return set_table_family([set_from_dict(d) for d in data])
    raise LimitGapError(
        f"unknown set family {spec!r}; use I(<seq>), I=<x>, point=<c>, or @file.json"
    )


def _single_set_arg(spec: str) -> MeasurableSet:
    if spec.startswith("I="):
        return MeasurableSet.lower_ray(finite(parse_rational(spec[2:])))
    if spec.startswith("point="):
        return MeasurableSet.singleton(parse_ext_real(spec[6:]))
    if spec.startswith("@"):
        return set_from_dict(_load_json(spec[1:]))
    raise LimitGapError(
        f"unknown set {spec!r}; use I=<x>, point=<c>, or @file.json"
    )


# ---------------------------------------------------------------------------
# output plumbing


@dataclass(frozen=True, slots=True)
class _Output:
    data: Any  # json payload
    table: str  # human rendering
    rows: tuple[dict[str, Any], ...] | None = None  # csv rows, if tabular


def _dict_table(data: dict[str, Any]) -> str:
    lines = []
    for key, value in data.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _rows_table(rows: Sequence[dict[str, Any]]) -> str:
    if not rows:
        return "(no rows)"
    headers = list(rows[0])
    widths = {
        h: max(len(h), *(len(str(r[h])) for r in rows)) for h in headers
    }
    out = ["  ".join(h.ljust(widths[h]) for h in headers)]
    for row in rows:
        out.append("  ".join(str(row[h]).ljust(widths[h]) for h in headers))
    return "\n".join(out)


def _measure_output(m: DiscreteMeasure) -> _Output:
    data = measure_to_dict(m)
    rows = tuple(
        {"point": json.dumps(a["point"]) if isinstance(a["point"], dict) else a["point"],
         "mass": a["mass"]}
        for a in data["atoms"]
    )
    table = _rows_table(rows) + f"\ntotal: {data['total']}"
    return _Output(data, table, rows)


def _emit(output: _Output, fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        text = json.dumps(output.data, indent=2) + "\n"
    elif fmt == "csv":
        rows = output.rows
        if rows is None:
            flat = output.data if isinstance(output.data, dict) else {"value": output.data}
            rows = tuple(
                {"key": k, "value": json.dumps(v) if isinstance(v, (dict, list)) else v}
                for k, v in flat.items()
            )
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["key"])
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = output.table + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_measure_show(args: argparse.Namespace) -> _Output:
    fam = _family_arg(args.family)
    return _measure_output(fam.member(args.n))


def _cmd_measure_additivity(args: argparse.Namespace) -> _Output:
    fam = _family_arg(args.family)
    m = fam.member(args.n)
    report = check_additivity(m, _single_set_arg(args.set_a), _single_set_arg(args.set_b))
    data = {
        "mass_a": rat_str(report.mass_a),
        "mass_b": rat_str(report.mass_b),
        "mass_union": rat_str(report.mass_union),
        "mass_sum": rat_str(report.mass_sum),
        "disjoint": report.disjoint,
        "eligible": report.eligible,
    }
    return _Output(data, _dict_table(data))


def _cmd_process_enumerate(args: argparse.Namespace) -> _Output:
    rows = enumerate_outcomes(args.n, args.p, workers=args.workers)
    records = tuple(
        {
            "bits": "".join(str(b) for b in row.outcome.bits),
            "prob": rat_str(row.outcome.prob),
            "y": row.y,
            "z": row.z,
        }
        for row in rows
    )
    data = {"n": args.n, "p": rat_str(args.p), "rows": list(records)}
    return _Output(data, _rows_table(records), records)


def _cmd_process_prob(args: argparse.Namespace) -> _Output:
    event = parse_event(args.event)
    value = event_probability(args.n, args.p, event, workers=args.workers)
    data = {
        "event": print_event(event),
        "n": args.n,
        "p": rat_str(args.p),
        "value": rat_str(value),
    }
    return _Output(data, f"{rat_str(value)}\n" + _dict_table(data))


def _identity_data(report: IdentityReport) -> dict[str, Any]:
    return {
        "n": report.n,
        "rows_checked": report.rows_checked,
        "z_in_range": report.z_in_range,
        "argmax_attains_max": report.argmax_attains_max,
        "set_identity": report.set_identity,
        "all_hold": report.all_hold,
        "violations": list(report.violations),
        "p_last_zero_and_z_below": rat_str(report.p_last_zero_and_z_below),
        "p_z_below": rat_str(report.p_z_below),
    }


def _cmd_process_identities(args: argparse.Namespace) -> _Output:
    data = _identity_data(verify_process_identities(args.n, args.p))
    return _Output(data, _dict_table(data))


def _cmd_process_escape(args: argparse.Namespace) -> _Output:
    k_max = args.k_max if args.k_max is not None else args.n - 1
    profile = escaped_mass_profile(args.n, k_max)
    records = tuple(
        {"k": k, "point": str(args.n - k), "mass": rat_str(mass)}
        for k, mass in profile
    )
    total = sum((mass for _, mass in profile), Fraction(0))
    data = {
        "n": args.n,
        "profile": list(records),
        "partial_sum": rat_str(total),
    }
    return _Output(data, _rows_table(records) + f"\npartial_sum: {rat_str(total)}", records)


def _cmd_converge_tightness(args: argparse.Namespace) -> _Output:
    verdict = tightness_probe(_family_arg(args.family), args.epsilon, args.horizon)
    data = verdict.to_dict()
    return _Output(data, _dict_table(data))


def _cmd_converge_limit(args: argparse.Namespace) -> _Output:
    fam = _family_arg(args.family)
    sets = _set_family_arg(args.sets)
    if args.order == "a":
        report = order_a_limit(fam, sets, args.horizon)
    else:
        report = order_b_limit(fam, sets, args.horizon)
    data = report.to_dict()
    headline = data.get("value", data.get("status"))
    return _Output(data, f"{headline}\n" + _dict_table(data))


def _cmd_converge_weaklimit(args: argparse.Namespace) -> _Output:
    limit = weak_limit_identify(_family_arg(args.family), args.horizon)
    return _measure_output(limit)


def _cmd_converge_testfn(args: argparse.Namespace) -> _Output:
    f = _TEST_FUNCTIONS[args.fn]
    report = integral_limit(_family_arg(args.family), f, args.horizon)
    data = {"fn": args.fn, **report.to_dict()}
    return _Output(data, _dict_table(data))


def _cmd_converge_branches(args: argparse.Namespace) -> _Output:
    report = branch_check(_family_arg(args.family), args.xs, args.horizon)
    data = report.to_dict()
    return _Output(data, _dict_table(data))


def _cmd_compactify(args: argparse.Namespace) -> _Output:
    fam = _family_arg(args.family)
    return _measure_output(compactify_measure(fam.member(args.n)))


def _cmd_theorem_verify(args: argparse.Namespace) -> _Output:
    report = verify_theorem(args.n_max)
    data = report.to_dict()
    rows = tuple(dict(r) for r in data["rows"])
    table = (
        _rows_table(rows)
        + f"\norder (a): {data['order_a'].get('value')}"
        + f"\norder (b): {data['order_b'].get('value')}"
        + f"\n{data['divergence_step']}"
    )
    return _Output(data, table, rows)


def _cmd_plotdata(args: argparse.Namespace) -> _Output:
    records = []
    for n in range(1, args.n_max + 1):
        m = mu_closed_form(n)
        for point, mass in m.atoms:
            records.append({"n": n, "j": str(point), "mass": rat_str(mass)})
    rows = tuple(records)
    data = {"n_max": args.n_max, "segments": list(rows)}
    return _Output(data, _rows_table(rows), rows)


# ---------------------------------------------------------------------------
# parser assembly


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sub.add_argument("--out", metavar="PATH", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="limitgap",
        description="Exact workbench for limits of event probabilities: "
        "measures on the extended real line, the coin-flip argmax process, "
        "and the two rival evaluation orders for limiting probabilities.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    measure = top.add_parser("measure", help="discrete measures and additivity")
    measure_sub = measure.add_subparsers(dest="subcommand", required=True)
    show = measure_sub.add_parser("show", help="print one family member")
    show.add_argument("--family", required=True)
    show.add_argument("--n", type=int, default=1)
    _add_common(show)
    show.set_defaults(handler=_cmd_measure_show)
    add = measure_sub.add_parser(
        "additivity", help="is mass(A) + mass(B) the mass of an event?"
    )
    add.add_argument("--family", required=True)
    add.add_argument("--n", type=int, default=1)
    add.add_argument("--set-a", required=True, dest="set_a")
    add.add_argument("--set-b", required=True, dest="set_b")
    _add_common(add)
    add.set_defaults(handler=_cmd_measure_additivity)

    process = top.add_parser("process", help="the coin-flip argmax process")
    process_sub = process.add_subparsers(dest="subcommand", required=True)
    enum = process_sub.add_parser("enumerate", help="all 2^n outcome rows")
    enum.add_argument("--n", type=int, required=True)
    enum.add_argument("--p", type=parse_rational, default=FAIR)
    enum.add_argument("--workers", type=int, default=1)
    _add_common(enum)
    enum.set_defaults(handler=_cmd_process_enumerate)
    prob = process_sub.add_parser("prob", help="exact probability of an event")
    prob.add_argument("--n", type=int, required=True)
    prob.add_argument("--p", type=parse_rational, default=FAIR)
    prob.add_argument("--event", required=True)
    prob.add_argument("--workers", type=int, default=1)
    _add_common(prob)
    prob.set_defaults(handler=_cmd_process_prob)
    idents = process_sub.add_parser(
        "identities", help="verify the defining identities on every outcome"
    )
    idents.add_argument("--n", type=int, required=True)
    idents.add_argument("--p", type=parse_rational, default=FAIR)
    _add_common(idents)
    idents.set_defaults(handler=_cmd_process_identities)
    escape = process_sub.add_parser(
        "escape", help="masses at n-k: the atoms marching off to +inf"
    )
    escape.add_argument("--n", type=int, required=True)
    escape.add_argument("--k-max", type=int, default=None, dest="k_max")
    _add_common(escape)
    escape.set_defaults(handler=_cmd_process_escape)

    converge = top.add_parser("converge", help="weak limits and evaluation orders")
    converge_sub = converge.add_subparsers(dest="subcommand", required=True)
    tight = converge_sub.add_parser("tightness", help="uniform mass-bound probe")
    tight.add_argument("--family", required=True)
    tight.add_argument("--epsilon", type=parse_rational, required=True)
    tight.add_argument("--horizon", type=int, default=64)
    _add_common(tight)
    tight.set_defaults(handler=_cmd_converge_tightness)
    limit = converge_sub.add_parser(
        "limit", help="limiting probability under order (a) or (b)"
    )
    limit.add_argument("--family", required=True)
    limit.add_argument("--sets", required=True)
    limit.add_argument("--order", choices=("a", "b"), required=True)
    limit.add_argument("--horizon", type=int, default=64)
    _add_common(limit)
    limit.set_defaults(handler=_cmd_converge_limit)
    weak = converge_sub.add_parser("weaklimit", help="identify the weak limit")
    weak.add_argument("--family", required=True)
    weak.add_argument("--horizon", type=int, default=64)
    _add_common(weak)
    weak.set_defaults(handler=_cmd_converge_weaklimit)
    testfn = converge_sub.add_parser(
        "testfn", help="integrals of a test function along the family"
    )
    testfn.add_argument("--family", required=True)
    testfn.add_argument("--fn", choices=sorted(_TEST_FUNCTIONS), required=True)
    testfn.add_argument("--horizon", type=int, default=64)
    _add_common(testfn)
    testfn.set_defaults(handler=_cmd_converge_testfn)
    branches = converge_sub.add_parser(
        "branches",
        help="both orders on rho_n((-inf, x_n]) against the tightness verdict",
    )
    branches.add_argument("--family", required=True)
    branches.add_argument("--xs", required=True)
    branches.add_argument("--horizon", type=int, default=64)
    _add_common(branches)
    branches.set_defaults(handler=_cmd_converge_branches)

    compactify = top.add_parser(
        "compactify", help="push a family member onto [0, 1] through h"
    )
    compactify.add_argument("--family", required=True)
    compactify.add_argument("--n", type=int, default=1)
    _add_common(compactify)
    compactify.set_defaults(handler=_cmd_compactify)

    theorem = top.add_parser("theorem", help="the end-to-end two-route pipeline")
    theorem_sub = theorem.add_subparsers(dest="subcommand", required=True)
    verify = theorem_sub.add_parser(
        "verify", help="per-n decomposition table plus both limit orders"
    )
    verify.add_argument("--n-max", type=int, default=12, dest="n_max")
    _add_common(verify)
    verify.set_defaults(handler=_cmd_theorem_verify)

    plot = top.add_parser(
        "plotdata", help="segment heights of the argmax law for plotting"
    )
    plot.add_argument("--n-max", type=int, default=3, dest="n_max")
    _add_common(plot)
    plot.set_defaults(handler=_cmd_plotdata)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        output = args.handler(args)
    except LimitGapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(output, args.format, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
