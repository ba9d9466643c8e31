"""Command-line front end.

Subcommands: constants, certify, verify, fuzz, feasible, reproduce-remark.
Exit codes: 0 all checks passed, 1 any check failed/refuted, 2 usage or
input validation, 3 regime/precondition violation.  The environment
variable KAUDIT_SEED overrides --seed.  Text mode prints values with six
fractional digits; JSON carries full precision and round-trips byte for
byte.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .audit import (
    feasible_M_for_power,
    verify_classical_kantorovich,
    verify_diff,
    verify_holder_mccarthy,
    verify_jensen,
    verify_operator_order,
    verify_ratio,
)
from .bounds import BoundSpec, classify, constant_Kf, constant_Kf_diff, constant_Klog
from .campaign import DEFAULT_CHECKS, FuzzConfig, verdict_dict, fuzz_campaign
from .errors import (
    DegenerateError,
    DimensionError,
    DomainError,
    InvalidMatrix,
    NotPositive,
    PreconditionError,
    RegimeError,
)
from .functions import Log, parse_function
from .linalg import HermitianMatrix, SpectralWindow, UnitVector, apply_function, eigh, quad_form
from .report import canonical_json, verdicts_csv, wrap_report
from .sconvex import check_s_convex, theta_log

USAGE_ERRORS = (InvalidMatrix, DimensionError, ValueError, json.JSONDecodeError, OSError)
REGIME_ERRORS = (RegimeError, PreconditionError, DegenerateError, DomainError, NotPositive)


def _load_matrix(path: str) -> HermitianMatrix:
    with open(path) as fh:
        payload = json.load(fh)
    rows = payload["rows"]
    n = int(payload.get("n", len(rows)))
    if len(rows) != n:
        raise InvalidMatrix(f"{path}: 'n' = {n} does not match {len(rows)} rows")
    return HermitianMatrix(rows)


def _load_vector(path: str) -> UnitVector:
    with open(path) as fh:
        payload = json.load(fh)
    comps = payload["components"] if isinstance(payload, dict) else payload
    return UnitVector(comps)


def _window_from_args(args) -> SpectralWindow | None:
    if args.m is None and args.M is None:
        return None
    if args.m is None or args.M is None:
        raise ValueError("--m and --M must be given together")
    return SpectralWindow(args.m, args.M)


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def _emit(args, payload: dict, verdict_dicts: list[dict], text_lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(canonical_json(payload))
    elif args.format == "csv":
        sys.stdout.write(verdicts_csv(verdict_dicts))
    else:
        for line in text_lines:
            print(line)


def _verdict_lines(vds: list[dict]) -> list[str]:
    lines = []
    for v in vds:
        status = "pass" if v["passed"] else "FAIL"
        regime = f" [{v['regime']}]" if v.get("regime") else ""
        lines.append(
            f"{v['check_id']}{regime}: {status}  lhs={_fmt(v['lhs'])}  rhs={_fmt(v['rhs'])}  "
            f"margin={v['margin']:.3e}"
        )
    return lines


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_constants(args) -> int:
    f = parse_function(args.f)
    w = SpectralWindow(args.m, args.M)
    spec = BoundSpec.from_function(f, w, args.q)
    regime = classify(spec, form=args.form)
    value = constant_Kf(f, w, args.q) if args.form == "ratio" else constant_Kf_diff(f, w, args.q)
    conds = [
        {"name": c.name, "slack": c.slack, "satisfied": c.satisfied, "marginal": c.marginal}
        for c in regime.conditions
    ]
    config = {"f": f.label(), "m": args.m, "M": args.M, "q": args.q, "form": args.form}
    payload = wrap_report(
        __version__, config, [], {"constant": value, "regime": regime.tag, "conditions": conds}
    )
    lines = [f"constant = {_fmt(value)}", f"regime   = {regime.tag}"] + [
        f"  {c['name']}: slack {c['slack']:+.3e}" + ("  (marginal)" if c["marginal"] else "")
        for c in conds
    ]
    _emit(args, payload, [], lines)
    return 0


def cmd_reproduce_remark(args) -> int:
    """Rebuild the two-bound comparison on A = diag(1.0, 1.1) with the
    balanced unit vector and the common logarithm: the q = 2 bound sits
    above log10<Ax,x> while twice the q = 8 bound sits below it, so
    neither bound dominates the other."""
    a = HermitianMatrix.diagonal([1.0, 1.1])
    x = UnitVector.balanced(2)
    inner = quad_form(a, x)
    lhs = quad_form(apply_function(eigh(a), Log(10.0)), x)
    mond = float(np.log10(inner))
    q2 = constant_Klog(10.0, 2.0) * inner**2
    q8 = constant_Klog(10.0, 8.0) * inner**8
    fields = {
        "inner_product": inner,
        "log_quad_form": lhs,
        "mond_pecaric_bound": mond,
        "q2_bound": q2,
        "q8_bound": q8,
        "q2_exceeds_mond_pecaric": bool(q2 > mond),
        "twice_q8_below_mond_pecaric": bool(2.0 * q8 < mond),
    }
    fields["no_ordering"] = bool(fields["q2_exceeds_mond_pecaric"] and fields["twice_q8_below_mond_pecaric"])
    payload = wrap_report(__version__, {"command": "reproduce-remark"}, [], fields)
    lines = [
        f"inner_product               = {_fmt(inner)}",
        f"log10 quadratic form (lhs)  = {_fmt(lhs)}",
        f"mond_pecaric_bound          = {_fmt(mond)}",
        f"q2_bound                    = {_fmt(q2)}",
        f"q8_bound                    = {_fmt(q8)}",
        f"q2_bound > mond_pecaric_bound:      {fields['q2_exceeds_mond_pecaric']}",
        f"2*q8_bound < mond_pecaric_bound:    {fields['twice_q8_below_mond_pecaric']}",
        f"no ordering between the two bounds: {fields['no_ordering']}",
    ]
    _emit(args, payload, [], lines)
    return 0 if fields["no_ordering"] else 1


def cmd_certify(args) -> int:
    f = parse_function(args.f)
    w = SpectralWindow(args.m, args.M)
    cert = check_s_convex(f, w, args.s, args.nx, args.nl)
    config = {"f": f.label(), "m": args.m, "M": args.M, "s": args.s, "nx": args.nx, "nl": args.nl}
    summary = {
        "status": cert.status,
        "max_violation": cert.max_violation,
        "witness": list(cert.witness) if cert.witness else None,
        "lambda_points": cert.lambda_points,
    }
    payload = wrap_report(__version__, config, [], summary)
    lines = [f"status        = {cert.status}", f"max_violation = {cert.max_violation:.6e}"]
    if cert.witness:
        wx, wy, wl = cert.witness
        lines.append(f"witness       = (x={_fmt(wx)}, y={_fmt(wy)}, lambda={_fmt(wl)})")
    _emit(args, payload, [], lines)
    return 0 if cert.certified else 1


def cmd_theta(args) -> int:
    w = SpectralWindow(args.m, args.M)
    est = theta_log(w, args.eps, args.nx, args.nl)
    config = {"m": args.m, "M": args.M, "eps": args.eps, "nx": args.nx, "nl": args.nl}
    summary = {"theta": est.theta, "case_one": est.case_one, "case_two": est.case_two,
               "alpha_floor": est.alpha_floor}
    payload = wrap_report(__version__, config, [], summary)
    _emit(args, payload, [], [f"theta = {_fmt(est.theta)}  (case one {_fmt(est.case_one)}, "
                              f"case two {_fmt(est.case_two)}, alpha floor {est.alpha_floor:g})"])
    return 0


def cmd_verify(args) -> int:
    a = _load_matrix(args.A)
    window = _window_from_args(args)
    x = _load_vector(args.x) if args.x else UnitVector.balanced(a.order)

    def need(name):
        if getattr(args, name) is None:
            raise ValueError(f"--{name} is required for --check {args.check}")
        return getattr(args, name)

    if args.check == "jensen":
        verdicts = [verify_jensen(parse_function(need("f")), need("s"), a, x, window=window)]
    elif args.check == "ratio":
        verdicts = [verify_ratio(parse_function(need("f")), need("s"), need("q"), a, x, window=window)]
    elif args.check == "diff":
        verdicts = [verify_diff(parse_function(need("f")), need("s"), need("q"), a, x, window=window)]
    elif args.check == "holder":
        verdicts = [verify_holder_mccarthy(a, need("q"), need("s"), x)]
    elif args.check == "order":
        b = _load_matrix(need("B"))
        verdicts = verify_operator_order(a, b, need("p"), need("q"), need("s"), window=window)
    else:  # classical
        verdicts = [verify_classical_kantorovich(a, x)]

    vds = [verdict_dict(v) for v in verdicts]
    all_passed = all(v["passed"] for v in vds)
    config = {"command": "verify", "check": args.check, "A": args.A, "B": args.B, "x": args.x,
              "p": args.p, "q": args.q, "s": args.s, "f": args.f, "m": args.m, "M": args.M}
    payload = wrap_report(__version__, config, vds, {"all_passed": all_passed})
    _emit(args, payload, vds, _verdict_lines(vds))
    return 0 if all_passed else 1


def cmd_fuzz(args) -> int:
    seed = int(os.environ.get("KAUDIT_SEED", args.seed))
    checks = tuple(args.check) if args.check else DEFAULT_CHECKS
    cfg = FuzzConfig(
        seed=seed,
        instances=args.instances,
        checks=checks,
        n_range=(args.n_min, args.n_max),
        threads=args.threads,
        pad_factor=args.pad,
    )
    rep = fuzz_campaign(cfg)
    payload = wrap_report(__version__, rep.config, rep.verdicts, {**rep.summary, "per_check": rep.checks})
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(canonical_json(payload))
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(verdicts_csv(rep.verdicts))
    lines = []
    for check, statsd in rep.checks.items():
        worst = statsd["worst"]["margin"] if statsd["worst"] else float("nan")
        lines.append(
            f"{check:12s} attempted={statsd['attempted']:5d} passed={statsd['passed']:5d} "
            f"failed={statsd['failed']:3d} errors={statsd['errors']:3d} worst_margin={worst:.3e}"
        )
    lines.append(f"all_passed = {rep.summary['all_passed']}")
    _emit(args, payload, rep.verdicts, lines)
    return 0 if rep.summary["all_passed"] else 1


def cmd_feasible(args) -> int:
    interval = feasible_M_for_power(args.p, args.q, variant=args.variant)
    config = {"p": args.p, "q": args.q, "variant": args.variant}
    summary = {
        "lo": interval.lo,
        "hi": interval.hi,
        "unbounded": interval.unbounded,
        "empty": interval.empty,
    }
    payload = wrap_report(__version__, config, [], summary)
    if interval.empty:
        text = "feasible M interval: empty"
    elif interval.unbounded:
        text = f"feasible M interval: [{interval.lo:.10g}, unbounded)"
    else:
        text = f"feasible M interval: [{interval.lo:.10g}, {interval.hi:.10g}]"
    _emit(args, payload, [], [text])
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kaudit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"kaudit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("constants", help="ratio/difference constants with regime and slacks")
    p.add_argument("--f", required=True, help="pow:<r> or log:<base>")
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--M", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--form", choices=("ratio", "diff"), default="ratio")
    add_format(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("certify", help="grid s-convexity certificate")
    p.add_argument("--f", required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--M", type=float, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--nx", type=int, default=201)
    p.add_argument("--nl", type=int, default=201)
    add_format(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("theta", help="log-window exponent estimate over a window")
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--M", type=float, required=True)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--nx", type=int, default=201)
    p.add_argument("--nl", type=int, default=201)
    add_format(p)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("verify", help="run one checker on matrices from JSON files")
    p.add_argument("--check", required=True,
                   choices=("jensen", "ratio", "diff", "holder", "order", "classical"))
    p.add_argument("--A", required=True, help='matrix JSON {"n": int, "rows": [[...]]}')
    p.add_argument("--B", help="second matrix (order check)")
    p.add_argument("--x", help='vector JSON {"components": [...]}; default balanced')
    p.add_argument("--f", help="pow:<r> or log:<base>")
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--m", type=float, help="declared window lower endpoint")
    p.add_argument("--M", type=float, help="declared window upper endpoint")
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="seeded fuzz campaign over the checkers")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, required=True)
    p.add_argument("--check", action="append", choices=sorted(DEFAULT_CHECKS),
                   help="repeatable; default all checks")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--pad", type=float, default=0.0, help="declared-window padding factor")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--csv", help="write one CSV row per verdict here")
    add_format(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("feasible", help="feasible window ratios M/m for power conditions (m=1)")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--variant", choices=("ratio", "diff"), default="ratio")
    add_format(p)
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("reproduce-remark", help="rebuild the two-bound comparison example")
    add_format(p)
    p.set_defaults(func=cmd_reproduce_remark)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except REGIME_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        regime = getattr(exc, "regime", None)
        if regime is not None:
            for c in regime.failed_conditions:
                print(f"  failed: {c.name} (slack {c.slack:+.3e})", file=sys.stderr)
        return 3
    except USAGE_ERRORS as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
