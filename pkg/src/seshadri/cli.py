"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 non-ample bundle.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .closedform import (
    DEFAULT_DELTA,
    Genus,
    Kind,
    PointClass,
    SeshadriEstimate,
    delta_feasibility,
    epsilon_at_point,
    epsilon_min,
    epsilon_one,
    max_feasible_delta,
)
from .errors import DomainError, NotAmpleError
from .exactnum import ExactValue, make_surd, to_decimal
from .numlattice import DivisorClass, fibre_classes, intersect, is_ample, self_intersection, surface_params
from .oracle import DEFAULT_SCAN_LIMIT, cross_check_region
from .pell import ExcSet, compare_bounds, exc_fraction_count, pell_fundamental

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NOT_AMPLE = 0, 1, 2, 3


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no whitespace, UTF-8."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def fmt(v, digits: int) -> str:
    v = v if isinstance(v, ExactValue) else ExactValue(Fraction(v))
    if v.is_rational and v.q.denominator == 1:
        return str(v.q)
    return f"{v.render()} ≈ {to_decimal(v, digits)}"


def _scan_limit_default() -> int:
    raw = os.environ.get("SESHADRI_SCAN_LIMIT")
    if not raw:
        return DEFAULT_SCAN_LIMIT
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SCAN_LIMIT


def _bundle(text: str) -> DivisorClass:
    try:
        return DivisorClass.parse(text)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from None


def _describe(name: str, est: SeshadriEstimate, digits: int) -> str:
    if est.kind is Kind.EXACT:
        return f"{name} = {fmt(est.value, digits)} ({est.provenance}), branch: {est.branch}"
    parts = []
    if est.kind is Kind.CERTIFIED_RATIONAL:
        parts.append(f"{name} is rational (value not determined)")
    elif est.kind is Kind.UNKNOWN_WITH_BOUND:
        parts.append(f"{name} unknown")
    if est.lower is not None:
        parts.append(f"lower = {fmt(est.lower, digits)}")
    if est.upper is not None:
        parts.append(f"upper = {fmt(est.upper, digits)}")
    parts.append(f"branch: {est.branch}")
    return ", ".join(parts) + f" ({est.provenance})"


def _emit_estimate(args, name: str, est: SeshadriEstimate) -> int:
    if args.json:
        out = {"type": args.type, "L": [args.L.a, args.L.b], "estimate": est.to_json()}
        print(dumps(out))
    else:
        print(_describe(name, est, args.digits))
    return EXIT_OK


# --- subcommands --------------------------------------------------------------


def cmd_classify(args) -> int:
    S, L = surface_params(args.type), args.L
    A, B = fibre_classes(S)
    info = {
        "type": S.type_id,
        "group": S.group_name,
        "gamma": S.gamma,
        "mu": S.mu,
        "sing_mults": list(S.sing_mults),
        "L": [L.a, L.b],
        "ample": is_ample(L),
        "L2": self_intersection(L),
        "A": [A.a, A.b],
        "B": [B.a, B.b],
        "L.A": intersect(L, A),
        "L.B": intersect(L, B),
    }
    if args.json:
        print(dumps(info))
    else:
        print(f"type {S.type_id} (G = {S.group_name}, gamma = {S.gamma}, mu = {S.mu}, singular fibres {list(S.sing_mults)})")
        print(f"L = {L}: ample = {info['ample']}, L^2 = {info['L2']}")
        print(f"A = {A}, B = {B}, L.A = {info['L.A']}, L.B = {info['L.B']}")
    if not info["ample"]:
        print(f"error: line bundle {L} is not ample", file=sys.stderr)
        return EXIT_NOT_AMPLE
    return EXIT_OK


def cmd_epsilon(args) -> int:
    return _emit_estimate(args, "ε(L)", epsilon_min(surface_params(args.type), args.L))


def cmd_epsilon1(args) -> int:
    return _emit_estimate(args, "ε(L,1)", epsilon_one(surface_params(args.type), args.L, args.delta))


def cmd_point(args) -> int:
    if args.fibre_mult is not None:
        x = PointClass.on_singular_fibre(args.fibre_mult)
    elif args.very_general:
        x = PointClass.very_general()
    else:
        x = PointClass.arbitrary()
    est = epsilon_at_point(surface_params(args.type), args.L, x, args.delta)
    return _emit_estimate(args, f"ε(L,x) [x {x}]", est)


def cmd_pell(args) -> int:
    if args.compare:
        if args.type is None or args.L is None:
            raise DomainError("pell --compare needs --type and -L")
        rec = compare_bounds(surface_params(args.type), args.L)
        if args.json:
            print(dumps({"type": args.type, "L": [args.L.a, args.L.b], **rec.to_json()}))
            return EXIT_OK
        print(f"d = L^2 = {rec.d}")
        print(f"our bound ({rec.our_kind}): {fmt(rec.our_bound, args.digits)}")
        if not rec.pell_applicable:
            print("Pell bound not applicable: L^2 is a perfect square")
            return EXIT_OK
        print(f"Pell solution (p, q) = ({rec.solution.p}, {rec.solution.q}); bound p·d/q = {fmt(rec.pell_bound, args.digits)}")
        print(f"larger bound: {rec.which_larger}")
        frac = rec.exc_reduced_fraction_count
        print(f"exceptional set: {rec.exc_integer_count} integers + "
              f"{'too many to count' if frac is None else frac} reduced fractions")
        return EXIT_OK
    if args.d is None:
        raise DomainError("pell needs --d or --compare")
    sol = pell_fundamental(args.d)
    E = ExcSet(args.d, sol.p, sol.q)
    count = exc_fraction_count(E)
    if args.json:
        print(dumps({
            "d": args.d,
            "p": sol.p,
            "q": sol.q,
            "bound": ExactValue(E.bound).to_json(),
            "exc_integer_count": len(E.integer_part),
            "exc_reduced_fraction_count": count,
        }))
        return EXIT_OK
    print(f"fundamental solution of y^2 - {args.d} x^2 = 1: x = p = {sol.p}, y = q = {sol.q}")
    print(f"Pell bound p·d/q = {fmt(E.bound, args.digits)}")
    print(f"exceptional set: {len(E.integer_part)} integers + "
          f"{'too many to count' if count is None else count} reduced fractions")
    return EXIT_OK


def cmd_verify(args) -> int:
    S = surface_params(args.type)
    cells = cross_check_region(S, args.amax, args.bmax, args.M, workers=args.workers)
    passed = sum(c.verdict == "PASS" for c in cells)
    if args.json:
        for c in cells:
            print(c.to_json_line())
    else:
        for c in cells:
            if c.verdict != "PASS":
                bad = [f"{ch.query}@{ch.point}" for ch in c.checks if not ch.ok]
                print(f"FAIL L = {c.L}: {', '.join(bad)}")
    summary = f"{passed}/{len(cells)} PASS"
    print(summary, file=sys.stderr if args.json else sys.stdout)
    return EXIT_OK if passed == len(cells) else EXIT_FAIL


TABLE_FIELDS = ["type", "a", "b", "eps_kind", "eps_branch", "eps1_kind", "eps1_branch"]


def cmd_table(args) -> int:
    S = surface_params(args.type)
    rows = []
    for a in range(1, args.amax + 1):
        for b in range(1, args.bmax + 1):
            L = DivisorClass(a, b)
            e, e1 = epsilon_min(S, L), epsilon_one(S, L, args.delta)
            rows.append({
                "type": S.type_id, "a": a, "b": b,
                "eps_kind": e.kind.value, "eps_branch": e.branch,
                "eps1_kind": e1.kind.value, "eps1_branch": e1.branch,
            })
    if args.format == "json":
        for r in rows:
            print(dumps(r))
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_delta(args) -> int:
    constraint = Genus(args.constraint)
    feasible, bad = delta_feasibility(args.value, constraint)
    sup2, m = max_feasible_delta(constraint)
    if args.json:
        print(dumps({
            "delta": str(args.value),
            "constraint": constraint.value,
            "feasible": feasible,
            "violating_m": bad,
            "sup_delta_squared": str(sup2),
            "critical_m": m,
        }))
        return EXIT_OK
    label = "very general point" if constraint is Genus.VERY_GENERAL else "arbitrary point"
    print(f"delta = {args.value} ({label}): {'feasible' if feasible else 'infeasible'}")
    if bad:
        shown = bad if len(bad) <= 12 else f"{bad[0]}..{bad[-1]} ({len(bad)} values)"
        print(f"violating m: {shown}")
    print(f"sup delta^2 = {sup2} (attained at m = {m}); sup delta ≈ {to_decimal(make_surd(Fraction(1, sup2.denominator), sup2.numerator * sup2.denominator), args.digits)}")
    return EXIT_OK


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--digits", type=int, default=6, help="decimal digits in approximations")

    def typed(p, required=True):
        p.add_argument("--type", type=int, choices=range(1, 8), required=required, metavar="T")

    def bundle(p, required=True):
        p.add_argument("-L", type=_bundle, required=required, metavar="a,b")

    def delta(p):
        p.add_argument("--delta", type=_fraction, default=DEFAULT_DELTA, metavar="p/q")

    parser = argparse.ArgumentParser(prog="seshadri", description="Seshadri constants on hyperelliptic surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="ampleness, L^2 and fibre intersections")
    typed(p), bundle(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("epsilon", parents=[common], help="least Seshadri constant eps(L)")
    typed(p), bundle(p)
    p.set_defaults(func=cmd_epsilon)

    p = sub.add_parser("epsilon1", parents=[common], help="Seshadri constant at a very general point")
    typed(p), bundle(p), delta(p)
    p.set_defaults(func=cmd_epsilon1)

    p = sub.add_parser("point", parents=[common], help="Seshadri constant at a class of points")
    typed(p), bundle(p), delta(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--fibre-mult", type=int, metavar="n", help="point on a singular Psi-fibre of multiplicity n")
    g.add_argument("--very-general", action="store_true")
    g.add_argument("--arbitrary", action="store_true", help="worst point (default)")
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("pell", parents=[common], help="Pell solution and bound comparison")
    p.add_argument("--d", type=int)
    typed(p, required=False), bundle(p, required=False)
    p.add_argument("--compare", action="store_true")
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("verify", parents=[common], help="cross-check closed forms against the oracle")
    typed(p)
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--bmax", type=int, required=True)
    p.add_argument("-M", type=int, default=_scan_limit_default(), help="scan limit (env SESHADRI_SCAN_LIMIT)")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="which branch fires on an (a,b) grid")
    typed(p), delta(p)
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--bmax", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("delta", parents=[common], help="admissibility of the constant delta")
    p.add_argument("--value", type=_fraction, required=True, metavar="p/q")
    p.add_argument("--constraint", choices=("vg", "g"), default="vg")
    p.set_defaults(func=cmd_delta)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except NotAmpleError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_AMPLE
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
