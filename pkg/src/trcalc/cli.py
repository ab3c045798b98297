"""Command line entry point: trcalc <command> ..."""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .algebra import AbelianGroup
from .cyclic import Coefficients, table
from .errors import CertificateFailure, OutOfImplementedRange, TruncationTooSmall, UnknownAction, UnknownFixture
from .spectral.compare import compare_fixture, fixture_for
from .spectral.pages import compute_page
from .tr.laurent import LAURENT_OPERATORS, LaurentElement, dumps
from .tr.operators import OPERATORS, apply
from .tr.presentations import ETA2XI11_CHOICES, Theory, Unknown, group_of, parse_element
from .tr.towers import kernel_one_minus_F
from .whitehead import RunConfig, compute_wh


def _emit(data, fmt: str, markdown: str | None = None):
    if fmt == "markdown" and markdown is not None:
        print(markdown)
    else:
        print(json.dumps(data, indent=2))


# ------------------------------------------------------------------ homology

def cmd_homology(args) -> int:
    coeffs = Coefficients.parse(args.coeff)
    rows = table(args.p, args.n, coeffs, args.smax)
    lines = [f"H_s(C_{args.p ** (args.n - 1)}; {coeffs.describe()})", "",
             "| s | group | generator | F | V |", "|---|---|---|---|---|"]
    for row in rows:
        group = AbelianGroup.from_json(row["group"]).describe()
        lines.append(f"| {row['s']} | {group} | {row['generator']} | {row.get('F', '-')} | {row['V']} |")
    _emit({"p": args.p, "n": args.n, "coefficients": args.coeff, "rows": rows}, args.format, "\n".join(lines))
    return 0


# ------------------------------------------------------------------ tr

def _theory(args) -> Theory:
    return Theory.parse(args.theory, u=args.u, eta2xi11=args.eta2xi11)


def cmd_tr_group(args) -> int:
    group = group_of(_theory(args), args.q, args.n)
    _emit(group.to_json(), args.format, f"TR_{args.q}^{args.n}({args.theory}; 2) = {group.describe()}\n"
          + "\n".join(f"- {g}" for g in group.generators))
    return 0


def cmd_tr_apply(args) -> int:
    x = parse_element(_theory(args), args.n, args.elem)
    outcome = apply(args.op, x)
    if isinstance(outcome, Unknown):
        _emit({"op": args.op, "input": str(x), "unknown": outcome.reason}, args.format,
              f"{args.op}({x}) is undetermined: {outcome.reason}")
        return 2
    y = outcome.value
    _emit({"op": args.op, "input": str(x), "q": y.q, "n": y.n, "result": y.to_json()}, args.format,
          f"{args.op}({x}) = {y}")
    return 0


def cmd_tr_laurent(args) -> int:
    with open(args.infile) as fh:
        data = json.load(fh)
    theory = Theory.parse(data.get("theory", args.theory), u=args.u, eta2xi11=args.eta2xi11)
    omega = LaurentElement.from_json(data, theory)
    result = LAURENT_OPERATORS[args.laurent_op](omega)
    if args.format == "markdown":
        print(f"{args.laurent_op}({omega}) = {result}")
    else:
        print(dumps(result))
    return 0


def cmd_tr_kernel(args) -> int:
    report = kernel_one_minus_F(Theory("relative", args.u, args.eta2xi11), args.q, args.levels, args.jmax)
    data = {"q": args.q, "truncation": {"N": args.levels, "J": args.jmax}, "r_max": report.r_max,
            "group": report.group.to_json(),
            "coordinates": [{"family": f, "r": r, "j": j} for f, r, j in report.coordinates]}
    lines = [f"ker(1 - F) in degree {args.q} at N = {args.levels}, J = {args.jmax}: "
             f"{report.group.describe()}"]
    lines += [f"- {f}_{{{r},{j}}}" for f, r, j in report.coordinates]
    _emit(data, args.format, "\n".join(lines))
    return 0


# ------------------------------------------------------------------ ss

def _entry(group) -> str:
    if group.is_trivial():
        return "0"
    return " + ".join(["Z_2"] * group.free_rank + [f"Z/{d}" for d in group.torsion])


def page_markdown(page) -> str:
    width = page.t_max + 1
    lines = [f"E^{page.r} for {page.theory}, n = {page.n}, s + t <= {page.t_max}", "",
             "| t \\ s | " + " | ".join(str(s) for s in range(width)) + " |",
             "|---" * (width + 1) + "|"]
    for t in range(page.t_max, -1, -1):
        row = [_entry(page.cells[(s, t)]) if (s, t) in page.cells else "" for s in range(width)]
        lines.append(f"| {t} | " + " | ".join(row) + " |")
    lines += ["", f"differential: {page.rule}"]
    return "\n".join(lines)


def page_json(page) -> dict:
    return {"theory": page.theory, "n": page.n, "page": page.r, "t_max": page.t_max,
            "cells": [{"s": s, "t": t, "group": g.to_json()} for (s, t), g in sorted(page.cells.items())],
            "differentials": [{"s": s, "t": t, "target": list(page.target(s, t)), "matrix": d.matrix}
                              for (s, t), d in sorted(page.differentials.items()) if not d.is_zero()]}


def cmd_ss(args) -> int:
    page = compute_page(args.theory, args.n, args.page, args.tmax, args.max_page)
    status = 0
    report = None
    if args.compare:
        report = compare_fixture(page, fixture_for(args.theory, args.n, args.page))
        status = 0 if report.ok else 1
    if args.format == "markdown":
        print(page_markdown(page))
        if report:
            print("\n" + report.summary())
    else:
        data = page_json(page)
        if report:
            data["comparison"] = report.to_json()
        print(json.dumps(data, indent=2))
    return status


# ------------------------------------------------------------------ wh / verify-all

def cmd_wh(args) -> int:
    cfg = RunConfig(args.levels, args.jmax, args.u, args.format, args.eta2xi11)
    print(compute_wh(args.q, cfg).render(cfg.format))
    return 0


def cmd_verify_all(args) -> int:
    results = checks.verify_all(quick=args.quick)
    if args.format == "json":
        print(json.dumps([r.to_json() for r in results], indent=2))
    else:
        for r in results:
            print(r.line())
    return 0 if all(r.ok for r in results) else 1


# ------------------------------------------------------------------ parser

def _add_theory_options(p, default_theory=None):
    if default_theory is None:
        p.add_argument("--theory", required=True, help="sphere, integers or relative")
    else:
        p.add_argument("--theory", default=default_theory)
    p.add_argument("--u", type=int, default=1, help="odd unit in the integer relations")
    p.add_argument("--eta2xi11", choices=ETA2XI11_CHOICES, default=None,
                   help="value chosen for eta^2 xi_{1,1} in the sphere theory")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["json", "markdown"], default=None)
    parser = argparse.ArgumentParser(prog="trcalc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", parents=[fmt], help="group homology of a cyclic p-group")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coeff", default="Z", help="Z or Zmod:R")
    p.add_argument("--smax", type=int, default=10)
    p.set_defaults(func=cmd_homology, default_format="markdown")

    tr = sub.add_parser("tr", help="TR groups and operators")
    trsub = tr.add_subparsers(dest="tr_command", required=True)
    p = trsub.add_parser("group", parents=[fmt])
    _add_theory_options(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_tr_group, default_format="markdown")
    p = trsub.add_parser("apply", parents=[fmt])
    _add_theory_options(p)
    p.add_argument("--op", choices=OPERATORS, required=True)
    p.add_argument("--elem", required=True, help="e.g. '3 V^2(eta~) - xi_{1,2}'")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_tr_apply, default_format="markdown")
    p = trsub.add_parser("laurent", parents=[fmt])
    p.add_argument("laurent_op", choices=sorted(LAURENT_OPERATORS))
    p.add_argument("--in", dest="infile", required=True, help="JSON file with a Laurent element")
    _add_theory_options(p, default_theory="sphere")
    p.set_defaults(func=cmd_tr_laurent, default_format="json")
    p = trsub.add_parser("kernel", parents=[fmt])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--levels", type=int, default=8)
    p.add_argument("--jmax", type=int, default=9)
    p.add_argument("--u", type=int, default=1)
    p.add_argument("--eta2xi11", choices=ETA2XI11_CHOICES, default=None)
    p.set_defaults(func=cmd_tr_kernel, default_format="markdown")

    p = sub.add_parser("ss", parents=[fmt], help="skeleton spectral sequence pages")
    p.add_argument("--theory", required=True, choices=["sphere", "integers", "relative"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--page", default="2", help="2..6 or inf")
    p.add_argument("--tmax", type=int, default=None)
    p.add_argument("--max-page", type=int, default=6)
    p.add_argument("--compare", action="store_true", help="compare against the shipped table")
    p.set_defaults(func=cmd_ss, default_format="markdown")

    p = sub.add_parser("wh", parents=[fmt], help="Whitehead groups of the circle")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--levels", type=int, default=8)
    p.add_argument("--jmax", type=int, default=9)
    p.add_argument("--u", type=int, default=1)
    p.add_argument("--eta2xi11", choices=ETA2XI11_CHOICES, default=ETA2XI11_CHOICES[0])
    p.set_defaults(func=cmd_wh, default_format="json")

    p = sub.add_parser("verify-all", parents=[fmt], help="run every acceptance check")
    p.add_argument("--quick", action="store_true", help="smaller Whitehead truncation")
    p.set_defaults(func=cmd_verify_all, default_format="markdown")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = args.format or args.default_format
    if args.command == "ss" and args.page not in ("inf", "infinity"):
        args.page = int(args.page)
    try:
        return args.func(args)
    except (TruncationTooSmall, OutOfImplementedRange, UnknownAction, UnknownFixture, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CertificateFailure as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
