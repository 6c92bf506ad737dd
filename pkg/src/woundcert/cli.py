"""Command-line front end.

Subcommands: analyze, cokernel, oracle, frattini, edim, fieldinfo.
Human-readable text by default, machine JSON with --json (stable key
order).  Exit codes: 0 success, 1 input error, 2 hypothesis not satisfied,
3 inconclusive verdict.  Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .addpoly import AdditivePoly
from .cokernel import (
    CokernelCertificate,
    certify_infinite_cokernel,
    dk_decompose,
    oracle_image_contains,
)
from .edim import (
    EdBoundReport,
    FieldContext,
    PGroupProfile,
    UnipotentProfile,
    bound,
)
from .errors import HypothesisUnverified, ToolkitError
from .fields import Tower
from .parsing import parse_element
from .pgroup import (
    FiniteGroup,
    elementary_bound,
    frattini,
    jly_bound,
    ledet_bound,
    pgl2_lower_bound,
)
from .valuation import index_equality, standard_basis

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HYPOTHESIS = 2
EXIT_INCONCLUSIVE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _emit_json(data: dict) -> None:
    sys.stdout.write(json.dumps(data, indent=2) + "\n")


def _load_poly(path: str) -> AdditivePoly:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return AdditivePoly.from_json_dict(data)


def cmd_analyze(args) -> int:
    P = _load_poly(args.file)
    pp = P.principal_part()
    disjoint = P.progressions_disjoint()
    d = pp.max_exponent()
    m = P.tower.depth
    p = P.tower.p
    tops = P.variable_degree_exponents()
    s = sum(p ** (m * (d - tops[v])) for v in tops) if d > 0 else None
    info = {
        "p": p,
        "tower": list(P.tower.vars),
        "vars": list(P.vars),
        "separable": P.is_separable(),
        "principal_part": [
            {"var": P.vars[t.var], "pexp": t.pexp, "coeff": str(t.coeff)}
            for t in pp.entries
        ],
        "degree_exponent": d,
        "progressions_disjoint": disjoint,
        "wound_witnessed": disjoint,
        "s": s,
        "capacity": p ** (m * d) if d > 0 else None,
    }
    if args.json:
        _emit_json(info)
    else:
        print(f"additive polynomial over {P.tower!r} in {', '.join(P.vars)}")
        print(f"  separable:             {info['separable']}")
        print(f"  degree:                p^{d}")
        leading = ", ".join(
            f"({t['coeff']})*{t['var']}^p^{t['pexp']}" for t in info["principal_part"]
        )
        print(f"  principal part:        {leading}")
        print(f"  progressions disjoint: {disjoint}")
        print(f"  wound witnessed:       {disjoint}")
        if s is not None:
            print(f"  s = {s}, capacity p^(md) = {info['capacity']}")
    return EXIT_OK


def cmd_cokernel(args) -> int:
    P = _load_poly(args.file)
    cert = certify_infinite_cokernel(
        P, args.count, assert_nowhere_vanishing=args.assert_nowhere_vanishing
    )
    cert.check()
    if args.json:
        _emit_json(cert.to_json_dict())
    else:
        print(f"verdict: {cert.verdict}")
        print(f"  s = {cert.s}, capacity = {cert.capacity}")
        if cert.verdict == CokernelCertificate.INFINITE:
            print(f"  missing residue class: {cert.missing_residue}")
            print(f"  threshold c0 = {cert.c0}")
            print("  representatives:")
            for e in cert.representatives:
                print(f"    {e}")
        else:
            print(f"  boundary case: (p^m - 1) divides (r - 1), r = {cert.nvars}")
    if cert.verdict == CokernelCertificate.INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_oracle(args) -> int:
    P = _load_poly(args.file)
    target = parse_element(args.target, P.tower)
    result = oracle_image_contains(P, target, args.bound, jobs=args.jobs)
    if args.json:
        _emit_json(
            {
                "found": result.found,
                "witness": [str(e) for e in result.witness] if result.found else None,
                "bound": args.bound,
            }
        )
    else:
        if result.found:
            print("found witness:")
            for name, e in zip(P.vars, result.witness):
                print(f"  {name} = {e}")
        else:
            print(f"no preimage within exponent bound {args.bound}")
    return EXIT_OK


def cmd_frattini(args) -> int:
    G = FiniteGroup.from_spec(args.group)
    data = frattini(G)
    info = {
        "group": args.group,
        "p": G.p,
        "order": G.order,
        "n": G.n,
        "phi_order": data.phi_order,
        "e": data.e,
        "quotient_rank": data.quotient_rank,
        "oracle_checked": data.oracle_checked,
        "bounds": {
            "order_upper": ledet_bound(G),
            "frattini_upper_infinite": jly_bound(G, False),
            "frattini_upper_finite": jly_bound(G, True),
            "elementary_upper_infinite": elementary_bound(G, False),
            "elementary_upper_finite": elementary_bound(G, True),
            "pgl2_lower_over_prime_field": pgl2_lower_bound(G),
        },
    }
    if args.json:
        _emit_json(info)
    else:
        print(f"group {args.group}: order {G.order} = {G.p}^{G.n}")
        print(f"  Frattini subgroup order: {G.p}^{data.e} = {data.phi_order}")
        print(f"  elementary quotient rank: {data.quotient_rank}")
        print(f"  oracle cross-check ran: {data.oracle_checked}")
        for key, value in info["bounds"].items():
            print(f"  {key}: {value}")
    return EXIT_OK


def cmd_edim(args) -> int:
    ctx = FieldContext(
        finite=args.finite_field,
        geometric_over_perfect=args.geometric,
        tower=Tower(args.p, tuple(args.tower.split(","))) if args.tower else None,
    )
    if args.group:
        profile = PGroupProfile(FiniteGroup.from_spec(args.group))
    else:
        if args.dim is None:
            raise _UsageError("--dim is required for unipotent profiles")
        is_split = True if args.split else (False if args.not_split else None)
        profile = UnipotentProfile(
            dim=args.dim,
            split_part_dim=args.split_dim,
            component_order_exp=args.component_exp,
            cckp_length=args.cckp_length,
            is_split=is_split,
            is_wound_witnessed=args.wound_witnessed,
            char_zero=args.char_zero,
        )
    report = bound(profile, ctx)
    if args.json:
        _emit_json(report.to_json_dict())
    else:
        print(f"essential dimension in [{report.lower}, {report.upper}]"
              + (" (exact)" if report.exact else ""))
        for t in report.trail:
            print(f"  {t.rule} [{t.kind} {t.value}] {t.cite}")
    return EXIT_OK


def cmd_fieldinfo(args) -> int:
    tower = Tower(args.p, tuple(v for v in args.tower.split(",") if v))
    d = args.d
    basis = standard_basis(tower, d)
    idx = index_equality(tower, d)
    info = {
        "p": tower.p,
        "vars": list(tower.vars),
        "depth": tower.depth,
        "d": d,
        "field_index": idx.field_index,
        "group_index": idx.group_index,
        "standard_basis": [str(e) for e in basis.elements],
    }
    if args.json:
        _emit_json(info)
    else:
        print(f"{tower!r}: depth {tower.depth}")
        print(f"  [k : k^(p^{d})] = {idx.field_index}")
        print(f"  [G : p^{d} G]  = {idx.group_index}")
        print(f"  standard basis: {', '.join(info['standard_basis'])}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="woundcert", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("analyze", help="report structure of an additive polynomial")
    p.add_argument("file")
    add_json(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("cokernel", help="certify that k/P(k) is infinite")
    p.add_argument("file")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--assert-nowhere-vanishing", action="store_true")
    add_json(p)
    p.set_defaults(func=cmd_cokernel)

    p = sub.add_parser("oracle", help="bounded brute-force image membership")
    p.add_argument("file")
    p.add_argument("--target", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    add_json(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("frattini", help="Frattini data and p-group bounds")
    p.add_argument("--group", required=True)
    add_json(p)
    p.set_defaults(func=cmd_frattini)

    p = sub.add_parser("edim", help="essential dimension bound report")
    p.add_argument("--group", help="p-group spec (else unipotent profile flags)")
    p.add_argument("--dim", type=int)
    p.add_argument("--split-dim", type=int, default=0)
    p.add_argument("--component-exp", type=int, default=0)
    p.add_argument("--cckp-length", type=int)
    p.add_argument("--split", action="store_true")
    p.add_argument("--not-split", action="store_true")
    p.add_argument("--wound-witnessed", action="store_true")
    p.add_argument("--char-zero", action="store_true")
    p.add_argument("--finite-field", action="store_true")
    p.add_argument("--geometric", action="store_true")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--tower")
    add_json(p)
    p.set_defaults(func=cmd_edim)

    p = sub.add_parser("fieldinfo", help="tower field and value group summary")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--tower", default="")
    p.add_argument("--d", type=int, default=1)
    add_json(p)
    p.set_defaults(func=cmd_fieldinfo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisUnverified as exc:
        print(f"hypothesis not satisfied: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
