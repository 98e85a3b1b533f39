"""Command-line interface.

Exit codes: 0 all checks passed, 1 any mismatch or failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import load_entries
from .cyclotomic import choose_prime
from .diffranks import diff_profile, diff_rank
from .errors import QuinticError
from .groups import closure, fingerprint
from .invariants import DiagonalAction, invariant_subspace, semi_invariant_monomials
from .parsing import format_poly, parse_matrix_list, parse_poly
from .pipeline import Options, report_to_json, verify_all
from .smoothness import certify
from .stabilizers import f_lift_group, semiperm_stabilizer
from .sweeps import admissible_primary_orders, sweep_elementary_abelian, sweep_order25


def _read(path):
    return Path(path).read_text()


def _load_poly(path, nvars=None):
    text = _read(path).strip()
    if nvars is None:
        # infer the variable count from the highest index used
        nvars = max(
            (int(ch) for i, ch in enumerate(text) if ch.isdigit() and i and text[i - 1] == "x"),
            default=5,
        )
    return parse_poly(text, nvars)


def _cmd_verify_catalog(args):
    options = Options(
        max_primes=args.primes,
        cap=args.cap,
        with_semiperm=not args.no_semiperm,
        with_gorenstein=not args.no_gorenstein,
        timings=args.timings,
    )
    report = verify_all(options, only=args.example)
    text = report_to_json(report)
    if args.json:
        Path(args.json).write_text(text)
    for entry in report["entries"]:
        order = entry["groupOrder"]["found"]
        print(f"entry {entry['id']}: {entry['status']} (order {order})")
        for message in entry["messages"]:
            print(f"  - {message}")
    for sweep in report["sweeps"]:
        state = "PASS" if sweep["passed"] else "FAIL"
        print(f"sweep {sweep['name']}: {state} ({sweep['candidates']} candidates)")
    print(f"admissible primary orders: {'PASS' if report['admissiblePrimaryOrders']['passed'] else 'FAIL'}")
    print("PASSED" if report["passed"] else "FAILED")
    return 0 if report["passed"] else 1


def _cmd_invariants(args):
    if args.diag_weights:
        spec, _, modulus = args.diag_weights.partition("@")
        weights = [int(w) for w in spec.split(",")]
        action = DiagonalAction(int(modulus), weights)
        span = semi_invariant_monomials(action, args.degree, args.chi)
        print(f"{len(span)} monomials")
        for e in span:
            print(" ".join(str(k) for k in e))
        return 0
    gens = parse_matrix_list(_read(args.gens))
    basis = invariant_subspace(gens, args.degree)
    print(f"dimension {len(basis)}")
    for b in basis:
        print(format_poly(b))
    return 0


def _cmd_smooth(args):
    f = _load_poly(args.poly)
    verdict = certify(f, args.primes)
    print(json.dumps(verdict.as_dict(), indent=2, sort_keys=True))
    return 0


def _cmd_diffrank(args):
    f = _load_poly(args.poly)
    if args.order:
        print(diff_rank(f, args.order))
    else:
        print(" ".join(str(r) for r in diff_profile(f).ranks))
    return 0


def _cmd_stab(args):
    f = _load_poly(args.poly)
    group = semiperm_stabilizer(f, semi=not args.strict_invariance)
    print(f"order {group.order}")
    return 0


def _cmd_group(args):
    gens = parse_matrix_list(_read(args.gens))
    group = closure(gens, cap=args.cap)
    print(f"order {group.order}")
    if args.fingerprint:
        fp = fingerprint(group)
        print(json.dumps(
            {
                "order": str(fp.order),
                "isAbelian": fp.is_abelian,
                "exponent": str(fp.exponent),
                "elementOrderHistogram": {str(k): str(v) for k, v in sorted(fp.element_order_histogram.items())},
                "centerOrder": str(fp.center_order),
                "derivedSubgroupOrder": str(fp.derived_subgroup_order),
                "conjugacyClassCount": str(fp.conjugacy_class_count) if fp.conjugacy_class_count is not None else "skipped",
            },
            indent=2,
            sort_keys=True,
        ))
    return 0


def _cmd_lift(args):
    gens = parse_matrix_list(_read(args.gens))
    f = _load_poly(args.poly)
    group = closure(gens)
    lifted = f_lift_group(group, f)
    if lifted is None:
        print("not F-liftable")
        return 0
    print(f"F-lifting found with {len(lifted)} generators")
    return 0


def _cmd_sweep(args):
    if args.name == "order25":
        report = sweep_order25(reduced=args.reduced)
    elif args.name == "c2cubed":
        report = sweep_elementary_abelian(2)
    elif args.name == "c3cubed":
        report = sweep_elementary_abelian(3)
    else:
        raise QuinticError(f"unknown sweep {args.name}")
    print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    return 0 if report.passed else 1


def _cmd_orders(args):
    hits = admissible_primary_orders(args.dim, args.degree, args.bound)
    print(" ".join(str(q) for q in hits))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quinticverify",
        description="Exact verification of symmetry data for smooth quintic threefolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-catalog", help="verify the full catalog and sweeps")
    p.add_argument("--example", default=None, help="restrict to one entry id")
    p.add_argument("--primes", type=int, default=3)
    p.add_argument("--cap", type=int, default=200000)
    p.add_argument("--json", default=None, help="write the JSON report here")
    p.add_argument("--no-semiperm", action="store_true")
    p.add_argument("--no-gorenstein", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=_cmd_verify_catalog)

    p = sub.add_parser("invariants", help="joint invariant space or diagonal span")
    p.add_argument("--gens", default=None)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--diag-weights", default=None, help='"w1,..,wn@N"')
    p.add_argument("--chi", type=int, default=0)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("smooth", help="smoothness certification for a polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--primes", type=int, default=3)
    p.set_defaults(func=_cmd_smooth)

    p = sub.add_parser("diffrank", help="differential-method ranks")
    p.add_argument("--poly", required=True)
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=_cmd_diffrank)

    p = sub.add_parser("stab", help="semi-permutation stabilizer of a polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--strict-invariance", action="store_true")
    p.set_defaults(func=_cmd_stab)

    p = sub.add_parser("group", help="closure and fingerprint of a matrix list")
    p.add_argument("--gens", required=True)
    p.add_argument("--cap", type=int, default=200000)
    p.add_argument("--fingerprint", action="store_true")
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser("lift", help="decide F-liftability of a matrix group")
    p.add_argument("--gens", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("sweep", help="run a finite exclusion sweep")
    p.add_argument("--name", required=True, choices=["order25", "c2cubed", "c3cubed"])
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility")
    p.add_argument("--reduced", action="store_true", help="sorted-weight reduction")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("orders", help="admissible primary automorphism orders")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=_cmd_orders)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, QuinticError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
