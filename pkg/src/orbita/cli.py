"""Command-line entry point.

Subcommands:
    list-cases
    verify <case-id> --q <q> [--json <path>] [--budget <n>] [--threads <n>]
    orbits <case-id> --q <q> [--json <path>] [--budget <n>]
    identities --family <F4|PGL2|quadric> --q-list <q1,q2,...>
    spinor eval <expr> [--q <q>]

Exit status is 0 exactly when every requested check passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .cases import build_case, list_cases
from .field import GF
from .scan import orbit_partition
from .verify import counting_identities, run_case


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="orbita",
        description="Exact orbit and identity verification for module "
                    "actions of classical groups over small finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list-cases", help="list registered module cases")

    for name in ("verify", "orbits"):
        sp = sub.add_parser(name)
        sp.add_argument("case_id")
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--json", type=Path, default=None)
        sp.add_argument("--budget", type=int, default=2 ** 32)
        sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("identities")
    sp.add_argument("--family", required=True,
                    choices=("F4", "PGL2", "quadric"))
    sp.add_argument("--q-list", required=True,
                    help="comma-separated prime powers")

    sp = sub.add_parser("spinor")
    sp.add_argument("action", choices=("eval",))
    sp.add_argument("expr")
    sp.add_argument("--q", type=int, default=2)
    return ap


def _cmd_list_cases() -> int:
    for info in list_cases():
        print(f"{info.id:16s} dim {info.dim:4s} {info.group:18s} "
              f"({info.constraints})")
    return 0


def _cmd_verify(args) -> int:
    report = run_case(args.case_id, args.q, budget=args.budget,
                      threads=args.threads)
    print(report.to_text())
    if args.json:
        args.json.write_text(json.dumps(report.to_json_dict(), indent=1,
                                        sort_keys=True) + "\n")
    return 0 if report.passed else 1


def _cmd_orbits(args) -> int:
    case = build_case(args.case_id, args.q)
    report = orbit_partition(case, budget=args.budget)
    print(report.to_text())
    if args.json:
        args.json.write_text(json.dumps(report.to_json_dict(), indent=1,
                                        sort_keys=True) + "\n")
    return 0


def _cmd_identities(args) -> int:
    status = 0
    for tok in args.q_list.split(","):
        report = counting_identities(args.family, int(tok))
        print(report.to_text())
        if not report.passed:
            status = 1
    return status


def _cmd_spinor(args) -> int:
    from .spinor import (as_spinor, format_clifford, parse_clifford,
                         spin_quadratic)
    F = GF(args.q)
    x = parse_clifford(F, args.expr)
    print(format_clifford(x))
    sp = as_spinor(x)
    if sp is not None and F.p == 2:
        print(f"Q_X = {spin_quadratic(sp)}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "list-cases":
            return _cmd_list_cases()
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "orbits":
            return _cmd_orbits(args)
        if args.command == "identities":
            return _cmd_identities(args)
        if args.command == "spinor":
            return _cmd_spinor(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
