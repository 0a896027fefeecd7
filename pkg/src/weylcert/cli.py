"""Command-line interface: ``weylcert {info,weights,certify,verify-paper,scan}``."""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from typing import Any, Sequence

from . import claims as claims_mod
from .criteria import check_nosm, scan
from .errors import WeylcertError
from .excision import parse_weight_list
from .rootsys import FAMILIES, boundary_subset, build_root_system, parse_weight, pc_family
from .weightset import weight_system
from .weyl import orbit

log = logging.getLogger("weylcert")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _indices(rs, roots) -> list[int]:
    return sorted(rs.simple_roots.index(a) + 1 for a in roots)


def cmd_info(args) -> int:
    rs = build_root_system(args.family, args.rank)
    info = {
        "family": rs.family,
        "rank": rs.rank,
        "roots": len(rs.roots),
        "positive_roots": len(rs.positive_roots),
        "weyl_order": rs.weyl_order,
        "pq_index": rs.pq_index,
        "simple_roots": [str(a) for a in rs.simple_roots],
        "fundamental_weights": [str(p) for p in rs.fundamental_weights],
        "boundary": _indices(rs, boundary_subset(rs.simple_system())),
        "pc_family": [_indices(rs, m.roots) for m in pc_family(rs)] if rs.rank > 2 else [],
    }
    if args.json:
        print(_dump(info))
        return EXIT_OK
    print(f"{rs.label}: |roots|={info['roots']} |positive|={info['positive_roots']} "
          f"|W|={info['weyl_order']} |P/Q|={info['pq_index']}")
    for i, (a, p) in enumerate(zip(info["simple_roots"], info["fundamental_weights"]), 1):
        print(f"  alpha{i} = ({a})   phi{i} = ({p})")
    print("  boundary subset: {" + ", ".join(f"alpha{i}" for i in info["boundary"]) + "}")
    print("  subdiagrams of size r-2: " + " ".join("{" + ",".join(map(str, m)) + "}" for m in info["pc_family"]))
    return EXIT_OK


def cmd_weights(args) -> int:
    rs = build_root_system(args.family, args.rank)
    lam = parse_weight(args.weight, rs)
    ws = weight_system(rs, lam)
    orbit_size = len(orbit(rs, lam))
    summary = {
        "family": rs.family,
        "rank": rs.rank,
        "lambda": str(lam),
        "lambda_fw": [int(c) for c in rs.fundamental_coefficients(lam)],
        "support_size": ws.set_count,
        "dimension": ws.multiset_count,
        "orbit_size": orbit_size,
        "delta": ws.delta,
        "dominant": [{"weight": str(mu), "multiplicity": m} for mu, m in sorted(ws.dominant)],
    }
    if args.list:
        summary["weights"] = [{"weight": str(mu), "multiplicity": ws.multiplicity[mu]} for mu in ws.support]
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["weight", "multiplicity"])
        for mu in ws.support:
            w.writerow([str(mu), ws.multiplicity[mu]])
        return EXIT_OK
    if args.json:
        print(_dump(summary))
        return EXIT_OK
    print(f"{rs.label} lambda=({lam}) fw={summary['lambda_fw']}")
    print(f"  |support|={ws.set_count} dim={ws.multiset_count} |orbit|={orbit_size} delta={ws.delta}")
    for d in summary["dominant"]:
        print(f"  ({d['weight']}) x{d['multiplicity']}")
    if args.list:
        for d in summary["weights"]:
            print(f"    ({d['weight']}) x{d['multiplicity']}")
    return EXIT_OK


def cmd_certify(args) -> int:
    rs = build_root_system(args.family, args.rank)
    lam = parse_weight(args.weight, rs)
    omega = parse_weight_list(args.omega, rs)
    cert = check_nosm(weight_system(rs, lam), omega)
    out = {"family": rs.family, "rank": rs.rank, "lambda": str(lam), **cert.to_dict()}
    if args.json:
        print(_dump(out))
    else:
        print(f"{rs.label} lambda=({lam}) |omega|={len(cert.omega)}: {cert.verdict}")
        if cert.hyperplane:
            print(f"  H: {cert.hyperplane}  lhs={cert.lhs} rhs={cert.rhs} delta={cert.delta}")
        for k, v in out["flags"].items():
            print(f"  {k}: {v}")
        if cert.pair:
            print(f"  offending pair: ({cert.pair[0]}) ({cert.pair[1]})")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    manifest = claims_mod.load_manifest(args.claims)
    results = claims_mod.verify(manifest, only=args.only, with_oracle=args.with_oracle)
    failed = [r for r in results if r.status != "pass"]
    if args.json:
        print(_dump({"claims": [r.to_dict() for r in results], "passed": len(results) - len(failed),
                     "failed": len(failed)}))
    elif args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["id", "family", "status", "expected", "computed", "oracle"])
        for r in results:
            w.writerow([r.id, r.family, r.status, json.dumps(r.expected, sort_keys=True),
                        json.dumps(r.computed, sort_keys=True), r.oracle or ""])
    else:
        for r in results:
            extra = f" [oracle {r.oracle}]" if r.oracle else ""
            print(f"{r.status.upper():4} {r.id}{extra}")
        print(f"{len(results) - len(failed)}/{len(results)} claims pass")
    for r in failed:
        print(claims_mod.format_diff(r), file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_scan(args) -> int:
    rs = build_root_system(args.family, args.rank)
    workers = args.workers or int(os.environ.get("WEYLCERT_THREADS", "1") or 1)
    results = scan(
        rs,
        args.sum,
        budget=args.budget,
        omega_max=args.omega_max,
        use_templates=not args.no_templates,
        workers=workers,
        seed=args.seed,
    )
    if args.json:
        print(_dump([r.to_dict(timings=args.timings) for r in results]))
    elif args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["family", "rank", "lambda_fw", "verdict", "source", "normal", "lhs", "rhs"])
        for r in results:
            c = r.certificate
            w.writerow([r.family, r.rank, " ".join(map(str, r.lambda_fw)), r.verdict, r.source or "",
                        " ".join(map(str, c.hyperplane.normal)) if c else "", c.lhs if c else "",
                        c.rhs if c else ""])
    else:
        for r in results:
            fw = ",".join(map(str, r.lambda_fw))
            line = f"{rs.label} fw:{fw:<16} {r.verdict}"
            if r.certificate:
                line += f"  via {r.source}  {r.certificate.lhs} > {r.certificate.rhs}"
            if args.timings:
                line += f"  ({r.runtime_ms:.1f} ms)"
            print(line)
    return EXIT_OK


def _family(text: str) -> str:
    f = text.upper()
    if f not in FAMILIES:
        raise argparse.ArgumentTypeError(f"family must be one of {', '.join(FAMILIES)}")
    return f


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylcert",
        description="Exact weight-system and certificate computations for root systems of types B, C, D.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def system_args(p):
        p.add_argument("family", type=_family, help="B, C or D")
        p.add_argument("rank", type=int)

    p = sub.add_parser("info", help="root system summary")
    system_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("weights", help="weight system of an irreducible module")
    system_args(p)
    p.add_argument("weight", help='highest weight, "1,1/2,..." or "fw:1,0,..."')
    p.add_argument("--list", action="store_true", help="list every weight")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true", help="one row per weight")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("certify", help="evaluate a certificate for a subset of the orbit")
    system_args(p)
    p.add_argument("weight", help="dominant highest weight")
    p.add_argument("omega", help="orbit elements separated by ';'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-paper", help="recompute every claim in the manifest")
    p.add_argument("--claims", help="alternative manifest path")
    p.add_argument("--only", type=_family, help="restrict to one family")
    p.add_argument("--with-oracle", action="store_true", help="cross-check with brute-force oracles")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("scan", help="search certificates for all small dominant weights")
    system_args(p)
    p.add_argument("--sum", type=int, required=True, help="bound on the sum of fundamental coefficients")
    p.add_argument("--omega-max", type=int, help="largest omega considered (default r+1)")
    p.add_argument("--budget", type=_nonneg, help="search steps per weight (default unlimited)")
    p.add_argument("--seed", type=int, help="shuffle the search order with this seed")
    p.add_argument("--workers", type=int, help="worker processes (default WEYLCERT_THREADS or 1)")
    p.add_argument("--no-templates", action="store_true", help="skip the explicit witness constructions")
    p.add_argument("--timings", action="store_true", help="include wall-clock times")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except WeylcertError as exc:
        print(f"weylcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
