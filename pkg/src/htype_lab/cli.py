"""htype-lab: build, verify and classify H-type algebras from the command line.

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional, Tuple

from . import __version__
from .clifford import HTypeSpec, assemble, needs_sign, verify_clifford
from .horizontal import is_horizontal
from .htype import build, summary, verify_htype
from .lagrangian import certify_lagrangian, construct_lagrangian, lag_exists, trace_obstruction
from .report import Check, dumps
from .search import SearchConfig, exhaustive_tiny, octonion_suite, random_horizontal

# Existence column of the classification table, keyed by m mod 8.
TABLE1 = {0: "any p", 1: "any p", 2: "any p", 3: "any (p,p)", 4: "any p", 5: "p even", 6: "p even", 7: "any (p,p)"}


def table1_expected(spec: HTypeSpec) -> bool:
    rule = TABLE1[spec.m % 8]
    if rule == "any p":
        return True
    if rule == "any (p,p)":
        return spec.pplus == spec.pminus
    return spec.p % 2 == 0


def specs_up_to(max_m: int, max_p: int) -> List[HTypeSpec]:
    """All specs with 1 <= m <= max_m and total multiplicity <= max_p, in (m, multiplicity) order."""
    out = []
    for m in range(1, max_m + 1):
        for tot in range(1, max_p + 1):
            if needs_sign(m):
                out.extend(HTypeSpec(m, pplus=a, pminus=tot - a) for a in range(tot, -1, -1))
            else:
                out.append(HTypeSpec(m, p=tot))
    return out


# -- subcommands -------------------------------------------------------------------

def cmd_build(spec: HTypeSpec, args) -> Tuple[List[Check], dict]:
    rep = assemble(spec)
    checks = verify_clifford(rep)
    return checks, {"rep": rep.to_json(), "clifford_checks": checks}


def cmd_verify(spec: HTypeSpec, args) -> Tuple[List[Check], dict]:
    alg = build(spec)
    checks = verify_clifford(alg.rep) + verify_htype(alg, seed=args.seed)
    return checks, {"algebra": summary(alg, seed=args.seed), "checks": checks}


def cmd_lagrangian(spec: HTypeSpec, args) -> Tuple[List[Check], dict]:
    alg = build(spec)
    if not lag_exists(spec):
        body = {"exists": False}
        if needs_sign(spec.m):
            tr, verdict = trace_obstruction(alg)
            body["trace_obstruction"] = {"trace": tr, "verdict": verdict}
            detail = f"trace obstruction {tr}: {verdict}"
        else:
            detail = f"no Lagrangian for odd p when m = {spec.m % 8} mod 8"
        return [Check("lagrangian_exists", False, detail)], body
    cert = certify_lagrangian(alg, construct_lagrangian(spec, args.r), seed=args.seed)
    checks = [Check(k, v, "") for k, v in cert.checks.items()]
    if cert.orbit_type is not None:
        checks.append(Check("orbit_type", True, f"r = {cert.orbit_type}"))
    return checks, {"exists": True, "certificate": cert}


def cmd_table1(args) -> Tuple[List[Check], dict]:
    cells = []
    checks = []
    for spec in specs_up_to(args.max_m, args.max_p):
        alg = build(spec)
        exists = lag_exists(spec)
        expected = table1_expected(spec)
        cell = {"spec": spec.to_json(), "exists": exists, "table": TABLE1[spec.m % 8]}
        ok = exists == expected
        detail = "exists" if exists else "empty"
        if exists:
            cert = certify_lagrangian(alg, construct_lagrangian(spec), seed=args.seed)
            cell["certificate_valid"] = cert.valid
            cell["dim"] = cert.dim
            ok &= cert.valid
            detail += f", certified dim {cert.dim}"
        elif needs_sign(spec.m):
            tr, verdict = trace_obstruction(alg)
            cell["trace"] = tr
            ok &= tr != 0
            detail += f", trace {tr}"
        else:
            rep = random_horizontal(alg, SearchConfig(seed=args.seed, trials=args.trials,
                                                      coordinate_bound=args.bound, target_dim=alg.n // 2))
            cell["search"] = {"trials": rep.trials_run, "found": len(rep.found), "evidence": rep.evidence}
            ok &= not rep.found
            detail += f", search {rep.trials_run} trials found {len(rep.found)} ({rep.evidence})"
        cells.append(cell)
        checks.append(Check(f"table1[{spec.label()}]", ok, detail))
    return checks, {"cells": cells}


def cmd_search(spec: HTypeSpec, args) -> Tuple[List[Check], dict]:
    alg = build(spec)
    dim = args.dim if args.dim is not None else alg.n // 2
    if args.exhaustive:
        rep = exhaustive_tiny(alg, dim, args.bound)
    else:
        rep = random_horizontal(alg, SearchConfig(seed=args.seed, trials=args.trials, coordinate_bound=args.bound,
                                                  target_dim=dim, mode=args.mode, maximal_only=args.maximal_only))
    sound = all(is_horizontal(alg, S) and S.dim == dim for S in rep.found)
    checks = [Check("found_subspaces_horizontal", sound,
                    f"{len(rep.found)} found in {rep.trials_run} {'tuples' if rep.exhaustive else 'trials'} "
                    f"({rep.evidence})")]
    return checks, {"search": rep}


def cmd_octonion(args) -> Tuple[List[Check], dict]:
    checks, extra = octonion_suite(args.seed, search_trials=args.trials)
    return checks, {"checks": checks, "witness": extra["witness"], "search": extra["search"]}


# -- argument handling -------------------------------------------------------------

def _add_spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, required=True, help="center dimension")
    p.add_argument("--p", type=int, help="multiplicity (m not 3 mod 4)")
    p.add_argument("--pplus", type=int, help="copies with K = +Id (m = 3 mod 4)")
    p.add_argument("--pminus", type=int, help="copies with K = -Id (m = 3 mod 4)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="htype-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"htype-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct the Clifford module and check its relations")
    _add_spec_args(p)
    _add_common(p)

    p = sub.add_parser("verify", help="check Clifford and H-type axioms")
    _add_spec_args(p)
    _add_common(p)

    p = sub.add_parser("lagrangian", help="construct and certify a Lagrangian")
    _add_spec_args(p)
    p.add_argument("--r", type=int, help="orbit index for m = 0 mod 4 (default p)")
    _add_common(p)

    p = sub.add_parser("table1", help="existence sweep over (m, multiplicity)")
    p.add_argument("--max-m", type=int, default=12)
    p.add_argument("--max-p", type=int, default=3)
    p.add_argument("--trials", type=int, default=1000, help="search trials for empty cells")
    p.add_argument("--bound", type=int, default=2)
    _add_common(p)

    p = sub.add_parser("search", help="seeded random or grid-exhaustive search")
    _add_spec_args(p)
    p.add_argument("--dim", type=int, help="target dimension (default n/2)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--mode", choices=("uniform", "centralizer"), default="uniform")
    p.add_argument("--maximal-only", action="store_true", help="keep only maximal horizontal subspaces")
    p.add_argument("--exhaustive", action="store_true", help="enumerate the whole grid instead")
    _add_common(p)

    p = sub.add_parser("octonion", help="the m = 8 centralizer and strata suite")
    p.add_argument("--trials", type=int, default=100000, help="search trials at dimension 4")
    _add_common(p)
    return parser


def _spec_from_args(parser, args) -> HTypeSpec:
    try:
        if needs_sign(args.m):
            if args.p is not None:
                raise ValueError(f"m={args.m} needs --pplus and --pminus instead of --p")
            return HTypeSpec(args.m, pplus=args.pplus, pminus=args.pminus)
        return HTypeSpec(args.m, p=args.p, pplus=args.pplus, pminus=args.pminus)
    except ValueError as e:
        parser.error(str(e))


def render_text(checks: List[Check], all_ok: bool) -> str:
    lines = [c.line() for c in checks]
    passed = sum(c.passed for c in checks)
    lines.append(f"{'PASS' if all_ok else 'FAIL'}  all_checks  {passed}/{len(checks)} passed")
    return "\n".join(lines) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    spec = None
    for name in ("trials", "bound", "max_m", "max_p"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    if args.command in ("build", "verify", "lagrangian", "search"):
        spec = _spec_from_args(parser, args)
    try:
        if args.command == "build":
            checks, body = cmd_build(spec, args)
        elif args.command == "verify":
            checks, body = cmd_verify(spec, args)
        elif args.command == "lagrangian":
            checks, body = cmd_lagrangian(spec, args)
        elif args.command == "table1":
            checks, body = cmd_table1(args)
        elif args.command == "search":
            checks, body = cmd_search(spec, args)
        else:
            checks, body = cmd_octonion(args)
    except ValueError as e:
        parser.error(str(e))
    ok = all(c.passed for c in checks)
    report = {
        "tool_version": __version__,
        "command": args.command,
        "spec": spec.to_json() if spec else None,
        "seed": args.seed,
        "results": body,
        "all_passed": ok,
    }
    text = dumps(report) if args.format == "json" else render_text(checks, ok)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"elapsed {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
