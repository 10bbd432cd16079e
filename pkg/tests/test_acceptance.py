"""Acceptance suite: ten end-to-end criteria, one PASS/FAIL line each.

Run with pytest (the lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import subprocess
import sys
import time

import pytest

from htype_lab.clifford import (HTypeSpec, assemble, base_generators, expected_k_profile, irreducible, k_profile,
                                needs_sign, tensor_rep, verify_clifford)
from htype_lab.exactlin import Matrix, canonicalize
from htype_lab.horizontal import allowed_dims, dim_bounds, extend_horizontal, is_horizontal, is_maximal_horizontal
from htype_lab.htype import build, from_rep, verify_htype
from htype_lab.lagrangian import (apply_aut, build_aut_from_blocks, certify_lagrangian, construct_lagrangian,
                                  is_aut_o, lag_exists, minus_space, orbit_type, param_isotropy, plus_space, realize,
                                  sample_aut_blocks, sample_param_blocks, tensor_lagrangian, trace_obstruction)
from htype_lab.rng import SplitMix64, trial_seed
from htype_lab.search import SearchConfig, octonion_suite, random_horizontal

RESULTS = {}

# irreducible dimension for m = 1..12, and the existence rule per m mod 8, both written out by hand
DIMS = [2, 4, 4, 8, 8, 8, 8, 16, 32, 64, 64, 128]
EXISTS = {0: "any p", 1: "any p", 2: "any p", 3: "any (p,p)", 4: "any p", 5: "p even", 6: "p even", 7: "any (p,p)"}


def sweep(max_m=12, max_p=3):
    for m in range(1, max_m + 1):
        for tot in range(1, max_p + 1):
            if needs_sign(m):
                for a in range(tot + 1):
                    yield HTypeSpec(m, pplus=a, pminus=tot - a)
            else:
                yield HTypeSpec(m, p=tot)


def table_says(spec):
    rule = EXISTS[spec.m % 8]
    if rule == "any p":
        return True
    if rule == "any (p,p)":
        return spec.pplus == spec.pminus
    return spec.p % 2 == 0


def criterion_1():
    bad = []
    for m in range(1, 13):
        for s in ((1, -1) if needs_sign(m) else (None,)):
            rep = irreducible(m, s)
            if rep.n != DIMS[m - 1] or not all(c.passed for c in verify_clifford(rep)):
                bad.append((m, s))
    return not bad, f"m = 1..12, both signs for m = 3 mod 4; failures {bad}"


def criterion_2():
    bad, count = [], 0
    for spec in sweep():
        count += 1
        if not all(c.passed for c in verify_htype(build(spec), samples=20, seed=0)):
            bad.append(spec.label())
    return not bad, f"{count} algebras, 20 samples each; failures {bad}"


def criterion_3():
    bad, cells, searched = [], 0, 0
    for spec in sweep():
        cells += 1
        alg = build(spec)
        exists = lag_exists(spec)
        if exists != table_says(spec):
            bad.append((spec.label(), "existence"))
            continue
        if exists:
            if not certify_lagrangian(alg, construct_lagrangian(spec)).valid:
                bad.append((spec.label(), "certificate"))
        elif needs_sign(spec.m):
            if trace_obstruction(alg)[0] == 0:
                bad.append((spec.label(), "trace"))
        else:
            rep = random_horizontal(alg, SearchConfig(seed=0, trials=1000, coordinate_bound=2,
                                                      target_dim=alg.n // 2))
            searched += 1
            if rep.found or rep.evidence != "heuristic":
                bad.append((spec.label(), "search"))
    return not bad, f"{cells} cells, {searched} empty-by-parity cells searched (heuristic); failures {bad}"


def criterion_4():
    bad = []
    for m in range(1, 13):
        for s in ((1, -1) if needs_sign(m) else (None,)):
            rep = irreducible(m, s)
            prof = k_profile(rep)
            want = {"square": -1, "transpose": "skew"} if m % 4 in (1, 2) else {"square": 1, "transpose": "symmetric"}
            if prof != want or prof != expected_k_profile(m):
                bad.append((m, s))
            if s is not None and rep.K != Matrix.identity(rep.n).scale(s):
                bad.append((m, s, "sign"))
    return not bad, f"m = 1..12; failures {bad}"


def criterion_5():
    bad = []
    for m in (4, 8, 12):
        spec = HTypeSpec(m, p=3)
        alg = build(spec)
        Ls = [construct_lagrangian(spec, r) for r in range(4)]
        for r, L in enumerate(Ls):
            cert = certify_lagrangian(alg, L)
            if not cert.valid or cert.orbit_type != r:
                bad.append((m, r))
        rng = SplitMix64(m)
        for _ in range(20):
            xi, valid = build_aut_from_blocks(sample_aut_blocks(m, 3, rng, valid=True))
            if not (valid and is_aut_o(alg, xi)):
                bad.append((m, "aut"))
                continue
            for r, L in enumerate(Ls):
                if orbit_type(alg, apply_aut(alg, xi, L)) != r:
                    bad.append((m, r, "moved"))
    return not bad, f"m in (4, 8, 12), p = 3, r = 0..3, 20 automorphisms each; failures {bad}"


def criterion_6():
    checks, extra = octonion_suite(seed=0, instances=20, search_trials=100000)
    failed = [c.name for c in checks if not c.passed]
    ok = not failed and allowed_dims(16, 8) == {2, 4, 8} and extra["search"].evidence == "heuristic"
    return ok, f"{len(checks)} checks, dim-4 search {extra['search'].trials_run} trials; failures {failed}"


def criterion_7():
    bad, n = [], 0
    for m in (1, 2, 3):
        for p in (1, 2, 3):
            spec = HTypeSpec(m, pplus=p, pminus=p) if m == 3 else HTypeSpec(m, p=p)
            alg = build(spec)
            rng = SplitMix64(1000 * m + p)
            for i in range(100):
                blocks = sample_param_blocks(m, p, rng, isotropic=i % 2 == 0)
                ralg, W = realize(blocks)
                if param_isotropy(blocks) != is_horizontal(ralg, W):
                    bad.append((m, p, i, "isotropy"))
                xi, valid = build_aut_from_blocks(sample_aut_blocks(m, p, rng, valid=i % 2 == 0))
                if valid != is_aut_o(alg, xi):
                    bad.append((m, p, i, "aut"))
                n += 1
    return not bad, f"{n} block samples for each contract; failures {bad[:5]}"


def criterion_8():
    v8 = base_generators(8)
    a8 = from_rep(v8)
    bad = []
    # v_3 alone has no Lagrangian, so r = 3 uses the smallest module that has one, v_3^+ + v_3^-
    for inner_spec in (HTypeSpec(1, p=1), HTypeSpec(2, p=1), HTypeSpec(3, pplus=1, pminus=1)):
        inner = assemble(inner_spec)
        big = from_rep(tensor_rep(v8, inner))
        Lr = construct_lagrangian(inner_spec)
        for name, L8 in (("w+", plus_space(a8)), ("w-", minus_space(a8))):
            if not certify_lagrangian(big, tensor_lagrangian(L8, Lr, inner)).valid:
                bad.append((inner_spec.label(), name))
    return not bad, f"L8 in (w+, w-), r = 1, 2, 3; failures {bad}"


def criterion_9():
    specs = list(sweep(8, 2))
    outside, not_max, out_of_bounds = {}, 0, 0
    for i in range(1000):
        spec = specs[i % len(specs)]
        alg = build(spec)
        v = {k: x for k, x in enumerate(SplitMix64(trial_seed(0, i)).nonzero_int_vector(alg.n, 2)) if x}
        S = extend_horizontal(alg, canonicalize([v], alg.n))
        if not is_maximal_horizontal(alg, S):
            not_max += 1
        lo, hi = dim_bounds(alg.n, alg.m)
        if not lo <= S.dim <= hi:
            out_of_bounds += 1
        if S.dim not in allowed_dims(alg.n, alg.m):
            key = f"{spec.label()} dim {S.dim}"
            outside[key] = outside.get(key, 0) + 1
    ok = not not_max and not outside
    detail = (f"1000 runs, {not_max} not maximal, {out_of_bounds} outside [n/(m+1), n/2], "
              f"{sum(outside.values())} outside the divisor set: {outside}")
    return ok, detail


CLI_RUNS = [
    ["build", "--m", "7", "--pplus", "1", "--pminus", "1"],
    ["verify", "--m", "9", "--p", "2", "--seed", "5"],
    ["lagrangian", "--m", "8", "--p", "3", "--r", "2"],
    ["lagrangian", "--m", "3", "--pplus", "1", "--pminus", "0"],
    ["table1", "--max-m", "8", "--max-p", "3", "--seed", "2"],
    ["search", "--m", "4", "--p", "1", "--dim", "4", "--trials", "300", "--mode", "centralizer", "--seed", "11"],
    ["search", "--m", "2", "--p", "1", "--exhaustive"],
    ["octonion", "--trials", "2000", "--seed", "4"],
]


def criterion_10():
    bad = []
    for argv in CLI_RUNS:
        outs = []
        for fmt in ("json", "text"):
            runs = [subprocess.run([sys.executable, "-m", "htype_lab", *argv, "--format", fmt],
                                   capture_output=True) for _ in range(2)]
            if runs[0].stdout != runs[1].stdout or runs[0].returncode != runs[1].returncode:
                bad.append((argv[0], fmt))
            outs.append(runs[0].returncode)
        if outs[0] != outs[1]:
            bad.append((argv[0], "exit codes differ by format"))
    return not bad, f"{len(CLI_RUNS)} invocations x 2 formats, each run twice; differences {bad}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(k, ok, detail, secs):
    return f"{'PASS' if ok else 'FAIL'}  criterion {k}  {detail}  ({secs:.1f}s)"


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k):
    t0 = time.perf_counter()
    ok, detail = CRITERIA[k - 1]()
    RESULTS[k] = _line(k, ok, detail, time.perf_counter() - t0)
    print(RESULTS[k])
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        t0 = time.perf_counter()
        ok, detail = fn()
        failed += not ok
        print(_line(k, ok, detail, time.perf_counter() - t0), flush=True)
    sys.exit(1 if failed else 0)
