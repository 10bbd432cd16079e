"""Heisenberg-type algebras n = v + R^m built from a Clifford module.

The bracket of two vectors of ``v`` is the z-vector whose i-th component is
<J_i u, v>.  Vectors are plain coordinate lists or sparse dicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional

from .clifford import CliffordRep, HTypeSpec, assemble, verify_clifford
from .exactlin import Matrix, Rational, SparseVec, as_sparse, axpy, dot, norm2, rank, to_dense
from .report import Check
from .rng import SplitMix64


@dataclass(frozen=True, eq=False)
class HTypeAlgebra:
    spec: Optional[HTypeSpec]
    rep: CliffordRep

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def m(self) -> int:
        return self.rep.m

    @property
    def J(self):
        return self.rep.J

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "mult": self.spec.mult if self.spec else None}


@lru_cache(maxsize=None)
def build(spec: HTypeSpec) -> HTypeAlgebra:
    rep = assemble(spec)
    bad = [c for c in verify_clifford(rep) if not c.passed]
    if bad:
        raise AssertionError(f"{spec.label()}: {bad[0].name} {bad[0].detail}")
    return HTypeAlgebra(spec, rep)


def from_rep(rep: CliffordRep) -> HTypeAlgebra:
    """Wrap a representation that did not come from a spec (tensor models and the like)."""
    return HTypeAlgebra(None, rep)


def _vec(v, n: int) -> SparseVec:
    s = v if isinstance(v, dict) else as_sparse(v)
    if not isinstance(v, dict) and len(v) != n:
        raise ValueError(f"expected a vector of length {n}, got {len(v)}")
    if s and max(s) >= n:
        raise ValueError(f"index out of range for dimension {n}")
    return s


def j_operator(alg: HTypeAlgebra, z) -> Matrix:
    """The matrix J_z = sum z_i J_i."""
    z = _vec(z, alg.m)
    out = Matrix.zeros(alg.n, alg.n)
    for i, c in z.items():
        out = out + alg.J[i].scale(c)
    return out


def j_action_sparse(alg: HTypeAlgebra, z: SparseVec, u: SparseVec) -> SparseVec:
    acc: SparseVec = {}
    for i, c in z.items():
        axpy(acc, c, alg.J[i].apply(u))
    return acc


def j_action(alg: HTypeAlgebra, z, u) -> List[Rational]:
    """J_z u as a dense vector."""
    return to_dense(j_action_sparse(alg, _vec(z, alg.m), _vec(u, alg.n)), alg.n)


def bracket_sparse(alg: HTypeAlgebra, u: SparseVec, v: SparseVec) -> List[Rational]:
    return [dot(J.apply(u), v) for J in alg.J]


def bracket(alg: HTypeAlgebra, u, v) -> List[Rational]:
    """Component i is <J_i u, v>."""
    return bracket_sparse(alg, _vec(u, alg.n), _vec(v, alg.n))


def _random_z(rng: SplitMix64, m: int) -> List[int]:
    return rng.nonzero_int_vector(m, 2)


def verify_htype(alg: HTypeAlgebra, samples: int = 20, seed: int = 0) -> List[Check]:
    """Exact H-type checks on the center basis plus ``samples`` seeded random vectors."""
    n, m = alg.n, alg.m
    rng = SplitMix64(seed)
    checks: List[Check] = []
    # (a) J_z^2 = -|z|^2 on the center basis and on random z, applied to every basis vector
    zs = [[int(t == i) for t in range(m)] for i in range(m)]
    zs += [_random_z(rng, m) for _ in range(samples)]
    bad = None
    for z in zs:
        Jz = j_operator(alg, z)
        if Jz @ Jz != Matrix.identity(n).scale(-norm2(as_sparse(z))):
            bad = (z,)
            break
    checks.append(Check("jz_squared", bad is None,
                        f"{len(zs)} z-vectors" if bad is None else f"fails for z={bad[0]}"))

    # (b) skewness of the bracket on basis pairs, read off the sparse entries of each J_i
    skew_ok = all(J.T == -J for J in alg.J)
    checks.append(Check("bracket_skew", skew_ok, f"{n * (n - 1) // 2} basis pairs"))

    # (c) ad(u) surjective and bracket(u, J_z u) = |u|^2 z on random samples
    surj_bad = None
    ident_bad = None
    for _ in range(samples):
        u = as_sparse(rng.nonzero_int_vector(n, 2))
        images = Matrix.from_sparse_rows([J.apply(u) for J in alg.J], n)
        if rank(images) != m:
            surj_bad = u
        z = as_sparse(_random_z(rng, m))
        got = bracket_sparse(alg, u, j_action_sparse(alg, z, u))
        nu = norm2(u)
        if got != [nu * z.get(i, 0) for i in range(m)]:
            ident_bad = u
    checks.append(Check("ad_surjective", surj_bad is None,
                        f"dim ker ad(u) = {n - m} on {samples} samples" if surj_bad is None else "rank deficit"))
    checks.append(Check("bracket_jz_identity", ident_bad is None,
                        f"[u, J_z u] = |u|^2 z on {samples} samples" if ident_bad is None else "mismatch"))
    return checks


def summary(alg: HTypeAlgebra, seed: int = 0) -> dict:
    checks = verify_clifford(alg.rep) + verify_htype(alg, seed=seed)
    return {
        "m": alg.m,
        "n": alg.n,
        "mult": alg.spec.mult if alg.spec else None,
        "htype_checks": [{"name": c.name, "passed": c.passed} for c in checks],
    }
