"""Lagrangian subspaces of H-type algebras.

A Lagrangian is a horizontal subspace of half dimension; every maximal
horizontal subspace of that size is one.  This module decides existence by
the residue of m mod 8, builds an explicit representative for every residue,
certifies candidates, and provides the block parametrizations of isotropic
submodules and of the automorphism group for the low residues.

All subspaces live in the coordinates of ``clifford.assemble``: irreducible
copies are stacked, + copies first when m = 3 mod 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra_tables import DIMS, AlgebraElement, AlgMatrix, conjugate, conjugation_matrix, left_mult_matrix, right_mult_matrix
from .clifford import CliffordRep, HTypeSpec, base_generators, expected_dim, irreducible, needs_sign
from .exactlin import (Matrix, SparseVec, Subspace, axpy, canonicalize, intersect, inverse, kernel,
                       orth_complement, pm1_eigenspace)
from .horizontal import is_horizontal
from .htype import HTypeAlgebra, build, from_rep, j_operator
from .rng import SplitMix64


# -- existence ----------------------------------------------------------------

def lag_exists(spec: HTypeSpec) -> bool:
    r = spec.m % 8
    if r in (0, 1, 2, 4):
        return True
    if r in (3, 7):
        return spec.pplus == spec.pminus
    return spec.p % 2 == 0


def trace_obstruction(alg: HTypeAlgebra) -> Tuple[int, str]:
    """Trace of the volume element; a nonzero trace rules out Lagrangians."""
    if alg.m % 4 != 3:
        raise ValueError(f"trace obstruction applies to m = 3 mod 4, got m={alg.m}")
    tr = alg.rep.K.trace()
    return tr, ("no Lagrangian" if tr != 0 else "no obstruction")


# -- small helpers -------------------------------------------------------------------

def _shift(vecs, offset: int) -> List[SparseVec]:
    return [{k + offset: x for k, x in v.items()} for v in vecs]


def _join(*parts: SparseVec) -> SparseVec:
    out: SparseVec = {}
    for p in parts:
        out.update(p)
    return out


def _unit(k: int) -> SparseVec:
    return {k: 1}


@lru_cache(maxsize=None)
def _eigenspace(K: Matrix, sign: int) -> Subspace:
    return pm1_eigenspace(K, sign)


def plus_space(alg: HTypeAlgebra) -> Subspace:
    """The +1 eigenspace of the volume element (m = 0 mod 4)."""
    return _eigenspace(alg.rep.K, 1)


def minus_space(alg: HTypeAlgebra) -> Subspace:
    return _eigenspace(alg.rep.K, -1)


def projector(S: Subspace) -> Matrix:
    """Orthogonal projector onto S (rational)."""
    B = S.basis
    G = B @ B.T
    return B.T @ inverse(G) @ B


# -- per-irreducible building blocks ------------------------------------------------

@lru_cache(maxsize=None)
def irreducible_lagrangian(m: int) -> Subspace:
    """A Lagrangian of the irreducible module v_m for m = 0, 1, 2, 4 mod 8."""
    r = m % 8
    rep = irreducible(m)
    if r in (0, 4):
        return _eigenspace(rep.K, 1)
    if r not in (1, 2):
        raise ValueError(f"v_{m} has no Lagrangian of its own")
    if m == 1:
        return canonicalize([_unit(0)], 2)
    if m == 2:
        return canonicalize([_unit(1), _unit(2)], 4)   # span{i, j} in H
    return tensor_lagrangian(_eigenspace(base_generators(8).K, 1), irreducible_lagrangian(m - 8),
                             irreducible(m - 8), check=False)


@lru_cache(maxsize=None)
def phi_hat(m: int) -> Matrix:
    """Anti-intertwiner v_m^+ -> v_m^- for m = 3 mod 4: K_8 (x) ... (x) conjugation."""
    if m % 4 != 3:
        raise ValueError("phi_hat needs m = 3 mod 4")
    if m == 3:
        return conjugation_matrix("H")
    if m == 7:
        return conjugation_matrix("O")
    return base_generators(8).K.kron(phi_hat(m - 8))


@lru_cache(maxsize=None)
def phi_complex(m: int) -> Matrix:
    """Intertwiner sending the standard Lagrangian to its complement (m = 2 mod 8)."""
    if m % 8 != 2:
        raise ValueError("phi_complex needs m = 2 mod 8")
    Rj = right_mult_matrix(AlgebraElement.basis("H", 2))
    if m == 2:
        return Rj
    return Matrix.identity(16).kron(phi_complex(m - 8))


@lru_cache(maxsize=None)
def t_operator(m: int) -> Matrix:
    """Orthogonal T on v_m (m = 5 mod 8) commuting with J_1..J_{m-1}, anticommuting with J_m, T^2 = -I."""
    if m % 8 != 5:
        raise ValueError("t_operator needs m = 5 mod 8")
    if m > 8:
        return Matrix.identity(16).kron(t_operator(m - 8))
    rep = irreducible(m)
    n = rep.n
    rows = []
    for i, J in enumerate(rep.J):
        sgn = 1 if i == m - 1 else -1     # J T + sgn T J = 0
        for a in range(n):
            for b in range(n):
                row: SparseVec = {}
                for c, x in J.row_view(a).items():      # (J T)[a][b]
                    row[c * n + b] = row.get(c * n + b, 0) + x
                for c in range(n):                       # (T J)[a][b]
                    y = J[c, b]
                    if y:
                        row[a * n + c] = row.get(a * n + c, 0) + sgn * y
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    sol = kernel(Matrix.from_sparse_rows(rows, n * n))
    minus_I = Matrix.identity(n).scale(-1)
    for v in sol.vectors():
        T = Matrix(n, n, [{b: v[a * n + b] for b in range(n) if a * n + b in v} for a in range(n)])
        sq = T @ T
        c = sq[0, 0]
        if c < 0 and sq == Matrix.identity(n).scale(c):
            root = _rational_sqrt(-c)
            if root is not None:
                T = T.scale(Fraction(1) / root)
                if T @ T == minus_I and T.T == -T:
                    return T
    raise AssertionError("no complex structure T found")


def _rational_sqrt(x) -> Optional[Fraction]:
    x = Fraction(x)
    from math import isqrt
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


# -- constructions -----------------------------------------------------------------

def construct_lagrangian(spec: HTypeSpec, r: Optional[int] = None) -> Subspace:
    """An explicit Lagrangian of the algebra ``spec`` (``r`` = orbit index for m = 0 mod 4)."""
    if not lag_exists(spec):
        raise ValueError(f"{spec.label()} has no Lagrangian subspaces")
    m, res = spec.m, spec.m % 8
    if r is not None and m % 4 != 0:
        raise ValueError("the orbit index r only applies when m = 0 mod 4")
    alg = build(spec)
    n, ni = alg.n, expected_dim(m)
    rep_i = irreducible(m, 1 if needs_sign(m) else None)

    if res in (0, 4):
        p = spec.p
        r = p if r is None else r
        if not 0 <= r <= p:
            raise ValueError(f"orbit index r must lie in 0..{p}")
        wplus = _eigenspace(rep_i.K, 1).vectors()
        L1 = canonicalize([v for c in range(r) for v in _shift(wplus, c * ni)], n)
        rest = intersect(orth_complement(L1), plus_space(alg))
        Jm = alg.J[m - 1]
        return canonicalize(list(L1.vectors()) + [Jm.apply(v) for v in rest.vectors()], n)

    if res in (1, 2):
        Li = irreducible_lagrangian(m).vectors()
        return canonicalize([v for c in range(spec.p) for v in _shift(Li, c * ni)], n)

    if res in (3, 7):
        p = spec.pplus
        phi = phi_hat(m)
        vecs = []
        for c in range(p):
            for k in range(ni):
                vecs.append(_join({c * ni + k: 1}, _shift([phi.apply(_unit(k))], (p + c) * ni)[0]))
        return canonicalize(vecs, n)

    if res == 5:
        T = t_operator(m)
        wplus = _eigenspace(_volume(rep_i.J[:m - 1]), 1).vectors()
        Lp = []
        for q in range(spec.p // 2):
            a, b = 2 * q * ni, (2 * q + 1) * ni
            for w in wplus:
                Lp.append(_join(_shift([w], a)[0], _shift([T.apply(w)], b)[0]))
        JJ = alg.J[m - 2] @ alg.J[m - 1]
        return canonicalize(Lp + [JJ.apply(v) for v in Lp], n)

    # res == 6: graph of K_m between paired copies
    K = rep_i.K
    vecs = []
    for q in range(spec.p // 2):
        a, b = 2 * q * ni, (2 * q + 1) * ni
        for k in range(ni):
            vecs.append(_join({a + k: 1}, _shift([K.apply(_unit(k))], b)[0]))
    return canonicalize(vecs, n)


def _volume(J: Sequence[Matrix]) -> Matrix:
    K = J[0]
    for j in J[1:]:
        K = K @ j
    return K


def m5_tensor_model(m: int, q: int) -> Tuple[HTypeAlgebra, Subspace]:
    """v_{m-1}^q (x) v_1 with J_m = K_{m-1} (x) j_1, and L = L+ + J_{m-1} J_m L+.

    L+ = w+^q (x) R e_1 with w+ the +1 eigenspace of K_{m-1}.
    """
    if m % 8 != 5:
        raise ValueError("model needs m = 5 mod 8")
    inner = irreducible(m - 1)
    ni = inner.n
    Jin = [Matrix.block_diag([J] * q) for J in inner.J]
    Kin = Matrix.block_diag([inner.K] * q)
    j1 = base_generators(1).J[0]
    I2 = Matrix.identity(2)
    gens = [J.kron(I2) for J in Jin] + [Kin.kron(j1)]
    rep = CliffordRep(m, 2 * q * ni, tuple(gens), _volume(gens), f"model:v{m - 1}^{q}(x)v1")
    alg = from_rep(rep)
    wplus = _eigenspace(inner.K, 1).vectors()
    Lp = []
    for c in range(q):
        for w in wplus:
            Lp.append({2 * (c * ni + k): x for k, x in w.items()})   # w (x) e_1
    JJ = gens[m - 2] @ gens[m - 1]
    return alg, canonicalize(Lp + [JJ.apply(v) for v in Lp], rep.n)


def tensor_lagrangian(L8: Subspace, Lr: Subspace, inner: CliffordRep, check: bool = True) -> Subspace:
    """L8 (x) Lr + L8^perp (x) Lr^perp inside v_8 (x) inner."""
    v8 = base_generators(8)
    if L8.ambient_dim != v8.n or Lr.ambient_dim != inner.n:
        raise ValueError("factor dimensions do not match v_8 and the inner module")
    if check:
        if not certify_lagrangian(from_rep(v8), L8).valid:
            raise ValueError("L8 is not a Lagrangian of v_8")
        if not certify_lagrangian(from_rep(inner), Lr).valid:
            raise ValueError("Lr is not a Lagrangian of the inner module")
    nr = inner.n

    def kron_vec(x: SparseVec, y: SparseVec) -> SparseVec:
        return {a * nr + b: s * t for a, s in x.items() for b, t in y.items()}

    vecs = [kron_vec(x, y) for x in L8.vectors() for y in Lr.vectors()]
    vecs += [kron_vec(x, y) for x in orth_complement(L8).vectors() for y in orth_complement(Lr).vectors()]
    return canonicalize(vecs, v8.n * nr)


# -- certification -----------------------------------------------------------------

CHECK_NAMES = ("half_dim", "isotropic", "cplus_closed", "complement_lagrangian", "jz_maps_to_complement")


@dataclass(frozen=True)
class LagrangianCertificate:
    subspace: Subspace
    checks: Dict[str, bool]
    orbit_type: Optional[int] = None

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "checks": dict(self.checks),
            "orbit_type": self.orbit_type,
            "basis": self.subspace.to_json(),
        }


def _maps_to_complement(alg: HTypeAlgebra, L: Subspace, Lperp: Subspace, rng: SplitMix64) -> bool:
    for J in alg.J:
        if canonicalize([J.apply(v) for v in L.vectors()], alg.n) != Lperp:
            return False
    # random z: J_z L is orthogonal to L, and J_z is injective (J_z^2 = -|z|^2),
    # so J_z L has dimension dim L = dim L^perp and equals L^perp
    for _ in range(5):
        z = rng.nonzero_int_vector(alg.m, 2)
        Jz = j_operator(alg, z)
        imgs = [Jz.apply(v) for v in L.vectors()]
        nz = sum(c * c for c in z)
        if any(Jz.apply(w) != {k: -nz * x for k, x in v.items()} for v, w in zip(L.vectors(), imgs)):
            return False
        if not all(Lperp.contains(w) for w in imgs):
            return False
    return True


def _cplus_closed(alg: HTypeAlgebra, L: Subspace) -> bool:
    for i in range(alg.m):
        for j in range(i + 1, alg.m):
            JJ = alg.J[i] @ alg.J[j]
            if not all(L.contains(JJ.apply(v)) for v in L.vectors()):
                return False
    return True


def certify_lagrangian(alg: HTypeAlgebra, L: Subspace, seed: int = 0) -> LagrangianCertificate:
    if L.ambient_dim != alg.n:
        raise ValueError(f"subspace lives in dimension {L.ambient_dim}, algebra has n={alg.n}")
    rng = SplitMix64(seed)
    Lperp = orth_complement(L)
    half = 2 * L.dim == alg.n
    checks = {
        "half_dim": half,
        "isotropic": is_horizontal(alg, L),
        "cplus_closed": _cplus_closed(alg, L),
        "complement_lagrangian": half and is_horizontal(alg, Lperp),
        "jz_maps_to_complement": _maps_to_complement(alg, L, Lperp, rng),
    }
    ot = None
    if alg.m % 4 == 0 and all(checks.values()):
        try:
            ot = orbit_type(alg, L)
        except ValueError:
            ot = None
    return LagrangianCertificate(L, checks, ot)


def orbit_type(alg: HTypeAlgebra, L: Subspace) -> int:
    """r = dim(L meet W+) / (half the irreducible dimension), for m = 0 mod 4."""
    if alg.m % 4 != 0:
        raise ValueError("orbit type is defined for m = 0 mod 4")
    half = expected_dim(alg.m) // 2
    d = intersect(L, plus_space(alg)).dim
    if d % half:
        raise ValueError(f"dim(L meet W+) = {d} is not a multiple of {half}; not a Lagrangian")
    return d // half


# -- block parametrizations ------------------------------------------------------------

_BLOCK_ALGEBRA = {0: "R", 1: "R", 2: "C", 3: "H", 4: "R"}


@dataclass(frozen=True)
class ParamBlocks:
    """Blocks A, B, C, D over the residue's scalar ring (R, C or H)."""

    m: int
    A: AlgMatrix
    B: AlgMatrix
    C: AlgMatrix
    D: AlgMatrix

    def __post_init__(self):
        if self.case not in _BLOCK_ALGEBRA:
            raise ValueError(f"no block parametrization for m = {self.m} (residue {self.case} mod 8)")
        alg = _BLOCK_ALGEBRA[self.case]
        shapes = {X.shape for X in (self.A, self.B, self.C, self.D)}
        if len(shapes) != 1 or next(iter(shapes))[0] != next(iter(shapes))[1]:
            raise ValueError("blocks must be square and of one size")
        if any(X.algebra != alg for X in (self.A, self.B, self.C, self.D)):
            raise ValueError(f"residue {self.case} uses {alg} entries")

    @property
    def case(self) -> int:
        return self.m % 8

    @property
    def p(self) -> int:
        return self.A.shape[0]

    def spec(self) -> HTypeSpec:
        if self.case == 3:
            return HTypeSpec(self.m, pplus=self.p, pminus=self.p)
        return HTypeSpec(self.m, p=self.p)

    def to_json(self) -> dict:
        return {"m": self.m, "A": self.A.to_json(), "B": self.B.to_json(),
                "C": self.C.to_json(), "D": self.D.to_json()}


def param_isotropy(blocks: ParamBlocks) -> bool:
    A, B, C, D = blocks.A, blocks.B, blocks.C, blocks.D
    if blocks.case in (1, 2):
        return (A.transpose() @ B - B.transpose() @ A).is_zero()
    if blocks.case == 3:
        X, Y = A + C, B + D
        return (X.star() @ X - Y.star() @ Y).is_zero()
    raise ValueError("param_isotropy covers residues 1, 2 and 3")


def _re_im(M: AlgMatrix) -> Tuple[Matrix, Matrix]:
    p, q = M.shape
    re = Matrix.from_rows([[M[i, j].coords[0] for j in range(q)] for i in range(p)])
    im = Matrix.from_rows([[M[i, j].coords[1] for j in range(q)] for i in range(p)])
    return re, im


def _real(M: AlgMatrix) -> Matrix:
    p, q = M.shape
    return Matrix.from_rows([[M[i, j].coords[0] for j in range(q)] for i in range(p)])


def _complex_scale(x: AlgebraElement, K: Matrix, w: SparseVec) -> SparseVec:
    out: SparseVec = {}
    axpy(out, x.coords[0], w)
    if x.coords[1]:
        axpy(out, x.coords[1], K.apply(w))
    return out


def _quat_op(m: int, q: AlgebraElement, side: str) -> Matrix:
    base = right_mult_matrix(q) if side == "R" else left_mult_matrix(q)
    outer = expected_dim(m) // 4
    return Matrix.identity(outer).kron(base) if outer > 1 else base


def realize(blocks: ParamBlocks) -> Tuple[HTypeAlgebra, Subspace]:
    """The submodule W described by the blocks, in the coordinates of its algebra."""
    spec = blocks.spec()
    alg = build(spec)
    m, p, n = blocks.m, blocks.p, alg.n
    ni = expected_dim(m)
    A, B, C, D = blocks.A, blocks.B, blocks.C, blocks.D
    vecs: List[SparseVec] = []
    if blocks.case == 1:
        K = irreducible(m).K
        for k in range(p):
            for u in irreducible_lagrangian(m).vectors():
                Ku = K.apply(u)
                v: SparseVec = {}
                for c in range(p):
                    axpy(v, A[c, k].coords[0], _shift([u], c * ni)[0])
                    axpy(v, B[c, k].coords[0], _shift([Ku], c * ni)[0])
                vecs.append(v)
    elif blocks.case == 2:
        K, phi = irreducible(m).K, phi_complex(m)
        for k in range(p):
            for u in irreducible_lagrangian(m).vectors():
                pu = phi.apply(u)
                v = {}
                for c in range(p):
                    axpy(v, 1, _shift([_complex_scale(A[c, k], K, u)], c * ni)[0])
                    axpy(v, 1, _shift([_complex_scale(B[c, k], K, pu)], c * ni)[0])
                vecs.append(v)
    elif blocks.case == 3:
        X, Y = (A + C).conj(), B + D
        phi = phi_hat(m)
        for k in range(p):
            for q in range(ni):
                e = _unit(q)
                pe = phi.apply(e)
                v = {}
                for c in range(p):
                    axpy(v, 1, _shift([_quat_op(m, X[c, k], "R").apply(e)], c * ni)[0])
                    axpy(v, 1, _shift([_quat_op(m, Y[c, k], "L").apply(pe)], (p + c) * ni)[0])
                vecs.append(v)
    else:
        raise ValueError("realize covers residues 1, 2 and 3")
    return alg, canonicalize(vecs, n)


def aut_conditions(blocks: ParamBlocks) -> bool:
    """The block conditions for an automorphism acting trivially on the center."""
    A, B, C, D = blocks.A, blocks.B, blocks.C, blocks.D
    I = AlgMatrix.identity(A.algebra, blocks.p)
    if blocks.case in (1, 2):
        return ((A.transpose() @ B - B.transpose() @ A).is_zero()
                and (C.transpose() @ D - D.transpose() @ C).is_zero()
                and A.transpose() @ D - B.transpose() @ C == I)
    if blocks.case == 3:
        return (A.star() @ A - B.star() @ B == I
                and C.star() @ C - D.star() @ D == I.scale(-1)
                and (A.star() @ C - B.star() @ D).is_zero())
    return B.is_zero() and C.is_zero() and A.transpose() @ D == I


def build_aut_from_blocks(blocks: ParamBlocks) -> Tuple[Matrix, bool]:
    """Assemble the block operator on v; the flag is the block-level validity test."""
    m, p = blocks.m, blocks.p
    A, B, C, D = blocks.A, blocks.B, blocks.C, blocks.D
    rep_i = irreducible(m, 1 if needs_sign(m) else None)
    ni = rep_i.n
    I = Matrix.identity(ni)
    if blocks.case == 1:
        K = rep_i.K
        P = projector(irreducible_lagrangian(m))
        Pp = I - P
        xi = (_real(A).kron(P) + _real(B).kron(K @ P)
              + _real(C).kron(-K @ Pp) + _real(D).kron(Pp))
    elif blocks.case == 2:
        K, phi = rep_i.K, phi_complex(m)
        P = projector(irreducible_lagrangian(m))
        Pp = I - P
        xi = Matrix.zeros(p * ni, p * ni)
        for M, op in ((A, P), (B, phi @ P), (C, -phi @ Pp), (D, Pp)):
            re, im = _re_im(M)
            xi = xi + re.kron(op) + im.kron(K @ op)
    elif blocks.case == 3:
        phi = phi_hat(m)
        n = 2 * p * ni
        rows: List[SparseVec] = [{} for _ in range(n)]

        def put(bi: int, bj: int, blk: Matrix) -> None:
            for a, row in enumerate(blk.sparse_rows()):
                tgt = rows[bi * ni + a]
                for k, x in row.items():
                    tgt[bj * ni + k] = tgt.get(bj * ni + k, 0) + x

        for c in range(p):
            for d in range(p):
                put(c, d, _quat_op(m, conjugate(A[c, d]), "R"))
                put(c, p + d, _quat_op(m, conjugate(C[c, d]), "R") @ phi)
                put(p + c, d, _quat_op(m, B[c, d], "L") @ phi)
                put(p + c, p + d, _quat_op(m, D[c, d], "L"))
        xi = Matrix(n, n, rows)
    elif blocks.case in (0, 4):
        K = rep_i.K
        Pp = (I + K).scale(Fraction(1, 2))
        Pm = (I - K).scale(Fraction(1, 2))
        Jm = rep_i.J[m - 1]
        xi = (_real(A).kron(Pp) + _real(D).kron(Pm)
              + _real(B).kron(Jm @ Pp) + _real(C).kron(-Jm @ Pm))
    else:
        raise ValueError("no automorphism blocks for this residue")
    return xi, aut_conditions(blocks)


# -- automorphisms ---------------------------------------------------------------------

def _bracket_gram_columns(alg: HTypeAlgebra, xi: Matrix) -> List[Dict[Tuple[int, int], object]]:
    """<J_i xi e_a, xi e_b> for all a, b, via sparse column images."""
    cols = xi._columns()
    idx: Dict[int, List[Tuple[int, object]]] = {}
    for b, v in enumerate(cols):
        for k, x in v.items():
            idx.setdefault(k, []).append((b, x))
    out = []
    for J in alg.J:
        G = {}
        for a, v in enumerate(cols):
            acc: Dict[int, object] = {}
            for k, c in J.apply(v).items():
                for b, y in idx.get(k, ()):
                    acc[b] = acc.get(b, 0) + c * y
            for b, s in acc.items():
                if s != 0:
                    G[(a, b)] = s
        out.append(G)
    return out


def is_aut_o(alg: HTypeAlgebra, xi: Matrix) -> bool:
    """xi commutes with every J_i J_j and satisfies xi^t J_i xi = J_i for all i."""
    if xi.shape != (alg.n, alg.n):
        raise ValueError(f"expected an {alg.n}x{alg.n} matrix, got {xi.shape}")
    commutes = all(xi @ (alg.J[i] @ alg.J[j]) == (alg.J[i] @ alg.J[j]) @ xi
                   for i in range(alg.m) for j in range(i + 1, alg.m))
    xt = xi.T
    congruent = all(xt @ J @ xi == J for J in alg.J)
    # independent route: brackets of basis images
    grams = _bracket_gram_columns(alg, xi)
    preserved = all(G == {(a, b): x for b, row in enumerate(J.sparse_rows()) for a, x in row.items()}
                    for G, J in zip(grams, alg.J))
    if preserved != congruent:
        raise AssertionError("bracket preservation disagrees with the congruence test")
    return commutes and congruent


def apply_aut(alg: HTypeAlgebra, xi: Matrix, S: Subspace) -> Subspace:
    if not is_aut_o(alg, xi):
        raise ValueError("operator is not an automorphism acting trivially on the center")
    return canonicalize(xi.apply_rows(S.vectors()), alg.n)


# -- sampling ------------------------------------------------------------------------

_UNIT_QUATS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
               (Fraction(1, 2),) * 4, (Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(-1, 2)),
               (Fraction(3, 5), Fraction(4, 5), 0, 0), (0, 0, Fraction(3, 5), Fraction(-4, 5))]


def _rand_entry(alg: str, rng: SplitMix64, bound: int = 2) -> AlgebraElement:
    return AlgebraElement(alg, tuple(rng.randint(-bound, bound) for _ in range(DIMS[alg])))


def _rand_matrix(alg: str, p: int, rng: SplitMix64) -> AlgMatrix:
    return AlgMatrix(alg, [[_rand_entry(alg, rng) for _ in range(p)] for _ in range(p)])


def _rand_symmetric(alg: str, p: int, rng: SplitMix64) -> AlgMatrix:
    M = _rand_matrix(alg, p, rng)
    rows = [[M[min(i, j), max(i, j)] for j in range(p)] for i in range(p)]
    return AlgMatrix(alg, rows)


def _rand_quat_unitary(p: int, rng: SplitMix64) -> AlgMatrix:
    perm = list(range(p))
    for i in range(p - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    zero = AlgebraElement("H", (0, 0, 0, 0))
    rows = [[zero] * p for _ in range(p)]
    for i in range(p):
        q = rng.choice(_UNIT_QUATS)
        sgn = rng.choice((1, -1))
        rows[i][perm[i]] = AlgebraElement("H", tuple(sgn * c for c in q))
    return AlgMatrix("H", rows)


def sample_param_blocks(m: int, p: int, rng: SplitMix64, isotropic: bool) -> ParamBlocks:
    """Random blocks; with ``isotropic`` the isotropy condition holds by construction."""
    case = m % 8
    alg = _BLOCK_ALGEBRA.get(case)
    if case not in (1, 2, 3):
        raise ValueError("parametric isotropy covers residues 1, 2 and 3")
    A, B, C, D = (_rand_matrix(alg, p, rng) for _ in range(4))
    if isotropic:
        if case in (1, 2):
            B = _rand_symmetric(alg, p, rng) @ A          # A^t S A is symmetric
        else:
            D = _rand_quat_unitary(p, rng) @ (A + C) - B   # B + D = Q (A + C)
    return ParamBlocks(m, A, B, C, D)


def _block_mul(X, Y):
    (a, c), (b, d) = X
    (e, g), (f, h) = Y
    return ((a @ e + c @ f, a @ g + c @ h), (b @ e + d @ f, b @ g + d @ h))


def _sp_generator(alg: str, p: int, rng: SplitMix64):
    I, Z = AlgMatrix.identity(alg, p), AlgMatrix.zeros(alg, p)
    kind = rng.below(3)
    if kind == 0:
        return ((I, _rand_symmetric(alg, p, rng)), (Z, I))
    if kind == 1:
        return ((I, Z), (_rand_symmetric(alg, p, rng), I))
    # diag(G, G^{-t}) with G = I + t E_ij
    if p == 1:
        return ((I.scale(-1), Z), (Z, I.scale(-1)))
    i = rng.below(p)
    j = (i + 1 + rng.below(p - 1)) % p
    t = _rand_entry(alg, rng)
    G = _with_entry(I, i, j, t)
    Ginv_t = _with_entry(I, j, i, AlgebraElement(alg, tuple(-c for c in t.coords)))
    return ((G, Z), (Z, Ginv_t))


def _with_entry(M: AlgMatrix, i: int, j: int, x: AlgebraElement) -> AlgMatrix:
    rows = [list(r) for r in M.rows]
    rows[i][j] = x
    return AlgMatrix(M.algebra, rows)


def _spp_generator(p: int, rng: SplitMix64):
    I, Z = AlgMatrix.identity("H", p), AlgMatrix.zeros("H", p)
    if rng.below(2) == 0:
        return ((_rand_quat_unitary(p, rng), Z), (Z, _rand_quat_unitary(p, rng)))
    c = rng.below(p)
    a = AlgebraElement("H", (Fraction(5, 4), 0, 0, 0))
    b = AlgebraElement("H", (Fraction(3, 4) * rng.choice((1, -1)), 0, 0, 0))
    return ((_with_entry(I, c, c, a), _with_entry(Z, c, c, b)),
            (_with_entry(Z, c, c, b), _with_entry(I, c, c, a)))


def sample_aut_blocks(m: int, p: int, rng: SplitMix64, valid: bool) -> ParamBlocks:
    """Blocks of an automorphism (``valid``) or of a nearby non-automorphism."""
    case = m % 8
    if case in (1, 2):
        alg = _BLOCK_ALGEBRA[case]
        X = _sp_generator(alg, p, rng)
        for _ in range(2):
            X = _block_mul(X, _sp_generator(alg, p, rng))
    elif case == 3:
        X = _spp_generator(p, rng)
        for _ in range(2):
            X = _block_mul(X, _spp_generator(p, rng))
    elif case in (0, 4):
        I, Z = AlgMatrix.identity("R", p), AlgMatrix.zeros("R", p)
        G = I
        for _ in range(3):
            if p == 1:
                G = G.scale(rng.choice((2, Fraction(1, 2), -1)))
                continue
            i = rng.below(p)
            j = (i + 1 + rng.below(p - 1)) % p
            G = G @ _with_entry(I, i, j, AlgebraElement("R", (rng.randint(-2, 2),)))
        Gm = Matrix.from_rows([[G[i, j].coords[0] for j in range(p)] for i in range(p)])
        Dm = inverse(Gm).T
        X = ((G, Z), (Z, AlgMatrix.from_coords("R", Dm.tolist())))
    else:
        raise ValueError("no automorphism blocks for this residue")
    (A, C), (B, D) = X
    if not valid:
        if rng.below(2) == 0:
            D = _with_entry(D, 0, 0, D[0, 0] + AlgebraElement.one(D.algebra))
        else:
            A, B, C, D = (_rand_matrix(A.algebra, p, rng) for _ in range(4))
    return ParamBlocks(m, A, B, C, D)
