"""Explicit matrix representations of the Clifford algebras C(m).

Irreducible modules for m <= 8 come from the division algebras; larger m are
built by the mod 8 periodicity ``v_{8+w} = v_8 (x) v_w`` with generators
``J_t (x) Id`` followed by ``K_8 (x) J'_w``.  Every representation is checked
against the Clifford relations when it is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

from .algebra_tables import DIMS, AlgebraElement, conjugate, left_mult_matrix, multiply, right_mult_matrix
from .exactlin import Matrix
from .report import Check


def expected_dim(m: int) -> int:
    """Dimension of an irreducible C(m)-module."""
    if m < 1:
        raise ValueError("m must be at least 1")
    k = m // 2
    return 2 ** k if m % 8 in (0, 6, 7) else 2 ** (k + 1)


def needs_sign(m: int) -> bool:
    return m % 4 == 3


@dataclass(frozen=True)
class CliffordRep:
    m: int
    n: int
    J: Tuple[Matrix, ...]
    K: Matrix
    construction: str

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "construction": self.construction,
            "generators": [j.to_json() for j in self.J],
        }


def volume_element(J: Sequence[Matrix]) -> Matrix:
    K = J[0]
    for j in J[1:]:
        K = K @ j
    return K


def make_rep(J: Sequence[Matrix], construction: str) -> CliffordRep:
    J = tuple(J)
    if not J:
        raise ValueError("need at least one generator")
    n = J[0].rows
    return CliffordRep(len(J), n, J, volume_element(J), construction)


# -- base models --------------------------------------------------------------

def _matrix_of(fn: Callable[[List], List], n: int) -> Matrix:
    cols = []
    for j in range(n):
        e = [int(t == j) for t in range(n)]
        cols.append(fn(e))
    return Matrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)])


def _pair_model(alg: str) -> List[Matrix]:
    """J_z(x, y) = (-z conj(y), conj(x) z) on F x F, z running over the basis of F."""
    d = DIMS[alg]
    gens = []
    for i in range(d):
        z = AlgebraElement.basis(alg, i)

        def act(v, z=z):
            x = AlgebraElement(alg, tuple(v[:d]))
            y = AlgebraElement(alg, tuple(v[d:]))
            a = multiply(z, conjugate(y))
            b = multiply(conjugate(x), z)
            return [-c for c in a.coords] + list(b.coords)

        gens.append(_matrix_of(act, 2 * d))
    return gens


def _imaginary_model(alg: str, sign: int) -> Tuple[List[Matrix], str]:
    """Left (sign +1) or right (sign -1) multiplication by the imaginary units."""
    d = DIMS[alg]
    mult = left_mult_matrix if sign == 1 else right_mult_matrix
    gens = [mult(AlgebraElement.basis(alg, i)) for i in range(1, d)]
    K = volume_element(gens)
    tag = "left" if sign == 1 else "right"
    if K == Matrix.identity(d).scale(-sign):
        # The plain model has the opposite volume sign; flipping J1 fixes it.
        gens[0] = -gens[0]
        tag += ",j1-negated"
        K = volume_element(gens)
    if K != Matrix.identity(d).scale(sign):
        raise AssertionError(f"volume element of the {tag} model is not {sign:+d} Id")
    return gens, tag


def _check_or_raise(rep: CliffordRep) -> CliffordRep:
    bad = [c for c in verify_clifford(rep) if not c.passed]
    if bad:
        raise AssertionError(f"construction {rep.construction} fails: {bad[0].name} {bad[0].detail}")
    return rep


@lru_cache(maxsize=None)
def base_generators(m: int, sign: Optional[int] = None) -> CliffordRep:
    """Irreducible C(m)-module for 1 <= m <= 8."""
    if not 1 <= m <= 8:
        raise ValueError("base_generators covers 1 <= m <= 8")
    _check_sign(m, sign)
    if m in (1, 4, 8):
        alg = {1: "R", 4: "H", 8: "O"}[m]
        rep = make_rep(_pair_model(alg), f"base:m={m}:{alg}xF-pair")
    elif m == 2:
        i, j = AlgebraElement.basis("H", 1), AlgebraElement.basis("H", 2)
        rep = make_rep([left_mult_matrix(i), left_mult_matrix(j)], "base:m=2:H-left(i,j)")
    elif m in (3, 7):
        alg = "H" if m == 3 else "O"
        gens, tag = _imaginary_model(alg, sign)
        rep = make_rep(gens, f"base:m={m}:sign={sign:+d}:{alg}-{tag}")
    else:
        gens = base_generators(7, 1).J[:m]
        rep = make_rep(gens, f"base:m={m}:restrict(m=7,sign=+1)")
    return _check_or_raise(rep)


def _check_sign(m: int, sign: Optional[int]) -> None:
    if needs_sign(m):
        if sign not in (1, -1):
            raise ValueError(f"m={m} requires sign +1 or -1")
    elif sign is not None:
        raise ValueError(f"sign is only meaningful when m = 3 mod 4 (got m={m})")


def tensor_rep(outer: CliffordRep, inner: CliffordRep) -> CliffordRep:
    """Generators ``J_t (x) Id`` then ``K_outer (x) J'_w``; needs outer.m = 0 mod 4."""
    if outer.m % 4 != 0:
        raise ValueError("outer factor must have m = 0 mod 4")
    I_in = Matrix.identity(inner.n)
    gens = [j.kron(I_in) for j in outer.J] + [outer.K.kron(j) for j in inner.J]
    return make_rep(gens, f"tensor({outer.construction};{inner.construction})")


@lru_cache(maxsize=None)
def periodic_generators(m: int, sign: Optional[int] = None) -> CliffordRep:
    """Irreducible C(m)-module for m > 8 as v_8 (x) ... (x) v_8 (x) v_r, r in 1..8."""
    if m <= 8:
        raise ValueError("periodic_generators needs m > 8")
    _check_sign(m, sign)
    rep = tensor_rep(base_generators(8), irreducible(m - 8, sign))
    if needs_sign(m) and rep.K != Matrix.identity(rep.n).scale(sign):
        raise AssertionError("volume element sign not preserved by the tensor step")
    return _check_or_raise(rep)


def irreducible(m: int, sign: Optional[int] = None) -> CliffordRep:
    return base_generators(m, sign) if m <= 8 else periodic_generators(m, sign)


# -- multiplicities -------------------------------------------------------------

@dataclass(frozen=True)
class HTypeSpec:
    """Which algebra to build: ``p`` copies, or ``(pplus, pminus)`` when m = 3 mod 4."""

    m: int
    p: Optional[int] = None
    pplus: Optional[int] = None
    pminus: Optional[int] = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if needs_sign(self.m):
            if self.p is not None:
                raise ValueError(f"m={self.m} = 3 mod 4 takes (pplus, pminus), not p")
            if self.pplus is None or self.pminus is None:
                raise ValueError(f"m={self.m} = 3 mod 4 requires both pplus and pminus")
            if self.pplus < 0 or self.pminus < 0 or self.pplus + self.pminus == 0:
                raise ValueError("pplus, pminus must be >= 0 and not both zero")
        else:
            if self.pplus is not None or self.pminus is not None:
                raise ValueError(f"pplus/pminus only apply when m = 3 mod 4 (got m={self.m})")
            if self.p is None or self.p < 1:
                raise ValueError("p must be >= 1")

    @property
    def mult(self):
        return (self.pplus, self.pminus) if needs_sign(self.m) else self.p

    @property
    def total(self) -> int:
        return self.pplus + self.pminus if needs_sign(self.m) else self.p

    def copy_signs(self) -> List[Optional[int]]:
        if needs_sign(self.m):
            return [1] * self.pplus + [-1] * self.pminus
        return [None] * self.p

    @property
    def n(self) -> int:
        return expected_dim(self.m) * self.total

    def label(self) -> str:
        if needs_sign(self.m):
            return f"m={self.m},p+={self.pplus},p-={self.pminus}"
        return f"m={self.m},p={self.p}"

    def to_json(self) -> dict:
        if needs_sign(self.m):
            return {"m": self.m, "pplus": self.pplus, "pminus": self.pminus}
        return {"m": self.m, "p": self.p}


def direct_sum(reps: Sequence[CliffordRep], construction: str) -> CliffordRep:
    m = reps[0].m
    if any(r.m != m for r in reps):
        raise ValueError("all summands must share m")
    gens = [Matrix.block_diag([r.J[i] for r in reps]) for i in range(m)]
    return CliffordRep(m, sum(r.n for r in reps), tuple(gens),
                       Matrix.block_diag([r.K for r in reps]), construction)


@lru_cache(maxsize=None)
def assemble(spec: HTypeSpec) -> CliffordRep:
    """Block-diagonal sum of irreducible copies, + copies first."""
    copies = [irreducible(spec.m, s) for s in spec.copy_signs()]
    return direct_sum(copies, f"block-sum[{spec.label()}]")


# -- verification ------------------------------------------------------------------

def verify_clifford(rep: CliffordRep) -> List[Check]:
    """Exact check of J_i^2 = -I, anticommutation, skewness and the volume element."""
    checks: List[Check] = []
    n = rep.n
    minus_I = Matrix.identity(n).scale(-1)
    sq_bad = [i + 1 for i, j in enumerate(rep.J) if j.shape != (n, n) or j @ j != minus_I]
    checks.append(Check("square_is_minus_identity", not sq_bad,
                        f"m={rep.m}" if not sq_bad else f"fails at J{sq_bad[0]}"))
    anti_bad = None
    for a in range(rep.m):
        for b in range(a + 1, rep.m):
            if not (rep.J[a] @ rep.J[b] + rep.J[b] @ rep.J[a]).is_zero():
                anti_bad = (a + 1, b + 1)
                break
        if anti_bad:
            break
    checks.append(Check("anticommute", anti_bad is None,
                        f"{rep.m * (rep.m - 1) // 2} pairs" if anti_bad is None else f"fails at J{anti_bad[0]},J{anti_bad[1]}"))
    skew_bad = [i + 1 for i, j in enumerate(rep.J) if j.T != -j]
    checks.append(Check("skew_symmetric", not skew_bad,
                        f"m={rep.m}" if not skew_bad else f"fails at J{skew_bad[0]}"))
    checks.append(Check("volume_element", rep.K == volume_element(rep.J),
                        "K = J1...Jm"))
    return checks


def k_profile(rep: CliffordRep) -> dict:
    """Square and symmetry type of the volume element."""
    n = rep.n
    K = rep.K
    sq = K @ K
    if sq.is_identity():
        square = 1
    elif sq == Matrix.identity(n).scale(-1):
        square = -1
    else:
        square = None
    if K.T == K:
        sym = "symmetric"
    elif K.T == -K:
        sym = "skew"
    else:
        sym = "neither"
    return {"square": square, "transpose": sym}


def expected_k_profile(m: int) -> dict:
    if m % 4 in (1, 2):
        return {"square": -1, "transpose": "skew"}
    return {"square": 1, "transpose": "symmetric"}
