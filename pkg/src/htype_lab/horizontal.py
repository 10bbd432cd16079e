"""Horizontal (isotropic) subspaces of the first layer v.

A subspace S of v is horizontal when the bracket vanishes on S x S.  Its
centralizer is the orthogonal complement of J_1 S + ... + J_m S, and S is
maximal exactly when it equals its centralizer.
"""

from __future__ import annotations

from itertools import combinations
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from .exactlin import Echelon, Matrix, SparseVec, Subspace, axpy, canonicalize, dot, orth_complement
from .htype import HTypeAlgebra


def _check_ambient(alg: HTypeAlgebra, S: Subspace) -> None:
    if S.ambient_dim != alg.n:
        raise ValueError(f"subspace lives in dimension {S.ambient_dim}, algebra has n={alg.n}")


def bracket_gram(alg: HTypeAlgebra, X: Sequence[SparseVec], Y: Sequence[SparseVec]) -> List[Matrix]:
    """The m matrices G_i[a][b] = <J_i x_a, y_b>."""
    out = []
    for J in alg.J:
        rows = []
        for x in X:
            jx = J.apply(x)
            rows.append({b: s for b, y in enumerate(Y) if (s := dot(jx, y)) != 0})
        out.append(Matrix(len(X), len(Y), rows))
    return out


def _index(vectors: Sequence[SparseVec]):
    """Column index: coordinate -> list of (row, value)."""
    idx = {}
    for a, v in enumerate(vectors):
        for k, x in v.items():
            idx.setdefault(k, []).append((a, x))
    return idx


def is_isotropic_pair(alg: HTypeAlgebra, X: Sequence[SparseVec], Y: Sequence[SparseVec]) -> bool:
    """True when every bracket [x, y] with x in X, y in Y vanishes."""
    if not X or not Y:
        return True
    idx = _index(Y)
    for J in alg.J:
        for x in X:
            acc = {}
            for k, c in J.apply(x).items():
                for b, y in idx.get(k, ()):
                    s = acc.get(b, 0) + c * y
                    acc[b] = s
            if any(acc.values()):
                return False
    return True


def is_horizontal(alg: HTypeAlgebra, S: Subspace) -> bool:
    _check_ambient(alg, S)
    vecs = S.vectors()
    return is_isotropic_pair(alg, vecs, vecs)


def j_span(alg: HTypeAlgebra, S: Subspace) -> Subspace:
    """J_1 S + ... + J_m S."""
    _check_ambient(alg, S)
    return canonicalize([J.apply(v) for J in alg.J for v in S.vectors()], alg.n)


def centralizer(alg: HTypeAlgebra, S: Subspace) -> Subspace:
    """{w in v : [w, s] = 0 for all s in S}."""
    return orth_complement(j_span(alg, S))


def is_maximal_horizontal(alg: HTypeAlgebra, S: Subspace) -> bool:
    return is_horizontal(alg, S) and centralizer(alg, S) == S


def allowed_dims(n: int, m: int) -> Set[int]:
    """{n/k : 2 <= k <= m+1, k divides n}."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    return {n // k for k in range(2, m + 2) if n % k == 0}


def dim_bounds(n: int, m: int) -> Tuple[Fraction, Fraction]:
    """Interval [n/(m+1), n/2] holding the dimension of every maximal horizontal subspace.

    A maximal S has J_1 S + ... + J_m S = S^perp, so n - d <= m d; and J_1 S lies
    in S^perp, so d <= n - d.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    return Fraction(n, m + 1), Fraction(n, 2)


def _closure(S: Subspace, vecs: Iterable[SparseVec], ops: Sequence[Matrix]) -> Subspace:
    """Smallest subspace containing S and vecs that is invariant under ops."""
    e = Echelon(S.ambient_dim)
    for v in S.vectors():
        e.add(v)
    queue = [v for v in vecs if e.add(v)]
    while queue:
        v = queue.pop()
        for op in ops:
            w = op.apply(v)
            if e.add(w):
                queue.append(w)
    return canonicalize(e.to_matrix())


def _candidates(alg: HTypeAlgebra, S: Subspace, C: Subspace, pairs: bool) -> List[SparseVec]:
    base = [c for c in C.vectors() if not S.contains(c)]
    if not pairs:
        return base
    out = []
    for a, b in combinations(range(len(base)), 2):
        for sgn in (1, -1):
            v = dict(base[a])
            axpy(v, sgn, base[b])
            out.append(v)
    return out


def _step(alg: HTypeAlgebra, S: Subspace, ops: Sequence[Matrix], skip: Optional[Subspace]):
    C = centralizer(alg, S)
    if C == S:
        return None, C
    for pairs in (False, True) if ops else (False,):
        for c in _candidates(alg, S, C, pairs):
            T = _closure(S, [c], ops) if ops else canonicalize(list(S.vectors()) + [c], alg.n)
            if skip is not None and T == skip:
                continue
            if not ops or is_horizontal(alg, T):
                return T, C
    raise _Stuck()


class _Stuck(Exception):
    pass


def extend_horizontal(alg: HTypeAlgebra, seed: Subspace,
                      invariance: Optional[Sequence[Matrix]] = None) -> Subspace:
    """Greedily enlarge a horizontal seed until it equals its centralizer.

    Candidates are the canonical basis vectors of the current centralizer, in
    order.  With ``invariance`` operators each candidate is added together with
    its orbit closure, and sums/differences of candidate pairs are tried when
    no single candidate works.  On a dead end the last step is undone once and
    the next alternative is taken.
    """
    _check_ambient(alg, seed)
    if not is_horizontal(alg, seed):
        raise ValueError("seed is not horizontal")
    ops = list(invariance or [])
    if ops:
        seed = _closure(seed, [], ops)
        if not is_horizontal(alg, seed):
            raise ValueError("invariant closure of the seed is not horizontal")
    history = [seed]
    S = seed
    backtracked = False
    while True:
        try:
            T, C = _step(alg, S, ops, None)
        except _Stuck:
            if backtracked or len(history) < 2:
                raise RuntimeError("extend_horizontal: no admissible extension found")
            backtracked = True
            dead = history.pop()
            S = history[-1]
            try:
                T, C = _step(alg, S, ops, dead)
            except _Stuck:
                raise RuntimeError("extend_horizontal: no admissible extension found after backtracking")
        if T is None:
            return S
        history.append(T)
        S = T
