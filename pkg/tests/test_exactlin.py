from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from htype_lab.exactlin import (Echelon, Matrix, Subspace, canonicalize, contains, image, intersect, inverse,
                                kernel, orth_complement, pm1_eigenspace, rank, solve, span_sum, to_scalar)

small = st.integers(-3, 3)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


def _perm_sign(p):
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        s *= -1 if length % 2 == 0 else 1
    return s


def _det(rows):
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        prod = _perm_sign(p)
        for i in range(n):
            prod *= rows[i][p[i]]
        total += prod
    return total


def _rank_by_minors(rows):
    """Largest k with a nonzero k x k minor; independent of elimination."""
    from itertools import combinations
    r, c = len(rows), len(rows[0])
    for k in range(min(r, c), 0, -1):
        for I in combinations(range(r), k):
            for J in combinations(range(c), k):
                if _det([[rows[i][j] for j in J] for i in I]) != 0:
                    return k
    return 0


def test_to_scalar_rejects_floats():
    with pytest.raises(TypeError):
        to_scalar(0.5)
    with pytest.raises(TypeError):
        to_scalar(True)
    assert to_scalar("3/6") == Fraction(1, 2)


def test_matrix_basics():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    assert A @ Matrix.identity(2) == A
    assert A.T[0, 1] == 3
    assert A.trace() == 5
    assert (A - A).is_zero()
    assert Matrix.from_json(A.to_json()) == A
    with pytest.raises(ValueError):
        A @ Matrix.zeros(3, 1)


def test_inverse_singular():
    with pytest.raises(ValueError):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))
    A = Matrix.from_rows([[2, 1], [1, 1]])
    assert (A @ inverse(A)).is_identity()


def test_kron_shape_and_entries():
    A = Matrix.from_rows([[1, 2], [0, 1]])
    B = Matrix.from_rows([[0, 1], [1, 0]])
    K = A.kron(B)
    assert K.shape == (4, 4)
    assert K[0, 3] == 2 and K[2, 3] == 1 and K[2, 1] == 0 and K[3, 2] == 1


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_minor_expansion(rows):
    assert rank(Matrix.from_rows(rows)) == _rank_by_minors(rows)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    M = Matrix.from_rows(rows)
    assert rank(M) + kernel(M).dim == M.cols
    for v in kernel(M).vectors():
        assert not M.apply(v)


@settings(max_examples=60, deadline=None)
@given(matrices(cols=st.just(5)))
def test_orth_complement_properties(rows):
    S = canonicalize(Matrix.from_rows(rows))
    P = orth_complement(S)
    assert S.dim + P.dim == 5
    assert orth_complement(P) == S
    for u in S.vectors():
        for w in P.vectors():
            assert sum(x * w.get(k, 0) for k, x in u.items()) == 0


@settings(max_examples=60, deadline=None)
@given(matrices(cols=st.just(4)), matrices(cols=st.just(4)))
def test_sum_intersection_dimension(a, b):
    S, T = canonicalize(Matrix.from_rows(a)), canonicalize(Matrix.from_rows(b))
    assert span_sum(S, T).dim + intersect(S, T).dim == S.dim + T.dim
    assert S.contains_subspace(intersect(S, T))
    assert span_sum(S, T).contains_subspace(T)


@settings(max_examples=40, deadline=None)
@given(matrices(cols=st.just(4)), st.permutations(range(5)))
def test_canonical_form_ignores_basis_order(rows, perm):
    vecs = [dict(enumerate(r)) for r in rows]
    shuffled = [vecs[i] for i in perm if i < len(vecs)]
    assert canonicalize(vecs, 4) == canonicalize(shuffled, 4)
    assert canonicalize(vecs, 4).key() == canonicalize(shuffled, 4).key()


@settings(max_examples=40, deadline=None)
@given(matrices(rows=st.just(3), cols=st.just(3)), st.lists(small, min_size=3, max_size=3))
def test_solve_consistent(rows, x):
    M = Matrix.from_rows(rows)
    b = [sum(rows[i][j] * x[j] for j in range(3)) for i in range(3)]
    y = solve(M, b)
    assert y is not None
    assert [sum(rows[i][j] * y[j] for j in range(3)) for i in range(3)] == b


def test_pm1_eigenspace():
    swap = Matrix.from_rows([[0, 1], [1, 0]])
    assert pm1_eigenspace(swap, 1) == canonicalize([[1, 1]])
    assert pm1_eigenspace(swap, -1) == canonicalize([[1, -1]])
    with pytest.raises(ValueError):
        pm1_eigenspace(Matrix.from_rows([[2, 0], [0, 1]]), 1)


def test_subspace_helpers():
    S = canonicalize([[1, 1, 0]])
    assert contains(S, [2, 2, 0]) and not contains(S, [1, 0, 0])
    assert Subspace.zero(3).dim == 0 and Subspace.full(3).dim == 3
    M = Matrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert image(M, S) == S
    e = Echelon(3)
    assert e.add({0: 1, 1: 1}) and not e.add({0: 2, 1: 2})
    assert e.contains({0: -1, 1: -1})
