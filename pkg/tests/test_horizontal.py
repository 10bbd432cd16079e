from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from htype_lab.clifford import HTypeSpec
from htype_lab.exactlin import canonicalize, orth_complement
from htype_lab.horizontal import (allowed_dims, bracket_gram, centralizer, dim_bounds, extend_horizontal,
                                  is_horizontal, is_maximal_horizontal, j_span)
from htype_lab.htype import bracket, build
from htype_lab.lagrangian import plus_space


def brute_horizontal(alg, S):
    vs = [[v.get(i, 0) for i in range(alg.n)] for v in S.vectors()]
    return all(not any(bracket(alg, a, b)) for a in vs for b in vs)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-1, 1), min_size=8, max_size=8), min_size=1, max_size=3))
def test_is_horizontal_matches_bracket_loop(rows):
    alg = build(HTypeSpec(5, p=1))
    S = canonicalize(rows, 8)
    assert is_horizontal(alg, S) == brute_horizontal(alg, S)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=8, max_size=8).filter(any))
def test_centralizer_definition(v):
    alg = build(HTypeSpec(4, p=1))
    S = canonicalize([v])
    C = centralizer(alg, S)
    assert C.contains_subspace(S)
    for w in C.vectors():
        assert not any(bracket(alg, [w.get(i, 0) for i in range(8)], v))
    assert C == orth_complement(j_span(alg, S))


def test_bracket_gram_shape():
    alg = build(HTypeSpec(2, p=1))
    G = bracket_gram(alg, [{0: 1}], [{1: 1}, {2: 1}])
    assert len(G) == 2 and G[0].shape == (1, 2)


def test_allowed_dims():
    assert allowed_dims(16, 8) == {2, 4, 8}
    assert allowed_dims(8, 4) == {2, 4}
    assert allowed_dims(2, 1) == {1}
    with pytest.raises(ValueError):
        allowed_dims(0, 1)


def test_dim_bounds():
    assert dim_bounds(16, 8) == (Fraction(16, 9), 8)
    lo, hi = dim_bounds(32, 8)
    assert lo * 9 == 32 and hi == 16


def test_plus_space_is_maximal():
    alg = build(HTypeSpec(8, p=1))
    assert is_maximal_horizontal(alg, plus_space(alg))


@pytest.mark.parametrize("spec", [HTypeSpec(1, p=1), HTypeSpec(2, p=2), HTypeSpec(4, p=1), HTypeSpec(8, p=1),
                                  HTypeSpec(3, pplus=1, pminus=1), HTypeSpec(6, p=1)], ids=lambda s: s.label())
def test_extension_is_maximal(spec):
    alg = build(spec)
    S = extend_horizontal(alg, canonicalize([{0: 1}], alg.n))
    assert is_maximal_horizontal(alg, S)
    lo, hi = dim_bounds(alg.n, alg.m)
    assert lo <= S.dim <= hi


def test_extension_rejects_non_horizontal_seed():
    alg = build(HTypeSpec(1, p=1))
    with pytest.raises(ValueError):
        extend_horizontal(alg, canonicalize([[1, 0], [0, 1]]))


def test_extension_respects_invariance():
    alg = build(HTypeSpec(4, p=1))
    K = alg.rep.K
    S = extend_horizontal(alg, canonicalize([{0: 1}], alg.n), invariance=[K])
    assert is_maximal_horizontal(alg, S)
    assert all(S.contains(K.apply(v)) for v in S.vectors())


def test_multiplicity_two_breaks_divisor_set():
    """w+ of one v_8 copy plus a maximal 2-plane of the other is maximal of dim 10.

    The centralizer splits over the two copies, so maximality is checked per
    copy; 10 is not of the form 32/k for 2 <= k <= 9.
    """
    one = build(HTypeSpec(8, p=1))
    two = build(HTypeSpec(8, p=2))
    wp = plus_space(one)
    plane = extend_horizontal(one, canonicalize([{0: 1, 8: 1}], 16))
    assert plane.dim == 2 and is_maximal_horizontal(one, plane)
    vecs = list(wp.vectors()) + [{k + 16: x for k, x in v.items()} for v in plane.vectors()]
    S = canonicalize(vecs, 32)
    assert S.dim == 10
    assert is_maximal_horizontal(two, S)
    assert 10 not in allowed_dims(32, 8)
    lo, hi = dim_bounds(32, 8)
    assert lo <= 10 <= hi
