import pytest
from hypothesis import given, settings, strategies as st

from htype_lab.clifford import HTypeSpec, base_generators, make_rep
from htype_lab.exactlin import Matrix
from htype_lab.htype import bracket, build, from_rep, j_action, j_operator, summary, verify_htype

SPECS = [HTypeSpec(1, p=2), HTypeSpec(2, p=1), HTypeSpec(3, pplus=1, pminus=1), HTypeSpec(4, p=1),
         HTypeSpec(7, pplus=0, pminus=1), HTypeSpec(8, p=1), HTypeSpec(9, p=1)]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label())
def test_verify_htype_passes(spec):
    checks = verify_htype(build(spec))
    assert [c.name for c in checks] == ["jz_squared", "bracket_skew", "ad_surjective", "bracket_jz_identity"]
    assert all(c.passed for c in checks)


def vecs(n):
    return st.lists(st.integers(-3, 3), min_size=n, max_size=n)


@settings(max_examples=50, deadline=None)
@given(vecs(8), vecs(8), vecs(4))
def test_bracket_properties(u, v, z):
    alg = build(HTypeSpec(4, p=1))
    assert bracket(alg, u, v) == [-x for x in bracket(alg, v, u)]
    # <[u, v], z> = <J_z u, v>
    lhs = sum(a * b for a, b in zip(bracket(alg, u, v), z))
    rhs = sum(a * b for a, b in zip(j_action(alg, z, u), v))
    assert lhs == rhs
    nu = sum(x * x for x in u)
    assert bracket(alg, u, j_action(alg, z, u)) == [nu * c for c in z]


def test_j_operator_linear():
    alg = build(HTypeSpec(3, pplus=1, pminus=0))
    assert j_operator(alg, [1, 0, 0]) == alg.J[0]
    assert j_operator(alg, [1, 2, 0]) == alg.J[0] + alg.J[1].scale(2)
    with pytest.raises(ValueError):
        j_operator(alg, [1, 0])


def test_non_skew_generators_fail():
    P = Matrix.from_rows([[1, 1], [0, 1]])
    Pinv = Matrix.from_rows([[1, -1], [0, 1]])
    rep = make_rep([P @ base_generators(1).J[0] @ Pinv], "conjugated")
    failed = {c.name for c in verify_htype(from_rep(rep)) if not c.passed}
    assert "bracket_skew" in failed


def test_non_clifford_generators_fail():
    J = base_generators(2).J
    rep = make_rep([J[0], J[0]], "repeated")
    failed = {c.name for c in verify_htype(from_rep(rep)) if not c.passed}
    assert {"jz_squared", "ad_surjective"} <= failed


def test_summary_json_shape():
    s = summary(build(HTypeSpec(2, p=2)))
    assert s["n"] == 8 and s["m"] == 2 and s["mult"] == 2
    assert all(c["passed"] for c in s["htype_checks"])
