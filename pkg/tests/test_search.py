import pytest

from htype_lab.clifford import HTypeSpec
from htype_lab.horizontal import is_horizontal
from htype_lab.htype import build
from htype_lab.lagrangian import certify_lagrangian
from htype_lab.search import SearchConfig, exhaustive_tiny, grid_directions, octonion_suite, random_horizontal


def test_grid_directions():
    d = grid_directions(2, 1)
    assert d == [(0, 1), (1, -1), (1, 0), (1, 1)]
    assert len(grid_directions(2, 2)) == 8     # (1,2),(2,1),(1,-2),(2,-1) on top of the above


def test_exhaustive_counts():
    # in v_1 every line is horizontal
    assert len(exhaustive_tiny(build(HTypeSpec(1, p=1)), 1, 1).found) == 4
    rep = exhaustive_tiny(build(HTypeSpec(2, p=1)), 2, 1)
    assert len(rep.found) == 14 and rep.exhaustive and rep.evidence == "constructive"
    alg = build(HTypeSpec(2, p=1))
    assert all(certify_lagrangian(alg, S).valid for S in rep.found)


def test_exhaustive_empty_is_labelled():
    rep = exhaustive_tiny(build(HTypeSpec(3, pplus=1, pminus=0)), 2, 1)
    assert not rep.found and rep.evidence == "grid-exhaustive"


def test_exhaustive_budget():
    with pytest.raises(ValueError):
        exhaustive_tiny(build(HTypeSpec(8, p=1)), 2, 2)


@pytest.mark.parametrize("spec,expected", [(HTypeSpec(1, p=1), 4), (HTypeSpec(2, p=1), 14)],
                         ids=["m1", "m2"])
def test_random_agrees_with_exhaustive(spec, expected):
    alg = build(spec)
    rep = random_horizontal(alg, SearchConfig(seed=0, trials=5000, coordinate_bound=1, target_dim=alg.n // 2))
    ex = exhaustive_tiny(alg, alg.n // 2, 1)
    assert {S.key() for S in rep.found} <= {S.key() for S in ex.found}
    assert len(rep.found) == expected


def test_centralizer_mode_finds_lagrangians():
    alg = build(HTypeSpec(4, p=1))
    rep = random_horizontal(alg, SearchConfig(seed=1, trials=500, target_dim=4, mode="centralizer"))
    assert rep.found
    assert all(certify_lagrangian(alg, S).valid for S in rep.found)


@pytest.mark.parametrize("spec", [HTypeSpec(5, p=1), HTypeSpec(6, p=1)], ids=lambda s: s.label())
def test_no_half_dim_for_odd_p(spec):
    alg = build(spec)
    rep = random_horizontal(alg, SearchConfig(seed=0, trials=300, coordinate_bound=2, target_dim=alg.n // 2))
    assert not rep.found and rep.evidence == "heuristic"


def test_search_is_seeded():
    alg = build(HTypeSpec(3, pplus=1, pminus=1))
    cfg = SearchConfig(seed=9, trials=200, coordinate_bound=1, target_dim=2)
    a, b = random_horizontal(alg, cfg), random_horizontal(alg, cfg)
    assert a.to_json() == b.to_json()
    assert all(is_horizontal(alg, S) for S in a.found)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(trials=0)
    with pytest.raises(ValueError):
        SearchConfig(mode="greedy")


def test_octonion_suite_small():
    checks, extra = octonion_suite(seed=3, instances=4, search_trials=500)
    assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]
    assert extra["search"].evidence == "heuristic"
