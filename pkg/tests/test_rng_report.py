from fractions import Fraction

from hypothesis import given, strategies as st

from htype_lab.exactlin import Matrix
from htype_lab.report import Check, all_passed, dumps, failures, jsonable
from htype_lab.rng import SplitMix64, mix64, trial_seed


def test_splitmix_reference_values():
    # first outputs for seed 0 from the published SplitMix64 reference
    r = SplitMix64(0)
    assert r.next_u64() == 0xE220A8397B1DCDAF
    assert r.next_u64() == 0x6E789E6AA1B965F4


@given(st.integers(0, 2 ** 64 - 1), st.integers(1, 1000))
def test_below_in_range(seed, bound):
    r = SplitMix64(seed)
    assert all(0 <= r.below(bound) < bound for _ in range(5))


def test_streams_are_independent_of_order():
    assert trial_seed(5, 3) == trial_seed(5, 3)
    assert trial_seed(5, 3) != trial_seed(5, 4)
    assert 0 <= mix64(2 ** 70) < 2 ** 64


def test_nonzero_vector():
    r = SplitMix64(1)
    assert all(any(r.nonzero_int_vector(3, 1)) for _ in range(50))


def test_report_helpers():
    checks = [Check("a", True, ""), Check("b", False, "why")]
    assert not all_passed(checks) and failures(checks) == [checks[1]]
    assert checks[1].line() == "FAIL  b  why"
    assert jsonable({"x": Fraction(1, 3), "M": Matrix.identity(1)}) == {"x": "1/3", "M": [["1"]]}
    assert dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'
