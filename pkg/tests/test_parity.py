import itertools
import math

import numpy as np
import pytest
from hypothesis import given

from parityrev import (TruthTable, bitflip_coverage, convert_irreversible,
                       count_parity_preserving, enumerate_parity_preserving, min_extra_bits,
                       profile, single_bitflip_detectable)
from parityrev.errors import PreconditionViolated, TooLarge
from parityrev.parity import ParityProfile, PatternGroup

from .oracles import brute_min_extra_bits
from .strategies import truth_tables


def test_profile_half_adder(half_adder):
    assert profile(half_adder).as_dict() == {"00": (1, 0), "10": (2, 0), "01": (0, 1)}


def test_profile_full_adder(full_adder):
    # 111 is odd while 11 is even, so the carry-and-sum row is a mismatch
    assert profile(full_adder).as_dict() == {"00": (1, 0), "10": (3, 0), "01": (0, 3),
                                             "11": (0, 1)}


def test_profile_identity(identity2):
    p = profile(identity2)
    assert p.num_groups == 4
    assert all((g.match_count, g.mismatch_count) == (1, 0) for g in p)


@given(truth_tables())
def test_profile_counts_sum_to_rows(t):
    p = profile(t)
    assert p.total_rows == t.num_rows
    assert all(g.size >= 1 for g in p)
    assert 1 <= p.num_groups <= t.num_rows


@given(truth_tables(max_inputs=6, max_outputs=6))
def test_square_parity_preserving_has_no_mismatch(t):
    if t.is_square:
        inputs, outputs = t.defined_rows()
        from parityrev.core import parity_of
        pp = np.array_equal(parity_of(inputs), parity_of(outputs))
        assert pp == all(g.mismatch_count == 0 for g in profile(t))


@pytest.mark.parametrize("fixture, expected", [("half_adder", 2), ("full_adder", 3),
                                               ("identity2", 1), ("cnot", 1)])
def test_min_extra_bits(request, fixture, expected):
    assert min_extra_bits(profile(request.getfixturevalue(fixture))) == expected


def test_min_extra_bits_skips_empty_classes():
    p = ParityProfile(3, 1, {0: PatternGroup(None, 5, 0), 1: PatternGroup(None, 0, 3)})
    assert min_extra_bits(p) == 4


def test_min_extra_bits_is_one_iff_classes_at_most_one(full_adder, identity2):
    assert min_extra_bits(profile(identity2)) == 1
    assert min_extra_bits(profile(full_adder)) > 1


@given(truth_tables(max_inputs=5, max_outputs=3))
def test_merging_patterns_never_lowers_bound(t):
    p = profile(t)
    if p.num_groups < 2:
        return
    a, b = sorted(p.groups)[:2]
    merged = TruthTable(t.num_inputs, t.num_outputs,
                        np.where(t.outputs == np.uint64(b), np.uint64(a), t.outputs))
    assert min_extra_bits(profile(merged)) >= min_extra_bits(p)


def exact_minimum(t):
    """Lower-bound formula, except 0 when rows are already distinct and matching."""
    p = profile(t)
    if p.num_groups == t.num_rows and all(g.mismatch_count == 0 for g in p):
        return 0
    return min_extra_bits(p)


def _all_tables(n, m):
    for outs in itertools.product(range(1 << m), repeat=1 << n):
        yield TruthTable(n, m, outs)


@pytest.mark.parametrize("n, m", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_bound_is_exact_minimum_exhaustive(n, m):
    for t in _all_tables(n, m):
        assert exact_minimum(t) == brute_min_extra_bits(t.outputs.tolist(), n, m), t.rows()


def test_bound_is_exact_minimum_random_three_inputs():
    rng = np.random.default_rng(3)
    for _ in range(60):
        m = int(rng.integers(1, 4))
        outs = rng.integers(0, 1 << m, size=8).tolist()
        t = TruthTable(3, m, outs)
        assert exact_minimum(t) == brute_min_extra_bits(outs, 3, m), t.rows()


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 4), (3, 576), (4, 1_625_702_400)])
def test_count_parity_preserving(n, expected):
    assert count_parity_preserving(n) == expected


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_count(n):
    assert enumerate_parity_preserving(n) == count_parity_preserving(n)


def test_enumeration_refuses_large_n():
    with pytest.raises(TooLarge):
        enumerate_parity_preserving(4)


def test_count_is_exact_for_large_n():
    # 2**(n-1) factorial squared, computed as an explicit product
    assert count_parity_preserving(6) == math.prod(range(1, 33)) ** 2


def test_single_flips_detected_after_conversion(half_adder, full_adder):
    assert single_bitflip_detectable(convert_irreversible(half_adder))
    assert single_bitflip_detectable(convert_irreversible(full_adder))


def test_double_flips_never_detected(full_adder):
    converted = convert_irreversible(full_adder)
    assert bitflip_coverage(converted, 1) == 1.0
    assert bitflip_coverage(converted, 2) == 0.0
    assert bitflip_coverage(converted, 3) == 1.0


def test_single_flip_needs_parity_preservation(cnot):
    with pytest.raises(PreconditionViolated):
        single_bitflip_detectable(cnot)
