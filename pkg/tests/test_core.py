import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from parityrev import BitRow, ParityClass, TruthTable, is_parity_preserving, is_reversible, row_parity
from parityrev.core import ceil_log2, parity_of
from parityrev.errors import TooLarge, WidthMismatch


@pytest.mark.parametrize("bits, expected", [("101", 0), ("01", 1), ("", 0)])
def test_row_parity(bits, expected):
    assert row_parity(BitRow.from_str(bits)) == expected
    assert row_parity(bits) == expected


@pytest.mark.parametrize("width", range(0, 17))
def test_single_flip_always_changes_parity(width):
    # exhaustive over all rows for small widths, sampled above 12
    values = range(1 << width) if width <= 12 else np.random.default_rng(width).integers(
        0, 1 << width, 2000).tolist()
    for v in values:
        r = BitRow(width, v)
        for b in range(width):
            assert row_parity(BitRow(width, v ^ (1 << b))) != row_parity(r)


def test_bitrow_equality_and_bits():
    assert BitRow.from_str("0110") == BitRow.from_bits([0, 1, 1, 0])
    assert BitRow.from_str("0110") != BitRow.from_str("110")
    assert BitRow(4, 6).bits == (0, 1, 1, 0)
    assert str(BitRow(3, 1)) == "001"


@pytest.mark.parametrize("bad", [dict(width=-1), dict(width=2, value=4)])
def test_bitrow_rejects_bad_values(bad):
    with pytest.raises(ValueError):
        BitRow(**bad)


def test_parity_class_complement():
    assert ParityClass.MATCH.complement() is ParityClass.MISMATCH
    assert ParityClass.MISMATCH.complement() is ParityClass.MATCH


def test_vectorized_parity_matches_scalar():
    words = np.arange(1 << 12, dtype=np.uint64)
    assert parity_of(words).tolist() == [bin(w).count("1") & 1 for w in range(1 << 12)]


@pytest.mark.parametrize("count, expected", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (184756, 18)])
def test_ceil_log2(count, expected):
    assert ceil_log2(count) == expected


def test_table_construction_checks():
    with pytest.raises(ValueError):
        TruthTable(0, 1, [0])
    with pytest.raises(ValueError):
        TruthTable(2, 1, [0, 1, 0])
    with pytest.raises(ValueError):
        TruthTable(1, 1, [0, 2])
    with pytest.raises(TooLarge):
        TruthTable(25, 1, [])
    t = TruthTable(1, 1, [1, 0])
    with pytest.raises(ValueError):
        t.outputs[0] = 0


def test_table_equality_ignores_name():
    assert TruthTable(1, 1, [0, 1], name="a") == TruthTable(1, 1, [0, 1], name="b")
    assert TruthTable(1, 1, [0, 1]) != TruthTable(1, 2, [0, 1])


def test_is_reversible(half_adder, full_adder, identity2):
    assert not is_reversible(half_adder)
    assert not is_reversible(full_adder)
    assert is_reversible(identity2)


def test_is_parity_preserving(fredkin, cnot, identity2):
    assert is_parity_preserving(fredkin)
    assert not is_parity_preserving(cnot)
    assert is_parity_preserving(identity2)


def test_parity_preserving_needs_square(full_adder):
    with pytest.raises(WidthMismatch):
        is_parity_preserving(full_adder)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.permutations(range(1 << n)), st.permutations(range(1 << n)))))
def test_reversibility_invariant_under_relabeling(pair):
    outputs, relabel = pair
    n = (len(outputs) - 1).bit_length()
    t = TruthTable(n, n, outputs)
    relabeled = TruthTable(n, n, [outputs[relabel[i]] for i in range(len(outputs))])
    assert is_reversible(t) == is_reversible(relabeled)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_one_bad_row_breaks_parity_preservation(n):
    for row in range(1 << n):
        outputs = list(range(1 << n))
        outputs[row] ^= 1  # flip one bit of one row
        assert not is_parity_preserving(TruthTable(n, n, outputs))


def test_odd_parity_rows_are_half():
    for n in range(1, 11):
        words = np.arange(1 << n, dtype=np.uint64)
        assert int(parity_of(words).sum()) == 1 << (n - 1)


def test_from_rows_round_trip():
    rows = ["".join(bits) for bits in itertools.product("01", repeat=3)]
    t = TruthTable.from_rows(rows)
    assert t.rows() == rows and t.num_inputs == 3
