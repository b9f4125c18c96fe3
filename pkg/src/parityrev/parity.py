"""Parity-structure analysis of truth tables.

Rows sharing an output pattern are split into a *match* class (input parity
equals output parity) and a *mismatch* class. The size of the largest class
fixes how many distinguishing bits a conversion needs.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .core import (WORD, BitRow, TruthTable, ceil_log2, is_parity_preserving,
                   is_reversible, parity_of)
from .errors import PreconditionViolated, TooLarge

#: Largest variable count for which exhaustive enumeration is allowed.
ENUMERATION_LIMIT = 3


@dataclass(frozen=True)
class PatternGroup:
    pattern: BitRow
    match_count: int
    mismatch_count: int

    @property
    def size(self) -> int:
        return self.match_count + self.mismatch_count

    @property
    def largest_class(self) -> int:
        return max(self.match_count, self.mismatch_count)


@dataclass(frozen=True)
class ParityProfile:
    """Per-pattern match/mismatch counts of one table, keyed by pattern value."""

    num_inputs: int
    num_outputs: int
    groups: dict[int, PatternGroup] = field(default_factory=dict)

    @property
    def num_groups(self) -> int:
        return len(self.groups)

    @property
    def max_group(self) -> int:
        """Size of the largest single-parity-class group."""
        return max(g.largest_class for g in self.groups.values())

    @property
    def total_rows(self) -> int:
        return sum(g.size for g in self.groups.values())

    def __getitem__(self, pattern: str | int) -> PatternGroup:
        if isinstance(pattern, str):
            pattern = int(pattern, 2)
        return self.groups[pattern]

    def __iter__(self):
        return iter(self.groups.values())

    def as_dict(self) -> dict[str, tuple[int, int]]:
        return {str(g.pattern): (g.match_count, g.mismatch_count) for g in self}


def mismatch_flags(t: TruthTable) -> np.ndarray:
    """Per-row 1 where the output parity differs from the input parity."""
    inputs, outputs = t.defined_rows()
    return parity_of(inputs) ^ parity_of(outputs)


def profile(t: TruthTable) -> ParityProfile:
    """Group the rows of ``t`` by output pattern and tally parity classes."""
    flags = mismatch_flags(t)
    keys = (t.outputs << WORD(1)) | flags.astype(WORD)
    uniq, counts = np.unique(keys, return_counts=True)
    tallies: dict[int, list[int]] = {}
    for key, count in zip(uniq.tolist(), counts.tolist()):
        tallies.setdefault(key >> 1, [0, 0])[key & 1] = count
    groups = {
        pattern: PatternGroup(BitRow(t.num_outputs, pattern), match, mismatch)
        for pattern, (match, mismatch) in tallies.items()
    }
    return ParityProfile(t.num_inputs, t.num_outputs, groups)


def min_extra_bits(p: ParityProfile) -> int:
    """Lower bound on the extra output bits for a parity-preserving reversible form.

    Each non-empty parity class of ``c`` rows needs ``ceil(log2 c)``
    distinguishing bits plus one parity bit; the bound is the maximum over
    all classes of all patterns. Empty classes contribute nothing.
    """
    if not p.groups:
        raise ValueError("empty profile")
    terms = [ceil_log2(c) + 1
             for g in p for c in (g.match_count, g.mismatch_count) if c > 0]
    return max(terms)


def count_parity_preserving(n: int) -> int:
    """Number of parity-preserving reversible functions of ``n`` variables."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return math.factorial(1 << (n - 1)) ** 2


def enumerate_parity_preserving(n: int) -> int:
    """Count parity-preserving permutations of ``2**n`` rows exhaustively.

    Walks every permutation of the full row set (not only the
    class-respecting ones) and keeps those passing both
    :func:`is_reversible` and :func:`is_parity_preserving`.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
    total = 0
    for perm in itertools.permutations(range(1 << n)):
        t = TruthTable(n, n, perm)
        if is_reversible(t) and is_parity_preserving(t):
            total += 1
    return total


def _flip_masks(width: int, flips: int) -> list[int]:
    return [sum(1 << b for b in bits) for bits in itertools.combinations(range(width), flips)]


def bitflip_coverage(table, flips: int = 1) -> float:
    """Fraction of ``flips``-bit output errors caught by a parity check.

    ``table`` is anything exposing ``defined_rows()`` and ``num_outputs``
    (a :class:`TruthTable` or an annotated conversion result). Every
    defined row is corrupted with every combination of ``flips`` output bit
    flips; an error is caught when the corrupted row's parity differs from
    the input parity.
    """
    inputs, outputs = table.defined_rows()
    masks = _flip_masks(table.num_outputs, flips)
    if not masks or outputs.size == 0:
        return 1.0
    in_par = parity_of(inputs)
    caught = 0
    for mask in masks:
        caught += int(np.count_nonzero(parity_of(outputs ^ WORD(mask)) != in_par))
    return caught / (len(masks) * outputs.size)


def single_bitflip_detectable(table) -> bool:
    """True iff every single output bit flip on every defined row changes parity.

    The table must already be parity-preserving on its defined rows.
    """
    inputs, outputs = table.defined_rows()
    if not np.array_equal(parity_of(inputs), parity_of(outputs)):
        raise PreconditionViolated("table is not parity-preserving")
    return bitflip_coverage(table, 1) == 1.0
