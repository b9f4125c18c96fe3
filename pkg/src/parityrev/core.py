"""Bit-level model for complete Boolean specifications.

A :class:`TruthTable` stores one output word per input minterm. Words are
unsigned integers whose most significant bit is the leftmost table column,
so ``outputs[i]`` is the row for the input whose binary rendering (MSB
first) has value ``i``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import TooLarge, WidthMismatch

#: Default cap on the number of input variables (2**24 rows).
DEFAULT_MAX_INPUTS = 24

WORD = np.uint64


def popcount(values) -> np.ndarray:
    """Vectorized count of set bits."""
    return np.bitwise_count(np.asarray(values, dtype=WORD)).astype(np.int64)


def parity_of(values) -> np.ndarray:
    """Vectorized parity (1 for an odd number of ones) of integer words."""
    return (popcount(values) & 1).astype(np.uint8)


def ceil_log2(count: int) -> int:
    """Smallest d with 2**d >= count, for count >= 1."""
    if count < 1:
        raise ValueError("ceil_log2 is defined for positive counts only")
    return (count - 1).bit_length()


def to_bits(value: int, width: int) -> str:
    return format(int(value), f"0{width}b") if width else ""


@dataclass(frozen=True)
class BitRow:
    """Fixed-width row of bits, leftmost bit most significant."""

    width: int
    value: int = 0

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("width must be non-negative")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def from_str(cls, text: str) -> "BitRow":
        if any(c not in "01" for c in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), int(text, 2) if text else 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitRow":
        bits = list(bits)
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {b!r}")
            value = (value << 1) | b
        return cls(len(bits), value)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.width - 1 - k)) & 1 for k in range(self.width))

    def __str__(self) -> str:
        return to_bits(self.value, self.width)


class ParityClass(enum.Enum):
    """Whether an output row's parity agrees with its input row's parity."""

    MATCH = 0
    MISMATCH = 1

    def complement(self) -> "ParityClass":
        return ParityClass(1 - self.value)


def row_parity(row: BitRow | str) -> int:
    """Return 1 iff ``row`` holds an odd number of ones."""
    if isinstance(row, str):
        row = BitRow.from_str(row)
    return int(row.value).bit_count() & 1


class TruthTable:
    """Complete Boolean specification with ``num_inputs`` inputs and ``num_outputs`` outputs.

    ``outputs`` may be any integer sequence of length ``2**num_inputs``; it is
    copied into a read-only ``uint64`` array.
    """

    __slots__ = ("num_inputs", "num_outputs", "outputs", "name")

    def __init__(self, num_inputs: int, num_outputs: int, outputs, *, name: str = "",
                 max_inputs: int | None = DEFAULT_MAX_INPUTS):
        if num_inputs < 1:
            raise ValueError("a truth table needs at least one input")
        if max_inputs is not None and num_inputs > max_inputs:
            raise TooLarge(f"{num_inputs} inputs exceeds the cap of {max_inputs}")
        if not 0 <= num_outputs <= 64:
            raise ValueError("num_outputs must be within 0..64")
        arr = np.array(outputs, dtype=WORD, copy=True).reshape(-1)
        if arr.shape[0] != 1 << num_inputs:
            raise ValueError(f"expected {1 << num_inputs} output rows, got {arr.shape[0]}")
        if num_outputs < 64 and arr.size and int(arr.max()) >> num_outputs:
            raise ValueError(f"an output row does not fit in {num_outputs} bits")
        arr.flags.writeable = False
        self.num_inputs = num_inputs
        self.num_outputs = num_outputs
        self.outputs = arr
        self.name = name

    @classmethod
    def from_rows(cls, rows: Sequence[str], **kwargs) -> "TruthTable":
        """Build from MSB-first output strings listed in minterm order."""
        if not rows:
            raise ValueError("no rows given")
        n = (len(rows) - 1).bit_length()
        m = len(rows[0])
        if any(len(r) != m for r in rows):
            raise ValueError("rows have unequal widths")
        return cls(n, m, [int(r, 2) if r else 0 for r in rows], **kwargs)

    @classmethod
    def from_function(cls, num_inputs: int, num_outputs: int, func, **kwargs) -> "TruthTable":
        return cls(num_inputs, num_outputs, [func(i) for i in range(1 << num_inputs)], **kwargs)

    @property
    def num_rows(self) -> int:
        return 1 << self.num_inputs

    @property
    def is_square(self) -> bool:
        return self.num_inputs == self.num_outputs

    def row(self, minterm: int) -> BitRow:
        return BitRow(self.num_outputs, int(self.outputs[minterm]))

    def rows(self) -> list[str]:
        return [to_bits(v, self.num_outputs) for v in self.outputs.tolist()]

    def defined_rows(self) -> tuple[np.ndarray, np.ndarray]:
        """(input words, output words) for every row; all rows are defined."""
        return np.arange(self.num_rows, dtype=WORD), self.outputs

    def __len__(self) -> int:
        return self.num_rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return (self.num_inputs == other.num_inputs
                and self.num_outputs == other.num_outputs
                and np.array_equal(self.outputs, other.outputs))

    __hash__ = None

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<TruthTable{label} {self.num_inputs}x{self.num_outputs}>"


def is_reversible(t: TruthTable) -> bool:
    """True iff ``t`` is square and its output rows are pairwise distinct."""
    if not t.is_square:
        return False
    return np.unique(t.outputs).size == t.num_rows


def is_parity_preserving(t: TruthTable) -> bool:
    """True iff every output row has the same parity as its input minterm."""
    if not t.is_square:
        raise WidthMismatch(
            f"parity preservation needs equal widths, got {t.num_inputs} in / {t.num_outputs} out")
    inputs, outputs = t.defined_rows()
    return bool(np.array_equal(parity_of(inputs), parity_of(outputs)))
