"""Conversion of Boolean specifications into parity-preserving reversible ones.

Output columns of a converted table are laid out as::

    original outputs | distinguishing bits (MSB first) | parity bit

and input columns as ``original inputs | ancilla lines`` with every ancilla
held at constant 0. A row's distinguishing bits hold its zero-based
occurrence index among earlier rows sharing both its output pattern and its
parity class; the parity bit then makes the extended output's parity equal
the input's.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (DEFAULT_MAX_INPUTS, WORD, TruthTable, ceil_log2, is_parity_preserving,
                   is_reversible, parity_of, popcount, to_bits)
from .errors import InfeasibleCompletion, NotReversible, TooLarge
from .parity import ParityProfile, bitflip_coverage, mismatch_flags, profile

MAX_WIDTH = 64


class CompletionState(enum.Enum):
    PARTIAL = "partial"
    COMPLETED = "completed"


@dataclass(frozen=True)
class ConversionPlan:
    """Line budget of a conversion.

    ``garbage == distinguishing_bits + 1`` unless the source is already an
    injective parity-preserving map, in which case no garbage is added and
    ``ancilla`` only pads the inputs to the output width.
    """

    distinguishing_bits: int
    garbage: int
    ancilla: int
    max_group: int

    @property
    def needs_garbage(self) -> bool:
        return self.garbage > 0

    @property
    def is_noop(self) -> bool:
        return self.garbage == 0 and self.ancilla == 0


def plan(p: ParityProfile, n: int | None = None, m: int | None = None) -> ConversionPlan:
    """Compute distinguishing bits, garbage and ancilla counts for a profile."""
    n = p.num_inputs if n is None else n
    m = p.num_outputs if m is None else m
    max_group = p.max_group
    if p.num_groups == 1 << n and all(g.mismatch_count == 0 for g in p):
        return ConversionPlan(0, 0, m - n, max_group)
    d = max(ceil_log2(max_group), n - m - 1, 0)
    g = d + 1
    return ConversionPlan(d, g, m + g - n, max_group)


class AnnotatedTable:
    """Reversible specification with ancilla inputs and garbage outputs.

    Rows are stored for the ``2**source_inputs`` input settings with every
    ancilla at 0 (``outputs``). Once completed, ``full`` maps all
    ``2**width`` input words. ``num_inputs`` and ``num_outputs`` both equal
    the line count ``width``.
    """

    def __init__(self, source_inputs: int, source_outputs: int, ancilla: int, garbage: int,
                 outputs, *, full=None, name: str = ""):
        if min(source_inputs, source_outputs, ancilla, garbage) < 0:
            raise ValueError("counts must be non-negative")
        width = source_inputs + ancilla
        if width > MAX_WIDTH or source_outputs + garbage > MAX_WIDTH:
            raise TooLarge(f"line count above {MAX_WIDTH} is not supported")
        arr = np.array(outputs, dtype=WORD, copy=True).reshape(-1)
        if arr.size != 1 << source_inputs:
            raise ValueError(f"expected {1 << source_inputs} defined rows, got {arr.size}")
        if full is not None:
            full = np.array(full, dtype=WORD, copy=True).reshape(-1)
            if full.size != 1 << width:
                raise ValueError(f"completed table needs {1 << width} rows, got {full.size}")
            full.flags.writeable = False
        arr.flags.writeable = False
        self.source_inputs = source_inputs
        self.source_outputs = source_outputs
        self.ancilla_count = ancilla
        self.garbage_count = garbage
        self.outputs = arr
        self.full = full
        self.name = name

    @classmethod
    def from_rows(cls, source_inputs: int, source_outputs: int, ancilla: int, garbage: int,
                  rows: Sequence[str], **kwargs) -> "AnnotatedTable":
        """Build from extended output strings listed in source minterm order."""
        return cls(source_inputs, source_outputs, ancilla, garbage,
                   [int(r, 2) for r in rows], **kwargs)

    @property
    def width(self) -> int:
        return self.source_inputs + self.ancilla_count

    num_inputs = width

    @property
    def num_outputs(self) -> int:
        return self.source_outputs + self.garbage_count

    @property
    def completion_state(self) -> CompletionState:
        return CompletionState.PARTIAL if self.full is None else CompletionState.COMPLETED

    @property
    def base(self) -> TruthTable | None:
        """The full square table, available once completed."""
        if self.full is None:
            return None
        return TruthTable(self.width, self.width, self.full, name=self.name, max_inputs=None)

    def defined_inputs(self) -> np.ndarray:
        return np.arange(1 << self.source_inputs, dtype=WORD) << WORD(self.ancilla_count)

    def defined_rows(self) -> tuple[np.ndarray, np.ndarray]:
        if self.full is not None:
            return np.arange(self.full.size, dtype=WORD), self.full
        return self.defined_inputs(), self.outputs

    def rows(self) -> list[tuple[str, str]]:
        """(input, output) bit strings of the defined rows, ancilla included."""
        inputs, outputs = self.defined_rows()
        return [(to_bits(i, self.width), to_bits(o, self.num_outputs))
                for i, o in zip(inputs.tolist(), outputs.tolist())]

    def __eq__(self, other) -> bool:
        if not isinstance(other, AnnotatedTable):
            return NotImplemented
        same_full = (self.full is None and other.full is None) or (
            self.full is not None and other.full is not None
            and np.array_equal(self.full, other.full))
        return (self.source_inputs == other.source_inputs
                and self.source_outputs == other.source_outputs
                and self.ancilla_count == other.ancilla_count
                and self.garbage_count == other.garbage_count
                and np.array_equal(self.outputs, other.outputs) and same_full)

    __hash__ = None

    def __repr__(self) -> str:
        return (f"<AnnotatedTable {self.name or 'unnamed'} {self.source_inputs}+{self.ancilla_count}"
                f" -> {self.source_outputs}+{self.garbage_count} {self.completion_state.value}>")


def _unchanged(t: TruthTable) -> AnnotatedTable:
    return AnnotatedTable(t.num_inputs, t.num_outputs, 0, 0, t.outputs,
                          full=t.outputs, name=t.name)


def occurrence_index(keys: np.ndarray) -> np.ndarray:
    """Zero-based index of each element among earlier elements with the same key."""
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    pos = np.arange(keys.size, dtype=np.int64)
    starts = np.empty(keys.size, dtype=bool)
    if keys.size:
        starts[0] = True
        np.not_equal(sorted_keys[1:], sorted_keys[:-1], out=starts[1:])
    first = np.maximum.accumulate(np.where(starts, pos, 0))
    index = np.empty(keys.size, dtype=WORD)
    index[order] = (pos - first).astype(WORD)
    return index


def convert_irreversible(t: TruthTable, conversion_plan: ConversionPlan | None = None
                         ) -> AnnotatedTable:
    """Extend ``t`` into a parity-preserving injective specification.

    Works for any table; reversible inputs simply form singleton groups.
    A precomputed plan may be supplied, in which case it must leave enough
    distinguishing bits for ``t``.
    """
    if conversion_plan is None:
        conversion_plan = plan(profile(t), t.num_inputs, t.num_outputs)
    n, m = t.num_inputs, t.num_outputs
    if not conversion_plan.needs_garbage:
        inputs, out = t.defined_rows()
        if (np.unique(out).size != out.size
                or not np.array_equal(parity_of(inputs), parity_of(out))
                or conversion_plan.ancilla != m - n):
            raise ValueError("a garbage-free plan needs an injective parity-preserving table")
        if conversion_plan.ancilla == 0:
            return _unchanged(t)
        return AnnotatedTable(n, m, m - n, 0, out, name=t.name)
    d, g, a = conversion_plan.distinguishing_bits, conversion_plan.garbage, conversion_plan.ancilla
    if n + a != m + g or a < 0 or g != d + 1:
        raise ValueError(f"inconsistent plan for a {n}x{m} table: {conversion_plan}")

    inputs, out = t.defined_rows()
    flags = mismatch_flags(t)
    index = occurrence_index((out << WORD(1)) | flags.astype(WORD))
    if d < 64 and index.size and int(index.max()) >> d:
        raise ValueError(f"{d} distinguishing bits cannot separate a group of "
                         f"{int(index.max()) + 1} rows")
    fix = parity_of(out) ^ parity_of(index) ^ parity_of(inputs)
    extended = (out << WORD(g)) | (index << WORD(1)) | fix.astype(WORD)
    return AnnotatedTable(n, m, a, g, extended, name=t.name)


def convert_reversible(t: TruthTable) -> AnnotatedTable:
    """Make a reversible table parity-preserving with at most one extra line.

    The extra output is 1 exactly on rows whose parity does not match.
    """
    if not is_reversible(t):
        raise NotReversible("input is not a bijection")
    if is_parity_preserving(t):
        return _unchanged(t)
    extended = (t.outputs << WORD(1)) | mismatch_flags(t).astype(WORD)
    return AnnotatedTable(t.num_inputs, t.num_outputs, 1, 1, extended, name=t.name)


def convert(t: TruthTable) -> AnnotatedTable:
    """Dispatch: reversible inputs take the one-extra-line path, others the general one."""
    return convert_reversible(t) if is_reversible(t) else convert_irreversible(t)


def complete_permutation(t: AnnotatedTable, max_inputs: int | None = DEFAULT_MAX_INPUTS
                         ) -> AnnotatedTable:
    """Extend the defined rows to a parity-preserving permutation of all lines.

    Free inputs are paired with free outputs of the same parity, both in
    ascending order.
    """
    if t.full is not None:
        return t
    if t.num_outputs != t.width:
        raise InfeasibleCompletion(f"{t.width} input lines vs {t.num_outputs} output lines")
    if max_inputs is not None and t.width > max_inputs:
        raise TooLarge(f"completion over {t.width} lines exceeds the cap of {max_inputs}")
    size = 1 << t.width
    inputs, outputs = t.defined_rows()
    full = np.zeros(size, dtype=WORD)
    full[inputs] = outputs
    used_in = np.zeros(size, dtype=bool)
    used_in[inputs] = True
    used_out = np.zeros(size, dtype=bool)
    used_out[outputs] = True
    if np.count_nonzero(used_out) != outputs.size:
        raise InfeasibleCompletion("defined outputs are not distinct")
    words = np.arange(size, dtype=WORD)
    free_in = words[~used_in]
    free_out = words[~used_out]
    in_par = parity_of(free_in)
    out_par = parity_of(free_out)
    for cls in (0, 1):
        src = free_in[in_par == cls]
        dst = free_out[out_par == cls]
        if src.size != dst.size:
            raise InfeasibleCompletion(
                f"parity class {cls}: {src.size} free inputs vs {dst.size} free outputs")
        full[src] = dst
    return AnnotatedTable(t.source_inputs, t.source_outputs, t.ancilla_count, t.garbage_count,
                          t.outputs, full=full, name=t.name)


def strip(t: AnnotatedTable) -> TruthTable:
    """Recover the source function by dropping ancilla rows and garbage columns."""
    return TruthTable(t.source_inputs, t.source_outputs, t.outputs >> WORD(t.garbage_count),
                      name=t.name, max_inputs=None)


def rd_name(n: int) -> str:
    k = n.bit_length()
    return f"rd{n}{k}" if n < 10 else f"rd{n}_{k}"


def rd_generate(n: int, max_inputs: int | None = DEFAULT_MAX_INPUTS) -> TruthTable:
    """Input-weight function: output is the binary count of ones in the input."""
    if n < 1:
        raise ValueError("rd functions need at least one input")
    if max_inputs is not None and n > max_inputs:
        raise TooLarge(f"rd{n} exceeds the cap of {max_inputs} inputs")
    weights = popcount(np.arange(1 << n, dtype=WORD)).astype(WORD)
    return TruthTable(n, n.bit_length(), weights, name=rd_name(n), max_inputs=max_inputs)


@dataclass
class ParityReport:
    """Outcome of :func:`verify`. Failed checks are fields, never exceptions."""

    injective: bool
    parity_preserving: bool
    ancilla_constant: bool
    width_balanced: bool
    single_flip_detectable: bool
    bijective: bool | None = None
    parity_violations: list[str] = field(default_factory=list)
    duplicate_outputs: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.injective and self.parity_preserving and self.ancilla_constant
                and self.width_balanced and self.single_flip_detectable
                and self.bijective is not False)

    def summary(self) -> str:
        checks = [("injective", self.injective), ("parity preserving", self.parity_preserving),
                  ("ancilla constant", self.ancilla_constant),
                  ("width balanced", self.width_balanced),
                  ("single flips detectable", self.single_flip_detectable)]
        if self.bijective is not None:
            checks.append(("bijective", self.bijective))
        return "\n".join(f"{name}: {'yes' if val else 'NO'}" for name, val in checks)


def verify(t: AnnotatedTable, max_listed: int = 16) -> ParityReport:
    """Check the structural guarantees of a converted table.

    Violating rows are listed by their source input minterm (ancilla
    columns omitted) when the row is an ancilla-zero row.
    """
    inputs, outputs = t.defined_rows()
    uniq, counts = np.unique(outputs, return_counts=True)
    injective = uniq.size == outputs.size
    bad = np.flatnonzero(parity_of(inputs) != parity_of(outputs))
    parity_ok = bad.size == 0
    anc_mask = WORD((1 << t.ancilla_count) - 1)
    ancilla_ok = bool(np.all((t.defined_inputs() & anc_mask) == 0))
    if t.full is not None:
        ancilla_ok = ancilla_ok and np.array_equal(t.full[t.defined_inputs()], t.outputs)
    balanced = t.width == t.num_outputs
    detectable = parity_ok and bitflip_coverage(t, 1) == 1.0
    bijective = None
    if t.full is not None:
        bijective = injective and balanced
    violations = []
    for k in bad[:max_listed].tolist():
        word = int(inputs[k])
        if word & int(anc_mask):
            violations.append(to_bits(word, t.width))
        else:
            violations.append(to_bits(word >> t.ancilla_count, t.source_inputs))
    dups = [to_bits(v, t.num_outputs) for v in uniq[counts > 1][:max_listed].tolist()]
    return ParityReport(injective=bool(injective), parity_preserving=bool(parity_ok),
                        ancilla_constant=bool(ancilla_ok), width_balanced=balanced,
                        single_flip_detectable=bool(detectable), bijective=bijective,
                        parity_violations=violations, duplicate_outputs=dups)
