"""PLA reading and writing, plus conversion report records.

Only complete functions leave this module: input don't-cares are expanded,
output don't-cares and uncovered minterms become 0 (with a
:class:`~parityrev.errors.PlaWarning`), and contradictory cubes are
rejected.

Converted tables are written with two extra comment lines so that a later
read can restore the ancilla/garbage split::

    # ancilla 2
    # garbage 2
"""
from __future__ import annotations

import csv
import io
import re
import warnings
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .converter import AnnotatedTable
from .core import DEFAULT_MAX_INPUTS, WORD, TruthTable, to_bits
from .errors import (ConflictError, PlaSyntaxError, PlaWarning, TooLarge,
                     UncoveredMinterms, WidthError)

ACCEPTED_TYPES = {"f", "fd"}
_ANNOTATION = re.compile(r"#\s*(ancilla|garbage|completion)\s+(\S+)\s*$")


@dataclass
class PlaDocument:
    num_inputs: int
    num_outputs: int
    cubes: list[tuple[str, str]] = field(default_factory=list)
    declared_cubes: int | None = None
    input_labels: list[str] | None = None
    output_labels: list[str] | None = None
    annotations: dict[str, str] = field(default_factory=dict)
    name: str = ""
    cube_lines: list[int] = field(default_factory=list, repr=False)


def _ints(args, directive, lineno):
    if len(args) != 1 or not args[0].isdigit():
        raise PlaSyntaxError(f"{directive} expects one non-negative integer", lineno)
    return int(args[0])


def read_document(text: str, name: str = "") -> PlaDocument:
    """Tokenize PLA text into a :class:`PlaDocument` without expanding cubes."""
    n = m = None
    declared = None
    ilb = ob = None
    cubes: list[tuple[str, str, int]] = []
    annotations: dict[str, str] = {}
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            hit = _ANNOTATION.match(line)
            if hit:
                annotations[hit.group(1)] = hit.group(2)
            continue
        if ended:
            raise PlaSyntaxError("content after .e", lineno)
        line = line.split("#", 1)[0].strip()
        if line.startswith("."):
            directive, *args = line.split()
            if directive == ".i":
                n = _ints(args, directive, lineno)
            elif directive == ".o":
                m = _ints(args, directive, lineno)
            elif directive == ".p":
                declared = _ints(args, directive, lineno)
            elif directive == ".ilb":
                ilb = args
            elif directive == ".ob":
                ob = args
            elif directive == ".type":
                if len(args) != 1 or args[0] not in ACCEPTED_TYPES:
                    raise PlaSyntaxError(f"unsupported PLA type {' '.join(args)!r}", lineno)
            elif directive in (".e", ".end"):
                ended = True
            else:
                raise PlaSyntaxError(f"unknown directive {directive}", lineno)
            continue
        if n is None or m is None:
            raise PlaSyntaxError("cube before .i/.o declarations", lineno)
        parts = line.split()
        if len(parts) == 1 and m == 0:
            parts.append("")
        if len(parts) != 2:
            raise PlaSyntaxError(f"expected '<inputs> <outputs>', got {line!r}", lineno)
        ins, outs = parts
        if len(ins) != n or len(outs) != m:
            raise WidthError(f"cube {line!r} does not match .i {n} / .o {m}", lineno)
        if ins.strip("01-"):
            raise PlaSyntaxError(f"bad input character in {ins!r}", lineno)
        if outs.strip("01-~"):
            raise PlaSyntaxError(f"bad output character in {outs!r}", lineno)
        cubes.append((ins, outs, lineno))
    if n is None or m is None:
        raise PlaSyntaxError("missing .i or .o declaration")
    if n < 1:
        raise PlaSyntaxError(".i must be at least 1")
    if declared is not None and declared != len(cubes):
        raise PlaSyntaxError(f".p declares {declared} cubes but {len(cubes)} were found")
    if ilb is not None and len(ilb) != n:
        raise PlaSyntaxError(f".ilb lists {len(ilb)} names for {n} inputs")
    if ob is not None and len(ob) != m:
        raise PlaSyntaxError(f".ob lists {len(ob)} names for {m} outputs")
    return PlaDocument(n, m, [(i, o) for i, o, _ in cubes], declared, ilb, ob, annotations, name,
                       [ln for _, _, ln in cubes])


def cube_minterms(pattern: str) -> np.ndarray:
    """All minterm values covered by an input pattern over {0, 1, -}."""
    width = len(pattern)
    base = 0
    free = []
    for k, c in enumerate(pattern):
        bit = width - 1 - k
        if c == "1":
            base |= 1 << bit
        elif c == "-":
            free.append(bit)
    values = np.full(1 << len(free), base, dtype=WORD)
    counter = np.arange(values.size, dtype=WORD)
    for j, bit in enumerate(reversed(free)):
        values |= ((counter >> WORD(j)) & WORD(1)) << WORD(bit)
    return values


def expand(doc: PlaDocument, strict: bool = False,
           max_inputs: int | None = DEFAULT_MAX_INPUTS) -> tuple[np.ndarray, np.ndarray]:
    """Expand cubes into (outputs, covered) arrays over all ``2**n`` minterms."""
    n = doc.num_inputs
    if max_inputs is not None and n > max_inputs:
        raise TooLarge(f"{n} inputs exceeds the cap of {max_inputs}")
    outputs = np.zeros(1 << n, dtype=WORD)
    covered = np.zeros(1 << n, dtype=bool)
    lines = doc.cube_lines or [None] * len(doc.cubes)
    resolved = 0
    point_idx, point_val, point_line = [], [], []
    for (ins, outs), lineno in zip(doc.cubes, lines):
        if "-" in outs or "~" in outs:
            resolved += 1
            outs = outs.replace("-", "0").replace("~", "0")
        value = int(outs, 2) if outs else 0
        if "-" not in ins:
            point_idx.append(int(ins, 2))
            point_val.append(value)
            point_line.append(lineno)
            continue
        idx = cube_minterms(ins)
        clash = idx[covered[idx] & (outputs[idx] != WORD(value))]
        if clash.size:
            raise ConflictError(
                f"minterm {to_bits(int(clash[0]), n)} is assigned conflicting outputs", lineno)
        outputs[idx] = value
        covered[idx] = True
    if point_idx:
        idx = np.array(point_idx, dtype=WORD)
        val = np.array(point_val, dtype=WORD)
        order = np.argsort(idx, kind="stable")
        sidx, sval = idx[order], val[order]
        dup = np.flatnonzero((sidx[1:] == sidx[:-1]) & (sval[1:] != sval[:-1]))
        if dup.size:
            k = int(order[dup[0] + 1])
            raise ConflictError(
                f"minterm {to_bits(point_idx[k], n)} is assigned conflicting outputs",
                point_line[k])
        bad = np.flatnonzero(covered[idx] & (outputs[idx] != val))
        if bad.size:
            k = int(bad[0])
            raise ConflictError(
                f"minterm {to_bits(point_idx[k], n)} is assigned conflicting outputs",
                point_line[k])
        outputs[idx] = val
        covered[idx] = True
    if resolved:
        warnings.warn(f"{resolved} cube(s) had output don't-cares; resolved to 0", PlaWarning,
                      stacklevel=3)
    missing = int(np.count_nonzero(~covered))
    if missing:
        if strict:
            raise UncoveredMinterms(f"{missing} minterm(s) are not covered by any cube")
        warnings.warn(f"{missing} uncovered minterm(s) defaulted to all-zero outputs",
                      PlaWarning, stacklevel=3)
    return outputs, covered


def parse_pla(text: str, *, strict: bool = False, name: str = "",
              max_inputs: int | None = DEFAULT_MAX_INPUTS) -> TruthTable:
    """Parse PLA text into a complete :class:`TruthTable`."""
    doc = read_document(text, name)
    outputs, _ = expand(doc, strict=strict, max_inputs=max_inputs)
    return TruthTable(doc.num_inputs, doc.num_outputs, outputs, name=name, max_inputs=max_inputs)


def read_annotated(text: str, *, name: str = "",
                   max_inputs: int | None = DEFAULT_MAX_INPUTS) -> AnnotatedTable:
    """Parse a PLA written by :func:`write_pla`, restoring ancilla/garbage counts.

    A file without annotation comments is read as a table with no extra lines.
    Partial files must list every ancilla-zero minterm and nothing else.
    """
    doc = read_document(text, name)
    if not doc.annotations:
        t = parse_pla(text, name=name, max_inputs=max_inputs)
        return AnnotatedTable(t.num_inputs, t.num_outputs, 0, 0, t.outputs, full=t.outputs,
                              name=name)
    a = int(doc.annotations.get("ancilla", 0))
    g = int(doc.annotations.get("garbage", 0))
    n, width_out = doc.num_inputs, doc.num_outputs
    if a > n or g > width_out:
        raise PlaSyntaxError(f"annotations (ancilla {a}, garbage {g}) exceed the column counts")
    if max_inputs is not None and n > max_inputs:
        raise TooLarge(f"{n} lines exceeds the cap of {max_inputs}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PlaWarning)
        outputs, covered = expand(doc, max_inputs=None)
    source_n = n - a
    defined = np.arange(1 << source_n, dtype=WORD) << WORD(a)
    if covered.all() and (a > 0 or doc.annotations.get("completion") != "partial"):
        return AnnotatedTable(source_n, width_out - g, a, g, outputs[defined], full=outputs,
                              name=name)
    if not covered[defined].all() or np.count_nonzero(covered) != defined.size:
        raise PlaSyntaxError("partial table must list exactly the rows with all ancilla at 0")
    return AnnotatedTable(source_n, width_out - g, a, g, outputs[defined], name=name)


def write_pla(t: TruthTable | AnnotatedTable) -> str:
    """Emit a complete-minterm PLA.

    For an annotated table the ancilla inputs follow the original inputs and
    the garbage outputs follow the original outputs; a partial table lists
    only its ancilla-zero rows.
    """
    buf = io.StringIO()
    if t.name:
        buf.write(f"# {t.name}\n")
    if isinstance(t, AnnotatedTable):
        buf.write(f"# ancilla {t.ancilla_count}\n# garbage {t.garbage_count}\n")
        buf.write(f"# completion {t.completion_state.value}\n")
        inputs, outputs = t.defined_rows()
        n_in, n_out = t.width, t.num_outputs
    else:
        inputs, outputs = t.defined_rows()
        n_in, n_out = t.num_inputs, t.num_outputs
    buf.write(f".i {n_in}\n.o {n_out}\n.p {outputs.size}\n")
    in_fmt = f"0{n_in}b"
    out_fmt = f"0{n_out}b" if n_out else ""
    buf.writelines(f"{format(i, in_fmt)} {format(o, out_fmt) if n_out else ''}\n"
                   for i, o in zip(inputs.tolist(), outputs.tolist()))
    buf.write(".e\n")
    return buf.getvalue()


@dataclass
class ConversionReport:
    """Summary of one conversion.

    ``reversible`` and ``parity_preserving`` describe the source
    specification; ``bound`` is the minimum extra-bit count for it.
    """

    name: str
    inputs: int
    outputs: int
    garbage: int
    ancilla: int
    runtime_ms: float
    reversible: bool
    parity_preserving: bool
    bound: int


REPORT_FIELDS = [f.name for f in fields(ConversionReport)]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def write_report(r: ConversionReport, csv_mode: bool = False) -> str:
    """Render one report as ``key=value`` lines, or as a CSV header plus row."""
    if csv_mode:
        return write_reports_csv([r])
    return "".join(f"{k}={_fmt(v)}\n" for k, v in asdict(r).items())


def write_reports_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for r in reports:
        writer.writerow([_fmt(getattr(r, k)) for k in REPORT_FIELDS])
    return buf.getvalue()


def read_report(text: str) -> ConversionReport:
    """Inverse of :func:`write_report` in key-value mode."""
    values = dict(line.split("=", 1) for line in text.splitlines() if "=" in line)
    kwargs = {}
    for f in fields(ConversionReport):
        raw = values[f.name]
        if f.type in ("bool", bool):
            kwargs[f.name] = raw == "true"
        elif f.type in ("int", int):
            kwargs[f.name] = int(raw)
        elif f.type in ("float", float):
            kwargs[f.name] = float(raw)
        else:
            kwargs[f.name] = raw
    return ConversionReport(**kwargs)
