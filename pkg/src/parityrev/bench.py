"""Batch conversion over PLA files and built-in generators."""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .converter import convert, convert_irreversible, rd_generate
from .core import DEFAULT_MAX_INPUTS, TruthTable, is_parity_preserving, is_reversible
from .errors import ParityRevError
from .parity import min_extra_bits, profile
from .pla import ConversionReport, parse_pla

log = logging.getLogger(__name__)

GENERATOR_PREFIX = "rd:"


@dataclass
class BenchRecord:
    """Outcome for one source. ``runtime_ms`` is wall-clock time including loading."""

    source: str
    report: ConversionReport | None = None
    runtime_ms: float = 0.0
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def is_generator_spec(source) -> bool:
    return isinstance(source, str) and source.startswith(GENERATOR_PREFIX)


def load_source(source, strict: bool = False, max_inputs: int = DEFAULT_MAX_INPUTS) -> TruthTable:
    """Load a table from a ``rd:N`` generator spec or a PLA file path."""
    if is_generator_spec(source):
        arg = source[len(GENERATOR_PREFIX):]
        if not arg.isdigit():
            raise ValueError(f"bad generator spec {source!r}, expected rd:N")
        return rd_generate(int(arg), max_inputs=max_inputs)
    path = Path(source)
    return parse_pla(path.read_text(), strict=strict, name=path.stem, max_inputs=max_inputs)


def report_for(t: TruthTable):
    """Convert ``t`` and summarize it; returns ``(annotated, report)``."""
    start = time.perf_counter()
    result = convert(t)
    elapsed = (time.perf_counter() - start) * 1e3
    reversible = is_reversible(t)
    report = ConversionReport(
        name=t.name, inputs=t.num_inputs, outputs=t.num_outputs,
        garbage=result.garbage_count, ancilla=result.ancilla_count, runtime_ms=elapsed,
        reversible=reversible, parity_preserving=reversible and is_parity_preserving(t),
        bound=min_extra_bits(profile(t)))
    return result, report


def run_one(source, strict: bool = False, max_inputs: int = DEFAULT_MAX_INPUTS) -> BenchRecord:
    label = str(source)
    start = time.perf_counter()
    try:
        t = load_source(source, strict=strict, max_inputs=max_inputs)
        _, report = report_for(t)
    except (ParityRevError, ValueError, OSError) as exc:
        log.warning("%s: %s", label, exc)
        return BenchRecord(label, error=f"{type(exc).__name__}: {exc}",
                           runtime_ms=(time.perf_counter() - start) * 1e3)
    return BenchRecord(label, report, (time.perf_counter() - start) * 1e3)


def expand_sources(sources) -> list[str]:
    """Replace directories by the ``*.pla`` files they contain, sorted by name."""
    out = []
    for src in sources:
        if not is_generator_spec(src) and Path(src).is_dir():
            out.extend(str(p) for p in sorted(Path(src).glob("*.pla")))
        else:
            out.append(str(src))
    return out


def run_suite(sources, jobs: int = 1, strict: bool = False,
              max_inputs: int = DEFAULT_MAX_INPUTS) -> list[BenchRecord]:
    """Convert every source; one record per source, in source order."""
    sources = expand_sources(sources)
    if jobs > 1 and len(sources) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_one, s, strict, max_inputs) for s in sources]
            return [f.result() for f in futures]
    return [run_one(s, strict, max_inputs) for s in sources]


def scaling_check(max_n: int, min_n: int = 10, repeats: int = 3) -> list[tuple[int, float]]:
    """Best-of-``repeats`` runtime (ms) of the general conversion on rd tables.

    The timing covers profiling, planning and row extension; table
    generation is excluded.
    """
    if max_n > 22:
        raise ValueError("scaling_check is limited to max_n <= 22")
    if min_n > max_n:
        raise ValueError("min_n exceeds max_n")
    # warm-up so the first measured size does not pay for lazy imports
    convert_irreversible(rd_generate(min_n))
    rows = []
    for n in range(min_n, max_n + 1):
        t = rd_generate(n)
        best = float("inf")
        for _ in range(repeats):
            start = time.perf_counter()
            convert_irreversible(t)
            best = min(best, time.perf_counter() - start)
        rows.append((n, best * 1e3))
    return rows
