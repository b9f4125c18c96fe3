"""Parity-preserving reversible specifications from Boolean truth tables."""

__version__ = "0.1.0"

from .converter import (AnnotatedTable, CompletionState, ConversionPlan, ParityReport,
                        complete_permutation, convert, convert_irreversible, convert_reversible,
                        plan, rd_generate, strip, verify)
from .core import (BitRow, ParityClass, TruthTable, is_parity_preserving, is_reversible,
                   row_parity)
from .estimator import ParityPreservingConverter, check_truth_table
from .parity import (ParityProfile, PatternGroup, bitflip_coverage, count_parity_preserving,
                     enumerate_parity_preserving, min_extra_bits, profile,
                     single_bitflip_detectable)
from .pla import ConversionReport, parse_pla, read_annotated, write_pla, write_report

__all__ = [
    "AnnotatedTable", "BitRow", "CompletionState", "ConversionPlan", "ConversionReport",
    "ParityClass", "ParityPreservingConverter", "ParityProfile", "ParityReport", "PatternGroup",
    "TruthTable", "bitflip_coverage", "check_truth_table", "complete_permutation", "convert",
    "convert_irreversible", "convert_reversible", "count_parity_preserving",
    "enumerate_parity_preserving", "is_parity_preserving", "is_reversible", "min_extra_bits",
    "parse_pla", "plan", "profile", "rd_generate", "read_annotated", "row_parity",
    "single_bitflip_detectable", "strip", "verify", "write_pla", "write_report",
]
