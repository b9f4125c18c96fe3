"""scikit-learn style front end for the conversion.

``fit`` profiles a specification and fixes the line budget; ``transform``
applies it. Inputs may be :class:`~parityrev.core.TruthTable` objects or
arrays, see :func:`check_truth_table`.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .converter import (AnnotatedTable, complete_permutation, convert_irreversible,
                        convert_reversible, plan, strip)
from .core import DEFAULT_MAX_INPUTS, TruthTable, is_parity_preserving, is_reversible
from .parity import min_extra_bits, profile


def check_truth_table(X, n_outputs=None, max_inputs=DEFAULT_MAX_INPUTS) -> TruthTable:
    """Coerce ``X`` to a :class:`TruthTable`.

    Accepted forms:

    * a ``TruthTable`` (returned as is),
    * a 2-D 0/1 array of shape ``(2**n, m)``, one row per minterm with the
      leftmost column most significant,
    * a 1-D integer array of ``2**n`` output words; ``n_outputs`` gives the
      word width and defaults to the smallest width holding every value.
    """
    if isinstance(X, TruthTable):
        return X
    arr = np.asarray(X)
    if arr.dtype == bool:
        arr = arr.astype(np.uint8)
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"expected integer or boolean data, got dtype {arr.dtype}")
    if arr.ndim not in (1, 2):
        raise ValueError(f"expected a 1-D or 2-D array, got {arr.ndim} dimensions")
    rows = arr.shape[0]
    if rows < 2 or rows & (rows - 1):
        raise ValueError(f"row count must be a power of two >= 2, got {rows}")
    if arr.size and arr.min() < 0:
        raise ValueError("negative entries are not allowed")
    n = rows.bit_length() - 1
    if arr.ndim == 2:
        if np.any(arr > 1):
            raise ValueError("2-D input must contain only 0 and 1")
        m = arr.shape[1]
        if n_outputs is not None and n_outputs != m:
            raise ValueError(f"n_outputs={n_outputs} but the array has {m} columns")
        weights = np.left_shift(np.uint64(1), np.arange(m - 1, -1, -1, dtype=np.uint64))
        words = (arr.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64) if m else \
            np.zeros(rows, dtype=np.uint64)
        return TruthTable(n, m, words, max_inputs=max_inputs)
    m = n_outputs if n_outputs is not None else max(int(arr.max()).bit_length(), 1)
    return TruthTable(n, m, arr, max_inputs=max_inputs)


class ParityPreservingConverter(TransformerMixin, BaseEstimator):
    """Convert Boolean specifications to parity-preserving reversible ones.

    Parameters
    ----------
    complete : bool
        Extend the result to a full permutation over all lines.
    method : {"auto", "general", "reversible"}
        ``"auto"`` uses the one-extra-line path for bijections and the
        general path otherwise. ``"reversible"`` requires a bijective input.
    n_outputs : int or None
        Output width for 1-D word arrays.
    max_inputs : int
        Cap on the number of input variables.

    Attributes
    ----------
    profile_ : ParityProfile
    plan_ : ConversionPlan
    n_garbage_, n_ancilla_, bound_ : int
    reversible_, parity_preserving_ : bool
        Properties of the fitted source specification.
    """

    def __init__(self, complete=False, method="auto", n_outputs=None,
                 max_inputs=DEFAULT_MAX_INPUTS):
        self.complete = complete
        self.method = method
        self.n_outputs = n_outputs
        self.max_inputs = max_inputs

    def _validate(self, X):
        if self.method not in ("auto", "general", "reversible"):
            raise ValueError(f"unknown method {self.method!r}")
        return check_truth_table(X, self.n_outputs, self.max_inputs)

    def fit(self, X, y=None):
        t = self._validate(X)
        self.n_inputs_ = t.num_inputs
        self.n_outputs_ = t.num_outputs
        self.reversible_ = is_reversible(t)
        self.parity_preserving_ = self.reversible_ and is_parity_preserving(t)
        if self.method == "reversible" and not self.reversible_:
            raise ValueError("method='reversible' needs a bijective specification")
        self.profile_ = profile(t)
        self.plan_ = plan(self.profile_, t.num_inputs, t.num_outputs)
        self.bound_ = min_extra_bits(self.profile_)
        self.n_garbage_ = self.plan_.garbage
        self.n_ancilla_ = self.plan_.ancilla
        return self

    def transform(self, X) -> AnnotatedTable:
        check_is_fitted(self, "plan_")
        t = self._validate(X)
        if (t.num_inputs, t.num_outputs) != (self.n_inputs_, self.n_outputs_):
            raise ValueError(
                f"fitted on {self.n_inputs_}x{self.n_outputs_}, got {t.num_inputs}x{t.num_outputs}")
        if self.method == "reversible" or (self.method == "auto" and self.reversible_
                                            and is_reversible(t)):
            result = convert_reversible(t)
        else:
            result = convert_irreversible(t, self.plan_)
        return complete_permutation(result, self.max_inputs) if self.complete else result

    def inverse_transform(self, X: AnnotatedTable) -> TruthTable:
        """Drop ancilla rows and garbage columns, returning the source function."""
        check_is_fitted(self, "plan_")
        return strip(X)
