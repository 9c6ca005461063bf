"""Witness thresholds and compatibility of multi-input correlation tables.

A witness ``w`` (one row per input) scores a correlation table ``p`` by
``Tr[w^T p]``. Its threshold ``W(pi, w)`` is the best score any family of
qubit states can reach, ``sum_x lambda_max(sum_y w[x, y] pi_y)``. A positive
gap ``Tr[w^T p] - W`` certifies that ``p`` cannot come from ``pi``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidTable
from .linalg import lambda_max_qubit
from .povm import Povm
from .range_model import DEFAULT_TOL, RangeModel, Verdict, build_range_model, membership

TABLE_NEGATIVE_TOL = 1e-12
TABLE_SUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CorrelationTable:
    """Rows are inputs ``x``, columns are outcomes ``y``; ``entries[x, y] = p(y|x)``."""

    entries: np.ndarray

    def __post_init__(self):
        p = np.atleast_2d(np.asarray(self.entries, dtype=float))
        if p.ndim != 2:
            raise InvalidTable(f"table must be 2-D, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise InvalidTable("table has non-finite entries")
        if np.min(p) < -TABLE_NEGATIVE_TOL:
            raise InvalidTable(f"table has a negative entry {np.min(p):.3e}")
        sums = p.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > TABLE_SUM_TOL)
        if bad.size:
            raise InvalidTable(f"row {int(bad[0])} sums to {sums[bad[0]]:.12g}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "entries", p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def _witness_rows(w, n: int) -> np.ndarray:
    w = np.atleast_2d(np.asarray(w, dtype=float))
    if w.ndim != 2 or w.shape[1] != n:
        raise DimensionMismatch(f"witness must have {n} columns, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("witness has non-finite entries")
    return w


def row_thresholds(p: Povm, w) -> np.ndarray:
    """Per-row ``lambda_max(sum_y w[x, y] pi_y) = t.w_x + |S^T w_x|``."""
    w = _witness_rows(w, p.n)
    return w @ p.t + np.linalg.norm(w @ p.S, axis=1)


def witness_threshold(p: Povm, w) -> float:
    w = _witness_rows(w, p.n)
    t, S = p.t, p.S
    return float(sum(lambda_max_qubit(row @ t, row @ S) for row in w))


def compatibility_gap(p: Povm, table, w) -> float:
    """``Tr[w^T table] - W(pi, w)``; positive means the table is incompatible."""
    entries = table.entries if isinstance(table, CorrelationTable) else np.atleast_2d(np.asarray(table, float))
    w = _witness_rows(w, p.n)
    if entries.shape != w.shape:
        raise DimensionMismatch(f"table shape {entries.shape} differs from witness shape {w.shape}")
    return float(np.sum(w * entries)) - witness_threshold(p, w)


def test_correlation(p: Povm | RangeModel, table, tol: float = DEFAULT_TOL) -> list[Verdict]:
    """One verdict per input row; the table is compatible iff every row is."""
    model = p if isinstance(p, RangeModel) else build_range_model(p)
    if not isinstance(table, CorrelationTable):
        table = CorrelationTable(table)
    if table.shape[1] != model.n:
        raise DimensionMismatch(f"table has {table.shape[1]} columns, POVM has {model.n} outcomes")
    return [membership(model, row, tol) for row in table.entries]


# keep pytest from collecting the public function above as a test
test_correlation.__test__ = False


def is_compatible(verdicts: list[Verdict]) -> bool:
    return all(v.compatible for v in verdicts)
