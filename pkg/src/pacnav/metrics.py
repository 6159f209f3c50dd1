"""Motion metrics: path similarity, path persistence, swarm order.

Similarity and persistence operate on bounded position histories
(newest first) and compare displacement directions; both average only
over well-defined terms, so an agent that hovered the whole window
scores 0 rather than NaN. Histories with irregular time gaps are used
as-is, column by column.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .geometry import EPS_NORM
from .perception import PathHistory


class HistoryTooShort(ValueError):
    """Metric requested on a history with too few entries."""


def _as_rows(h: PathHistory | np.ndarray) -> np.ndarray:
    if isinstance(h, PathHistory):
        return h.positions
    return np.asarray(h, dtype=np.float64).reshape(-1, 2)


def displacements(h: PathHistory | np.ndarray) -> np.ndarray:
    """Consecutive position differences, newest first: rows[m] - rows[m+1]."""
    rows = _as_rows(h)
    if rows.shape[0] < 2:
        raise HistoryTooShort("need at least 2 entries for displacements")
    return rows[:-1] - rows[1:]


def path_similarity(h_j: PathHistory | np.ndarray, h_l: PathHistory | np.ndarray) -> float:
    """Mean directional alignment of two paths over their common length.

    1 when both moved the same way column by column, -1 when opposite,
    0 when orthogonal (or no valid terms).
    """
    a = np.ascontiguousarray(_as_rows(h_j))
    b = np.ascontiguousarray(_as_rows(h_l))
    if min(a.shape[0], b.shape[0]) < 2:
        raise HistoryTooShort("need at least 2 entries in each history")
    return float(kernels.path_similarity(a, a.shape[0], b, b.shape[0], EPS_NORM))


def path_persistence(h_j: PathHistory | np.ndarray) -> float:
    """Mean directional alignment of consecutive displacements of one path.

    1 for straight-line motion, 0 for right-angle turns, -1 for
    reversals; 0 when no term is well-defined (e.g. hovering).
    """
    a = np.ascontiguousarray(_as_rows(h_j))
    if a.shape[0] < 3:
        raise HistoryTooShort("need at least 3 entries for persistence")
    return float(kernels.path_persistence(a, a.shape[0], EPS_NORM))


def order_metric(velocities: np.ndarray) -> float:
    """Swarm-wide velocity alignment, averaged over all ordered pairs.

    Pairs with a near-zero speed on either side contribute 0 but stay
    in the N(N-1) normalizer.
    """
    v = np.ascontiguousarray(np.asarray(velocities, dtype=np.float64).reshape(-1, 2))
    if v.shape[0] < 2:
        raise ValueError("need at least 2 velocities")
    return float(kernels.order_metric(v, EPS_NORM))
