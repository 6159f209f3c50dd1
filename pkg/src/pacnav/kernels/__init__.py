"""Backend selection for the compiled kernels.

PACNAV_BACKEND=numba  compiled kernels (default; error if numba missing)
PACNAV_BACKEND=numpy  pure numpy / stdlib fallback
unset                 numba when importable, numpy otherwise
"""

from __future__ import annotations

import os

_requested = os.environ.get("PACNAV_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"PACNAV_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    from . import numpy_impl as _impl

    BACKEND = "numpy"
else:
    try:
        from . import numba_impl as _impl

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import numpy_impl as _impl

        BACKEND = "numpy"

segment_hits_disk = _impl.segment_hits_disk
segment_blocked = _impl.segment_blocked
pairwise_los = _impl.pairwise_los
astar_grid = _impl.astar_grid
path_persistence = _impl.path_persistence
path_similarity = _impl.path_similarity
order_metric = _impl.order_metric
target_scores = _impl.target_scores

__all__ = [
    "BACKEND",
    "segment_hits_disk",
    "segment_blocked",
    "pairwise_los",
    "astar_grid",
    "path_persistence",
    "path_similarity",
    "order_metric",
    "target_scores",
]
