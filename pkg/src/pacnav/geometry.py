"""Planar vector helpers shared by every other module.

All vectors are float64 numpy arrays of shape (2,). Quantities whose
direction is undefined (norm below ``EPS_NORM``) are reported as NaN so
callers can decide how to treat the degenerate case instead of silently
getting garbage.
"""

from __future__ import annotations

import math

import numpy as np

# Norms below this are treated as zero-length (direction undefined).
EPS_NORM = 1e-9


def vec(x: float, y: float) -> np.ndarray:
    """Build a float64 2-vector."""
    return np.array([x, y], dtype=np.float64)


def norm(v: np.ndarray) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1])


def rotate(v: np.ndarray, angle: float) -> np.ndarray:
    """Rotate ``v`` counterclockwise by ``angle`` radians."""
    c = math.cos(angle)
    s = math.sin(angle)
    return np.array([c * v[0] - s * v[1], s * v[0] + c * v[1]])


def normalized_dot(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of the angle between ``a`` and ``b``.

    Returns NaN when either vector is shorter than ``EPS_NORM``; the
    result is otherwise clipped into [-1, 1] to absorb round-off.
    """
    na = norm(a)
    nb = norm(b)
    if na < EPS_NORM or nb < EPS_NORM:
        return math.nan
    d = (a[0] * b[0] + a[1] * b[1]) / (na * nb)
    return min(1.0, max(-1.0, d))


def clamp_norm(v: np.ndarray, limit: float) -> np.ndarray:
    """Scale ``v`` down so its norm does not exceed ``limit``."""
    n = norm(v)
    if n <= limit or n < EPS_NORM:
        return v
    return v * (limit / n)
