"""Hot loops compiled with numba.

Functions here must stay semantically identical to their twins in
``numpy_impl``; the test suite compares both backends on random inputs.
No fastmath anywhere: the grid search relies on reproducible IEEE
arithmetic so both backends expand nodes in the same order.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

# Fixed successor order for the 8-connected grid: axis moves first,
# then diagonals. Both backends must use this exact order.
_DX8 = np.array([1, -1, 0, 0, 1, -1, 1, -1], dtype=np.int64)
_DY8 = np.array([0, 0, 1, -1, 1, 1, -1, -1], dtype=np.int64)

_SQRT2 = math.sqrt(2.0)


@njit(cache=True)
def segment_hits_disk(ax, ay, bx, by, cx, cy, r):
    """True if the closed segment a-b intersects the closed disk (c, r)."""
    dx = bx - ax
    dy = by - ay
    fx = cx - ax
    fy = cy - ay
    len2 = dx * dx + dy * dy
    if len2 > 0.0:
        t = (fx * dx + fy * dy) / len2
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    else:
        t = 0.0
    px = ax + t * dx - cx
    py = ay + t * dy - cy
    return px * px + py * py <= r * r


@njit(cache=True)
def segment_blocked(ax, ay, bx, by, cx, cy, r):
    """True if the segment a-b intersects any disk of radius r at (cx, cy)."""
    for m in range(cx.shape[0]):
        if segment_hits_disk(ax, ay, bx, by, cx[m], cy[m], r):
            return True
    return False


@njit(cache=True)
def pairwise_los(pos, cx, cy, r):
    """Symmetric line-of-sight matrix for all position pairs.

    pos: (N, 2) float64. Entry [i, j] is 1 when no disk blocks the
    segment between i and j. Diagonal is 1 by convention.
    """
    n = pos.shape[0]
    out = np.ones((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            if segment_blocked(pos[i, 0], pos[i, 1], pos[j, 0], pos[j, 1], cx, cy, r):
                out[i, j] = 0
                out[j, i] = 0
    return out


@njit(cache=True)
def astar_grid(occ, width, height, start, goal):
    """Shortest 8-connected path on a flat occupancy array.

    occ: uint8 (width*height,), 1 = occupied; start and goal must be
    free. Axis moves cost 1, diagonal moves sqrt(2), in cell units.
    Returns the path as flat cell indices from start to goal, or an
    empty array when the goal is unreachable. Ties on f are broken by
    the lower flat index so expansion order is fully deterministic.
    """
    n = width * height
    g = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    closed = np.zeros(n, dtype=np.uint8)

    # Each node expands once and relaxes at most 8 edges, so pushes
    # are bounded by 8n + 1.
    cap = 8 * n + 8
    heap_f = np.empty(cap)
    heap_i = np.empty(cap, dtype=np.int64)

    gx = float(goal % width)
    gy = float(goal // width)
    sx = float(start % width)
    sy = float(start // width)

    g[start] = 0.0
    heap_f[0] = math.sqrt((sx - gx) * (sx - gx) + (sy - gy) * (sy - gy))
    heap_i[0] = start
    size = 1
    found = False

    while size > 0:
        top_f = heap_f[0]
        top_i = heap_i[0]
        size -= 1
        heap_f[0] = heap_f[size]
        heap_i[0] = heap_i[size]
        pos = 0
        while True:
            left = 2 * pos + 1
            right = left + 1
            best = pos
            if left < size and (
                heap_f[left] < heap_f[best]
                or (heap_f[left] == heap_f[best] and heap_i[left] < heap_i[best])
            ):
                best = left
            if right < size and (
                heap_f[right] < heap_f[best]
                or (heap_f[right] == heap_f[best] and heap_i[right] < heap_i[best])
            ):
                best = right
            if best == pos:
                break
            heap_f[pos], heap_f[best] = heap_f[best], heap_f[pos]
            heap_i[pos], heap_i[best] = heap_i[best], heap_i[pos]
            pos = best

        node = top_i
        if closed[node]:
            continue
        closed[node] = 1
        if node == goal:
            found = True
            break

        x = node % width
        y = node // width
        g_node = g[node]
        for t in range(8):
            nx = x + _DX8[t]
            ny = y + _DY8[t]
            if nx < 0 or nx >= width or ny < 0 or ny >= height:
                continue
            nb = ny * width + nx
            if occ[nb]:
                continue
            step = 1.0 if t < 4 else _SQRT2
            g_new = g_node + step
            if g_new < g[nb]:
                g[nb] = g_new
                parent[nb] = node
                fx = float(nx) - gx
                fy = float(ny) - gy
                f_new = g_new + math.sqrt(fx * fx + fy * fy)
                heap_f[size] = f_new
                heap_i[size] = nb
                pos = size
                size += 1
                while pos > 0:
                    up = (pos - 1) // 2
                    if heap_f[pos] < heap_f[up] or (
                        heap_f[pos] == heap_f[up] and heap_i[pos] < heap_i[up]
                    ):
                        heap_f[pos], heap_f[up] = heap_f[up], heap_f[pos]
                        heap_i[pos], heap_i[up] = heap_i[up], heap_i[pos]
                        pos = up
                    else:
                        break

    if not found:
        return np.empty(0, dtype=np.int64)

    length = 1
    node = goal
    while node != start:
        node = parent[node]
        length += 1
    path = np.empty(length, dtype=np.int64)
    node = goal
    for m in range(length - 1, -1, -1):
        path[m] = node
        node = parent[node]
    return path


@njit(cache=True)
def _ndot(ax, ay, bx, by, eps):
    """Normalized dot; returns 2.0 as the 'degenerate' sentinel."""
    na = math.sqrt(ax * ax + ay * ay)
    nb = math.sqrt(bx * bx + by * by)
    if na < eps or nb < eps:
        return 2.0
    d = (ax * bx + ay * by) / (na * nb)
    if d > 1.0:
        d = 1.0
    elif d < -1.0:
        d = -1.0
    return d


@njit(cache=True)
def path_persistence(hist, length, eps):
    """Mean alignment of consecutive displacements of one history.

    hist: (cap, 2) newest-first, first ``length`` rows valid. Terms with
    a degenerate displacement are skipped; no valid terms → 0.
    """
    total = 0.0
    count = 0
    for m in range(length - 2):
        ax = hist[m + 1, 0] - hist[m + 2, 0]
        ay = hist[m + 1, 1] - hist[m + 2, 1]
        bx = hist[m, 0] - hist[m + 1, 0]
        by = hist[m, 1] - hist[m + 1, 1]
        d = _ndot(ax, ay, bx, by, eps)
        if d <= 1.0:
            total += d
            count += 1
    if count == 0:
        return 0.0
    return total / count


@njit(cache=True)
def path_similarity(ha, la, hb, lb, eps):
    """Mean alignment of paired displacements of two histories.

    Both truncated to their common newest length before differencing.
    Terms with a degenerate displacement on either side are skipped;
    no valid terms → 0.
    """
    length = min(la, lb)
    total = 0.0
    count = 0
    for m in range(length - 1):
        ax = ha[m, 0] - ha[m + 1, 0]
        ay = ha[m, 1] - ha[m + 1, 1]
        bx = hb[m, 0] - hb[m + 1, 0]
        by = hb[m, 1] - hb[m + 1, 1]
        d = _ndot(ax, ay, bx, by, eps)
        if d <= 1.0:
            total += d
            count += 1
    if count == 0:
        return 0.0
    return total / count


@njit(cache=True)
def order_metric(vel, eps):
    """Velocity alignment over all ordered pairs, normalized by N(N-1).

    Degenerate pairs (either speed below eps) contribute 0 but still
    count in the normalizer.
    """
    n = vel.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = _ndot(vel[i, 0], vel[i, 1], vel[j, 0], vel[j, 1], eps)
            if d <= 1.0:
                total += d
    return total / (n * (n - 1))


@njit(cache=True)
def target_scores(stack, lengths, eps):
    """Per-candidate scores: persistence plus summed pairwise similarity.

    stack: (M, cap, 2) histories newest-first, lengths: (M,). Row order
    is the candidate order; similarity terms accumulate in ascending
    row order, skipping the candidate itself.
    """
    m_cands = stack.shape[0]
    out = np.empty(m_cands)
    for j in range(m_cands):
        score = path_persistence(stack[j], lengths[j], eps)
        for l in range(m_cands):
            if l == j:
                continue
            score += path_similarity(stack[j], lengths[j], stack[l], lengths[l], eps)
        out[j] = score
    return out
