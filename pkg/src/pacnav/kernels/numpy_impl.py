"""Pure numpy / stdlib fallback for the compiled kernels.

Selected with PACNAV_BACKEND=numpy, or automatically when numba is not
importable. Every function mirrors its ``numba_impl`` twin operation
for operation so that paths, scores and metrics agree across backends.
"""

from __future__ import annotations

import heapq
import math

import numpy as np

_DX8 = (1, -1, 0, 0, 1, -1, 1, -1)
_DY8 = (0, 0, 1, -1, 1, 1, -1, -1)

_SQRT2 = math.sqrt(2.0)


def segment_hits_disk(ax, ay, bx, by, cx, cy, r):
    dx = bx - ax
    dy = by - ay
    fx = cx - ax
    fy = cy - ay
    len2 = dx * dx + dy * dy
    if len2 > 0.0:
        t = min(1.0, max(0.0, (fx * dx + fy * dy) / len2))
    else:
        t = 0.0
    px = ax + t * dx - cx
    py = ay + t * dy - cy
    return px * px + py * py <= r * r


def segment_blocked(ax, ay, bx, by, cx, cy, r):
    if cx.shape[0] == 0:
        return False
    dx = bx - ax
    dy = by - ay
    len2 = dx * dx + dy * dy
    if len2 > 0.0:
        t = np.clip(((cx - ax) * dx + (cy - ay) * dy) / len2, 0.0, 1.0)
    else:
        t = np.zeros_like(cx)
    px = ax + t * dx - cx
    py = ay + t * dy - cy
    return bool(np.any(px * px + py * py <= r * r))


def pairwise_los(pos, cx, cy, r):
    n = pos.shape[0]
    out = np.ones((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            if segment_blocked(pos[i, 0], pos[i, 1], pos[j, 0], pos[j, 1], cx, cy, r):
                out[i, j] = 0
                out[j, i] = 0
    return out


def astar_grid(occ, width, height, start, goal):
    g = {start: 0.0}
    parent = {}
    closed = set()
    gx = float(goal % width)
    gy = float(goal // width)
    sx = float(start % width)
    sy = float(start // width)
    heap = [(math.sqrt((sx - gx) ** 2 + (sy - gy) ** 2), start)]
    found = False

    while heap:
        _, node = heapq.heappop(heap)
        if node in closed:
            continue
        closed.add(node)
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
            if g_new < g.get(nb, math.inf):
                g[nb] = g_new
                parent[nb] = node
                fx = float(nx) - gx
                fy = float(ny) - gy
                heapq.heappush(heap, (g_new + math.sqrt(fx * fx + fy * fy), nb))

    if not found:
        return np.empty(0, dtype=np.int64)

    chain = [goal]
    node = goal
    while node != start:
        node = parent[node]
        chain.append(node)
    chain.reverse()
    return np.array(chain, dtype=np.int64)


def _ndot(ax, ay, bx, by, eps):
    na = math.sqrt(ax * ax + ay * ay)
    nb = math.sqrt(bx * bx + by * by)
    if na < eps or nb < eps:
        return 2.0
    return min(1.0, max(-1.0, (ax * bx + ay * by) / (na * nb)))


def path_persistence(hist, length, eps):
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


def path_similarity(ha, la, hb, lb, eps):
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


def order_metric(vel, eps):
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


def target_scores(stack, lengths, eps):
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
