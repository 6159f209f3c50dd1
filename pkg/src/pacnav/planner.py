"""Per-agent occupancy grid and shortest-path planning on it.

Each agent accretes sensed trees into its own grid (cells only ever go
free → occupied) and replans every step with A* over the 8-connected
graph: axis edges cost 1, diagonal edges sqrt(2), both in cell units,
and an edge exists only between free cells. Path cost is reported in
cell units and recomputed canonically from the step composition
(axis count + diagonal count) so that equal-cost paths compare exactly.

The agent itself is treated as a point; obstacle inflation bakes its
body radius into the occupied set. The start cell is never blocked:
the search ignores the occupancy of the start node, so an agent whose
own cell got marked (it may legally stand inside the inflated band)
can still plan its way out.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels

_SQRT2 = math.sqrt(2.0)


class OccupancyGrid:
    """Boolean occupancy over a regular grid, origin at the lower-left.

    ``version`` increments whenever any cell flips, so planning results
    can be memoized against it.
    """

    __slots__ = ("origin", "cell_size", "width", "height", "occupancy", "version")

    def __init__(self, origin, cell_size: float, width: int, height: int):
        self.origin = np.asarray(origin, dtype=np.float64)
        self.cell_size = float(cell_size)
        self.width = int(width)
        self.height = int(height)
        self.occupancy = np.zeros((self.height, self.width), dtype=np.uint8)
        self.version = 0

    def cell_of(self, p: np.ndarray) -> tuple[int, int]:
        """Cell containing world point p, clamped into bounds."""
        ix = int(math.floor((p[0] - self.origin[0]) / self.cell_size))
        iy = int(math.floor((p[1] - self.origin[1]) / self.cell_size))
        ix = min(max(ix, 0), self.width - 1)
        iy = min(max(iy, 0), self.height - 1)
        return ix, iy

    def center_of(self, cell: tuple[int, int]) -> np.ndarray:
        ix, iy = cell
        return self.origin + (np.array([ix, iy], dtype=np.float64) + 0.5) * self.cell_size

    def is_occupied(self, cell: tuple[int, int]) -> bool:
        return bool(self.occupancy[cell[1], cell[0]])


class GridPath:
    """Cell-center waypoints from start to target plus canonical cost."""

    __slots__ = ("waypoints", "cost", "cells")

    def __init__(self, waypoints: np.ndarray, cost: float, cells: np.ndarray):
        self.waypoints = waypoints  # (L, 2) world coordinates
        self.cost = cost  # cell units
        self.cells = cells  # (L,) flat indices

    def __len__(self) -> int:
        return self.waypoints.shape[0]


def grid_for_area(origin, width_m: float, height_m: float, cell_size: float,
                  margin: float = 0.0) -> OccupancyGrid:
    """Empty grid covering the rectangle plus a margin on all sides."""
    lo = np.asarray(origin, dtype=np.float64) - margin
    w = int(math.ceil((width_m + 2 * margin) / cell_size))
    h = int(math.ceil((height_m + 2 * margin) / cell_size))
    return OccupancyGrid(lo, cell_size, w, h)


def update_grid(grid: OccupancyGrid, sensed_trees, inflation: float) -> OccupancyGrid:
    """Mark every cell whose center lies inside an inflated tree disk.

    ``sensed_trees`` is an iterable of (center, radius) pairs. Mutates
    and returns the grid; already-occupied cells are left alone.
    """
    occ = grid.occupancy
    cs = grid.cell_size
    ox, oy = grid.origin
    flipped = False
    for center, radius in sensed_trees:
        r = radius + inflation
        ix0 = max(0, int(math.floor((center[0] - r - ox) / cs)))
        ix1 = min(grid.width - 1, int(math.floor((center[0] + r - ox) / cs)))
        iy0 = max(0, int(math.floor((center[1] - r - oy) / cs)))
        iy1 = min(grid.height - 1, int(math.floor((center[1] + r - oy) / cs)))
        if ix1 < ix0 or iy1 < iy0:
            continue
        xs = ox + (np.arange(ix0, ix1 + 1) + 0.5) * cs - center[0]
        ys = oy + (np.arange(iy0, iy1 + 1) + 0.5) * cs - center[1]
        inside = (ys * ys)[:, None] + (xs * xs)[None, :] <= r * r
        block = occ[iy0 : iy1 + 1, ix0 : ix1 + 1]
        if np.any(inside & (block == 0)):
            flipped = True
            block |= inside.astype(np.uint8)
    if flipped:
        grid.version += 1
    return grid


def edge_weight(grid: OccupancyGrid, a: tuple[int, int], b: tuple[int, int]) -> float | None:
    """1 for free axis neighbors, sqrt(2) for free diagonal neighbors."""
    dx = abs(a[0] - b[0])
    dy = abs(a[1] - b[1])
    if max(dx, dy) != 1:
        return None
    if grid.is_occupied(a) or grid.is_occupied(b):
        return None
    return _SQRT2 if dx == 1 and dy == 1 else 1.0


def path_cost_cells(cells: np.ndarray, width: int) -> float:
    """Canonical cost of a cell chain: axis steps + sqrt(2) * diagonal steps."""
    xs = cells % width
    ys = cells // width
    dx = np.abs(np.diff(xs))
    dy = np.abs(np.diff(ys))
    n_diag = int(np.sum((dx == 1) & (dy == 1)))
    n_axis = int(cells.shape[0] - 1 - n_diag)
    return float(n_axis) + float(n_diag) * _SQRT2


def nearest_free_cell(grid: OccupancyGrid, cell: tuple[int, int]) -> tuple[int, int] | None:
    """Closest free cell to ``cell`` by center distance; ties take the
    lowest flat index. None when the whole grid is occupied."""
    if not grid.is_occupied(cell):
        return cell
    occ = grid.occupancy
    free = occ == 0
    if not free.any():
        return None
    ys, xs = np.nonzero(free)
    d2 = (xs - cell[0]) ** 2 + (ys - cell[1]) ** 2
    flat = ys.astype(np.int64) * grid.width + xs
    order = np.lexsort((flat, d2))
    pick = order[0]
    return int(xs[pick]), int(ys[pick])


def astar(grid: OccupancyGrid, start_cell: tuple[int, int],
          goal_cell: tuple[int, int]) -> GridPath | None:
    """Minimal-cost 8-connected path with a Euclidean heuristic.

    An occupied goal is retargeted to the nearest free cell first.
    Returns None when no free path exists. Ties during the search are
    broken by the lower flat cell index, so results are deterministic.
    """
    if grid.is_occupied(goal_cell):
        goal_cell = nearest_free_cell(grid, goal_cell)
        if goal_cell is None:
            return None
    w = grid.width
    start = start_cell[1] * w + start_cell[0]
    goal = goal_cell[1] * w + goal_cell[0]
    if start == goal:
        cells = np.array([start], dtype=np.int64)
        return GridPath(_cells_to_points(grid, cells), 0.0, cells)
    cells = kernels.astar_grid(grid.occupancy.reshape(-1), w, grid.height, start, goal)
    if cells.shape[0] == 0:
        return None
    return GridPath(_cells_to_points(grid, cells), path_cost_cells(cells, w), cells)


def _cells_to_points(grid: OccupancyGrid, cells: np.ndarray) -> np.ndarray:
    xs = (cells % grid.width + 0.5) * grid.cell_size + grid.origin[0]
    ys = (cells // grid.width + 0.5) * grid.cell_size + grid.origin[1]
    return np.stack([xs, ys], axis=1)


def plan_to_point(grid: OccupancyGrid, p_start: np.ndarray,
                  p_target: np.ndarray) -> GridPath | None:
    """Plan between two world points (cells clamped into the grid)."""
    return astar(grid, grid.cell_of(p_start), grid.cell_of(p_target))


def next_waypoint(path: GridPath, p_i: np.ndarray) -> np.ndarray:
    """Waypoint one past the nearest one (lookahead), or the final one.

    The nearest waypoint is usually the agent's own cell center, which
    would zero the navigation vector; looking one cell ahead keeps the
    agent moving along the path.
    """
    wp = path.waypoints
    if wp.shape[0] == 0:
        raise ValueError("empty path")
    d = wp - np.asarray(p_i, dtype=np.float64)
    nearest = int(np.argmin(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]))
    return wp[min(nearest + 1, wp.shape[0] - 1)].copy()


def grid_to_pbm(grid: OccupancyGrid) -> str:
    """Plain-text bitmap dump (P1), top row first, 1 = occupied."""
    lines = [f"P1", f"{grid.width} {grid.height}"]
    for iy in range(grid.height - 1, -1, -1):
        lines.append(" ".join("1" if v else "0" for v in grid.occupancy[iy]))
    return "\n".join(lines) + "\n"
