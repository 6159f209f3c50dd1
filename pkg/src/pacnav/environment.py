"""Forest world: procedural generation, line-of-sight and obstacle queries.

The forest is a set of equal-radius disk obstacles inside a rectangular
area. It is immutable after generation and safe to share across agents.
Placement uses seeded rejection sampling so the same seed and parameters
always reproduce the same forest, bit for bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels


class PlacementError(RuntimeError):
    """Rejection sampling could not fit the requested trees."""


@dataclass(frozen=True)
class KeepClearZone:
    """Disk where no tree center may be placed (spawn and goal regions)."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=np.float64))
        if self.radius <= 0:
            raise ValueError("keep-clear radius must be positive")


@dataclass
class Forest:
    """Disk obstacles with a common radius inside a rectangular area.

    ``origin`` is the lower-left corner of the area; tree centers live in
    [origin, origin + (width, height)]. ``los_inflation`` widens the
    disks for visibility tests only, never for collision geometry.
    """

    centers: np.ndarray  # (M, 2) float64
    tree_radius: float
    width: float
    height: float
    seed: int
    origin: np.ndarray = field(default_factory=lambda: np.zeros(2))
    los_inflation: float = 0.0

    def __post_init__(self):
        self.centers = np.asarray(self.centers, dtype=np.float64).reshape(-1, 2)
        self.origin = np.asarray(self.origin, dtype=np.float64)

    @property
    def n_trees(self) -> int:
        return self.centers.shape[0]

    @property
    def area(self) -> float:
        return self.width * self.height


# Total attempt budget for rejection sampling.
_PLACEMENT_BUDGET = 10**6


def default_min_spacing(tree_radius: float) -> float:
    # One UAV diameter plus margin between trunk surfaces.
    return 2.0 * tree_radius + 1.2


def generate_forest(
    seed: int,
    area: tuple[float, float],
    n_trees: int,
    tree_radius: float = 0.3,
    min_spacing: float | None = None,
    keep_clear: tuple[KeepClearZone, ...] = (),
    origin: tuple[float, float] = (0.0, 0.0),
    los_inflation: float = 0.0,
) -> Forest:
    """Place ``n_trees`` non-overlapping trees by rejection sampling.

    A candidate is rejected when its center falls inside a keep-clear
    zone or closer than ``min_spacing`` to an already placed center.
    Raises PlacementError when the attempt budget runs out.
    """
    if min_spacing is None:
        min_spacing = default_min_spacing(tree_radius)
    width, height = float(area[0]), float(area[1])
    lo = np.asarray(origin, dtype=np.float64)
    extent = np.array([width, height])

    rng = np.random.default_rng(seed)
    placed = np.empty((n_trees, 2))
    count = 0
    spacing2 = min_spacing * min_spacing

    for _ in range(_PLACEMENT_BUDGET):
        if count == n_trees:
            break
        p = lo + rng.random(2) * extent
        ok = True
        for zone in keep_clear:
            d = p - zone.center
            if d[0] * d[0] + d[1] * d[1] < zone.radius * zone.radius:
                ok = False
                break
        if ok and count > 0:
            d = placed[:count] - p
            if np.any(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1] < spacing2):
                ok = False
        if ok:
            placed[count] = p
            count += 1
    if count < n_trees:
        raise PlacementError(
            f"placed {count}/{n_trees} trees before exhausting {_PLACEMENT_BUDGET} attempts"
        )

    return Forest(
        centers=placed[:count].copy(),
        tree_radius=float(tree_radius),
        width=width,
        height=height,
        seed=int(seed),
        origin=lo,
        los_inflation=float(los_inflation),
    )


def density(n_trees: int, r_o: float, area: float) -> float:
    """Obstacle density: fraction of area covered by avoidance disks."""
    if area <= 0:
        raise ValueError("area must be positive")
    return n_trees * math.pi * r_o * r_o / area


def line_of_sight(forest: Forest, a: np.ndarray, b: np.ndarray) -> bool:
    """True when no (inflated) tree disk intersects the closed segment a-b."""
    r = forest.tree_radius + forest.los_inflation
    return not kernels.segment_blocked(
        float(a[0]), float(a[1]), float(b[0]), float(b[1]),
        forest.centers[:, 0], forest.centers[:, 1], r,
    )


def los_matrix(
    forest: Forest,
    positions: np.ndarray,
    body_radius: float | None = None,
) -> np.ndarray:
    """Pairwise LoS flags for all agents, symmetric, diagonal true.

    When ``body_radius`` is given, other UAV bodies occlude too: the
    segment i-j is additionally tested against every third agent's disk.
    """
    positions = np.asarray(positions, dtype=np.float64)
    r = forest.tree_radius + forest.los_inflation
    out = kernels.pairwise_los(
        positions, forest.centers[:, 0], forest.centers[:, 1], r
    )
    if body_radius is not None:
        n = positions.shape[0]
        for i in range(n):
            for j in range(i + 1, n):
                if not out[i, j]:
                    continue
                others = np.array(
                    [m for m in range(n) if m != i and m != j], dtype=np.int64
                )
                if others.size and kernels.segment_blocked(
                    positions[i, 0], positions[i, 1],
                    positions[j, 0], positions[j, 1],
                    positions[others, 0], positions[others, 1],
                    body_radius,
                ):
                    out[i, j] = 0
                    out[j, i] = 0
    return out.astype(bool)


def sense_obstacles(forest: Forest, p: np.ndarray, r_sense: float) -> set[int]:
    """Indices of trees whose center lies within r_sense of p."""
    if r_sense <= 0:
        raise ValueError("r_sense must be positive")
    if forest.n_trees == 0:
        return set()
    d = forest.centers - np.asarray(p, dtype=np.float64)
    hit = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1] <= r_sense * r_sense
    return set(np.flatnonzero(hit).tolist())


def nearby_obstacles(
    forest: Forest,
    uav_estimates: list[np.ndarray],
    p_i: np.ndarray,
    r_o: float,
) -> list[np.ndarray]:
    """Obstacle points threatening collision: tree centers first (by
    index), then other-UAV position estimates (in given order), all
    within r_o of p_i."""
    if r_o <= 0:
        raise ValueError("r_o must be positive")
    out: list[np.ndarray] = []
    r2 = r_o * r_o
    if forest.n_trees:
        d = forest.centers - p_i
        for idx in np.flatnonzero(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1] <= r2):
            out.append(forest.centers[idx])
    for est in uav_estimates:
        d0 = est[0] - p_i[0]
        d1 = est[1] - p_i[1]
        if d0 * d0 + d1 * d1 <= r2:
            out.append(est)
    return out


def forest_to_dict(forest: Forest) -> dict:
    return {
        "seed": forest.seed,
        "area": {
            "origin": [float(forest.origin[0]), float(forest.origin[1])],
            "width": forest.width,
            "height": forest.height,
        },
        "los_inflation": forest.los_inflation,
        "trees": [
            [float(x), float(y), forest.tree_radius] for x, y in forest.centers
        ],
    }


def forest_from_dict(data: dict) -> Forest:
    trees = data["trees"]
    if trees:
        radii = {t[2] for t in trees}
        if len(radii) != 1:
            raise ValueError("forest file must use a single tree radius")
        tree_radius = float(trees[0][2])
    else:
        tree_radius = 0.3
    centers = np.array([[t[0], t[1]] for t in trees], dtype=np.float64).reshape(-1, 2)
    return Forest(
        centers=centers,
        tree_radius=tree_radius,
        width=float(data["area"]["width"]),
        height=float(data["area"]["height"]),
        seed=int(data["seed"]),
        origin=np.asarray(data["area"]["origin"], dtype=np.float64),
        los_inflation=float(data.get("los_inflation", 0.0)),
    )


def save_forest(forest: Forest, path: str | Path) -> None:
    Path(path).write_text(json.dumps(forest_to_dict(forest), indent=2) + "\n")


def load_forest(path: str | Path) -> Forest:
    return forest_from_dict(json.loads(Path(path).read_text()))
