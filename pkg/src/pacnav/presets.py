"""Canned scenario configurations for the benchmark cases.

Cases 1a/1b (3 UAVs) and 2a/2b (6 UAVs) share the benchmark parameter
set (r_f=4.0 m, r_o=2.5 m, k_c=1.0 1/s, k_n=1.2 1/s, goal at (20, 0))
inside a 50x50 m forest and differ in how many agents are informed.
'forest-real' mirrors the reported field-trial geometry: 4 UAVs, one
informed, a 40 m dash to (0, 40) through a sparser forest.

The benchmark's nominal tree count (104) and nominal density (0.4) are
mutually inconsistent under the density formula; presets default to
matching the density and can be switched to the nominal tree count
with tree_matching='count'.
"""

from __future__ import annotations

import math

from .config import ForestParams, ScenarioConfig


def trees_for_density(rho: float, r_o: float, area: float) -> int:
    """Tree count whose avoidance-disk density is closest to rho."""
    return round(rho * area / (math.pi * r_o * r_o))


_AREA = 50.0 * 50.0
_R_O = 2.5


def _forest(n_trees: int, origin: tuple[float, float]) -> ForestParams:
    return ForestParams(seed=0, n_trees=n_trees, origin=origin)


def _case(n_uavs: int, informed: tuple[int, ...], spawn_radius: float,
          goal_radius: float, n_trees: int) -> ScenarioConfig:
    return ScenarioConfig(
        n_uavs=n_uavs,
        informed_ids=informed,
        goal=(20.0, 0.0),
        spawn_center=(-20.0, 0.0),
        spawn_radius=spawn_radius,
        goal_radius=goal_radius,
        forest=_forest(n_trees, (-25.0, -25.0)),
    )


def preset_config(name: str, tree_matching: str = "rho") -> ScenarioConfig:
    """Build a preset by name: 1a, 1b, 2a, 2b, or forest-real."""
    if tree_matching not in ("rho", "count"):
        raise ValueError("tree_matching must be 'rho' or 'count'")
    n_sim = trees_for_density(0.4, _R_O, _AREA) if tree_matching == "rho" else 104
    key = name.lower()
    if key == "1a":
        return _case(3, (0,), 3.0, 6.0, n_sim)
    if key == "1b":
        return _case(3, (0, 1), 3.0, 6.0, n_sim)
    if key == "2a":
        return _case(6, (0, 1), 4.5, 8.5, n_sim)
    if key == "2b":
        return _case(6, (0, 1, 2, 3), 4.5, 8.5, n_sim)
    if key == "forest-real":
        return ScenarioConfig(
            n_uavs=4,
            informed_ids=(2,),
            goal=(0.0, 40.0),
            spawn_center=(0.0, 0.0),
            spawn_radius=3.0,
            goal_radius=6.0,
            forest=_forest(trees_for_density(0.25, _R_O, _AREA), (-25.0, -5.0)),
        )
    raise ValueError(f"unknown preset {name!r}")


PRESET_NAMES = ("1a", "1b", "2a", "2b", "forest-real")
