"""Scenario configuration: every knob of a mission in one place.

Configs round-trip through plain dicts (and JSON files via the CLI).
Parsing is strict: unknown keys are rejected so typos fail loudly
instead of silently running defaults.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np


class ConfigError(ValueError):
    """Invalid or unknown configuration content."""


@dataclass
class ForestParams:
    seed: int = 0
    n_trees: int = 51
    tree_radius: float = 0.3
    width: float = 50.0
    height: float = 50.0
    origin: tuple[float, float] = (-25.0, -25.0)
    min_spacing: float | None = None  # None -> 2*tree_radius + 1.2
    los_inflation: float = 0.0


@dataclass
class ScenarioConfig:
    # mission geometry
    n_uavs: int = 3
    informed_ids: tuple[int, ...] = (0,)
    goal: tuple[float, float] = (20.0, 0.0)
    spawn_center: tuple[float, float] = (-20.0, 0.0)
    spawn_radius: float = 3.0
    goal_radius: float = 6.0
    forest: ForestParams = field(default_factory=ForestParams)

    # time base
    dt: float = 0.1
    max_steps: int = 6000
    master_seed: int = 0

    # perception
    sigma_los: float = 0.2
    sigma_nlos: float = 0.5
    k_m: int = 30
    k_p: int = 50
    sense_radius: float = 10.0
    uav_occlusion: bool = False

    # target selection
    r_f: float = 4.0
    min_history: int = 3

    # control
    k_n: float = 1.2
    k_c: float = 1.0
    v_min: float = 0.3
    alpha: float = 2.0
    r_o: float = 2.5
    v_max: float = 2.0
    eps_dist: float = 0.05

    # body and planner geometry
    uav_radius: float = 0.25
    cell_size: float = 0.5
    grid_margin: float = 5.0
    inflation: float | None = None  # None -> uav_radius
    spawn_margin: float = 0.5

    def __post_init__(self):
        self.informed_ids = tuple(sorted(int(i) for i in self.informed_ids))
        self.validate()

    def validate(self) -> None:
        if self.n_uavs < 1:
            raise ConfigError("n_uavs must be >= 1")
        if not set(self.informed_ids) <= set(range(self.n_uavs)):
            raise ConfigError("informed_ids must be a subset of 0..n_uavs-1")
        if self.spawn_radius <= 0 or self.goal_radius <= 0:
            raise ConfigError("spawn_radius and goal_radius must be positive")
        if self.max_steps < 1:
            raise ConfigError("max_steps must be >= 1")
        if self.dt <= 0:
            raise ConfigError("dt must be positive")
        if self.k_m < 0 or self.k_p < 1:
            raise ConfigError("k_m must be >= 0 and k_p >= 1")
        if self.master_seed < 0 or self.forest.seed < 0:
            raise ConfigError("seeds must be non-negative")

    @property
    def resolved_inflation(self) -> float:
        return self.uav_radius if self.inflation is None else self.inflation

    @property
    def goal_vec(self) -> np.ndarray:
        return np.asarray(self.goal, dtype=np.float64)

    @property
    def spawn_center_vec(self) -> np.ndarray:
        return np.asarray(self.spawn_center, dtype=np.float64)


def config_to_dict(config: ScenarioConfig) -> dict:
    out = dataclasses.asdict(config)
    out["informed_ids"] = list(config.informed_ids)
    out["goal"] = list(config.goal)
    out["spawn_center"] = list(config.spawn_center)
    out["forest"]["origin"] = list(config.forest.origin)
    return out


_FOREST_KEYS = {f.name for f in dataclasses.fields(ForestParams)}
_CONFIG_KEYS = {f.name for f in dataclasses.fields(ScenarioConfig)}


def config_from_dict(data: dict) -> ScenarioConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be a mapping")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(data)
    if "forest" in kwargs:
        fdata = kwargs["forest"]
        if not isinstance(fdata, dict):
            raise ConfigError("forest must be a mapping")
        funknown = set(fdata) - _FOREST_KEYS
        if funknown:
            raise ConfigError(f"unknown forest keys: {sorted(funknown)}")
        fkwargs = dict(fdata)
        if "origin" in fkwargs:
            fkwargs["origin"] = tuple(fkwargs["origin"])
        kwargs["forest"] = ForestParams(**fkwargs)
    for key in ("goal", "spawn_center"):
        if key in kwargs:
            kwargs[key] = tuple(kwargs[key])
    if "informed_ids" in kwargs:
        kwargs["informed_ids"] = tuple(kwargs["informed_ids"])
    try:
        return ScenarioConfig(**kwargs)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
