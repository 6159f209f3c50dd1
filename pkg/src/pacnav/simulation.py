"""Mission orchestration: world state, the synchronous step, runs, batches.

Every step follows the same pipeline for every agent over the frozen
state of the previous step: sense trees, accrete the personal map,
observe the other UAVs (noisy, line-of-sight dependent), update the
neighbor set and path histories, decide the target through the state
machine, plan on the grid, and form the velocity command. All commands
are then applied at once. Nothing about an agent's decision can depend
on another agent's same-step decision, which is what makes runs exactly
reproducible.

Randomness is split into independent streams derived from the master
seed (spawn, one stream per ordered observer/observed pair) plus the
forest's own seed, so changing one component's draws never perturbs
another's.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .config import ScenarioConfig
from .controller import ControlParams, collision_vector, control, nav_informed, nav_uninformed
from .environment import (
    Forest,
    KeepClearZone,
    generate_forest,
    los_matrix,
    nearby_obstacles,
    sense_obstacles,
)
from .geometry import norm
from .metrics import order_metric
from .perception import (
    NeighborSet,
    ObservationModel,
    PathHistory,
    observe,
    update_history,
    update_neighbors,
)
from .planner import (
    GridPath,
    OccupancyGrid,
    grid_for_area,
    next_waypoint,
    plan_to_point,
    update_grid,
)
from .targets import (
    FsmState,
    SelectionParams,
    fsm_input,
    fsm_step,
    potential_targets,
    resolve_target,
    select_target,
)


class SpawnError(RuntimeError):
    """Could not pack the agents into the spawn disk."""


_SPAWN_BUDGET = 10**5


def forest_for_config(config: ScenarioConfig) -> Forest:
    """Generate the forest with spawn and goal regions kept clear."""
    fp = config.forest
    keep_clear = (
        KeepClearZone(config.spawn_center_vec, config.spawn_radius + 2.0),
        KeepClearZone(config.goal_vec, config.goal_radius),
    )
    return generate_forest(
        seed=fp.seed,
        area=(fp.width, fp.height),
        n_trees=fp.n_trees,
        tree_radius=fp.tree_radius,
        min_spacing=fp.min_spacing,
        keep_clear=keep_clear,
        origin=fp.origin,
        los_inflation=fp.los_inflation,
    )


def spawn_positions(config: ScenarioConfig, forest: Forest,
                    rng: np.random.Generator) -> np.ndarray:
    """Uniform positions in the spawn disk, rejection-sampled for spacing.

    Candidates keep 2*uav_radius + spawn_margin from each other and a
    body-to-trunk margin from any tree.
    """
    center = config.spawn_center_vec
    spacing = 2.0 * config.uav_radius + config.spawn_margin
    tree_clear = forest.tree_radius + config.uav_radius + config.spawn_margin
    out = np.empty((config.n_uavs, 2))
    count = 0
    for _ in range(_SPAWN_BUDGET):
        if count == config.n_uavs:
            break
        r = config.spawn_radius * math.sqrt(rng.random())
        theta = 2.0 * math.pi * rng.random()
        p = center + r * np.array([math.cos(theta), math.sin(theta)])
        if forest.n_trees:
            d = forest.centers - p
            if np.min(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]) < tree_clear * tree_clear:
                continue
        if count:
            d = out[:count] - p
            if np.min(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]) < spacing * spacing:
                continue
        out[count] = p
        count += 1
    if count < config.n_uavs:
        raise SpawnError(
            f"placed {count}/{config.n_uavs} agents before exhausting {_SPAWN_BUDGET} attempts"
        )
    return out


class World:
    """Full mutable mission state for one run."""

    def __init__(self, config: ScenarioConfig, forest: Forest | None = None):
        self.config = config
        self.forest = forest if forest is not None else forest_for_config(config)
        n = config.n_uavs

        spawn_rng = np.random.default_rng(np.random.SeedSequence([config.master_seed, 1]))
        self.pos = spawn_positions(config, self.forest, spawn_rng)
        self.u_prev = np.zeros((n, 2))
        self.informed = np.zeros(n, dtype=bool)
        self.informed[list(config.informed_ids)] = True
        self.fsm = [
            FsmState.GOAL if self.informed[i] else FsmState.HOLD for i in range(n)
        ]
        self.prev_target = self.pos.copy()
        self.k = 0

        self.obs_model = ObservationModel(config.sigma_los, config.sigma_nlos)
        self.sel_params = SelectionParams(config.r_f, config.min_history)
        self.ctrl_params = ControlParams(
            k_n=config.k_n, k_c=config.k_c, v_min=config.v_min, alpha=config.alpha,
            r_f=config.r_f, r_o=config.r_o, v_max=config.v_max, eps_dist=config.eps_dist,
        )

        self.neighbors = [NeighborSet(config.k_m) for _ in range(n)]
        self.histories: list[dict[int, PathHistory]] = [{} for _ in range(n)]
        self.last_est: list[dict[int, np.ndarray]] = [{} for _ in range(n)]
        self.sensed: list[set[int]] = [set() for _ in range(n)]
        self.grids = [
            grid_for_area(
                self.forest.origin, self.forest.width, self.forest.height,
                config.cell_size, config.grid_margin,
            )
            for _ in range(n)
        ]
        self.plan_cache: list[dict] = [{} for _ in range(n)]
        self.cache_version = [0] * n
        self.pair_rng = {
            (i, j): np.random.default_rng(
                np.random.SeedSequence([config.master_seed, 2, i, j])
            )
            for i in range(n)
            for j in range(n)
            if i != j
        }

    def all_in_goal(self) -> bool:
        g = self.config.goal_vec
        r = self.config.goal_radius
        for i in range(self.config.n_uavs):
            if norm(self.pos[i] - g) > r:
                return False
        return True


def _plan_cached(world: World, i: int, start: np.ndarray,
                 target: np.ndarray) -> GridPath | None:
    """Memoized planning: exact same result as replanning from scratch,
    keyed on the discrete inputs (start cell, goal cell, map version)."""
    grid = world.grids[i]
    if world.cache_version[i] != grid.version:
        world.plan_cache[i].clear()
        world.cache_version[i] = grid.version
    key = (grid.cell_of(start), grid.cell_of(target))
    cache = world.plan_cache[i]
    if key in cache:
        return cache[key]
    path = plan_to_point(grid, start, target)
    cache[key] = path
    return path


def pair_distance_stats(pos: np.ndarray) -> tuple[float, float, float]:
    """Min, max and mean of the true pairwise distances."""
    n = pos.shape[0]
    if n < 2:
        return math.nan, math.nan, math.nan
    dmin = math.inf
    dmax = -math.inf
    total = 0.0
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            d = math.sqrt(dx * dx + dy * dy)
            dmin = min(dmin, d)
            dmax = max(dmax, d)
            total += d
            count += 1
    return dmin, dmax, total / count


def min_tree_distance(pos: np.ndarray, forest: Forest) -> float:
    """Smallest distance from any agent to any tree center."""
    if forest.n_trees == 0:
        return math.nan
    best = math.inf
    for i in range(pos.shape[0]):
        d = forest.centers - pos[i]
        best = min(best, math.sqrt(np.min(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1])))
    return best


def step(world: World) -> dict:
    """Advance one step; returns the log record of the pre-step state."""
    config = world.config
    forest = world.forest
    n = config.n_uavs
    pos = world.pos
    k = world.k
    inflation = config.resolved_inflation

    # 1. Sense trees, accrete each agent's map.
    for i in range(n):
        found = sense_obstacles(forest, pos[i], config.sense_radius)
        new = found - world.sensed[i]
        if new:
            update_grid(
                world.grids[i],
                [(forest.centers[t], forest.tree_radius) for t in sorted(new)],
                inflation,
            )
            world.sensed[i] |= new

    # 2. Line of sight for all pairs (symmetric, trees occlude; bodies
    #    too when configured).
    body = config.uav_radius if config.uav_occlusion else None
    los = los_matrix(forest, pos, body)

    # 3. Observe: every current neighbor plus everyone freshly visible.
    est_snapshot = np.full((n, n, 2), np.nan)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if los[i, j] or j in world.neighbors[i]:
                estimate = observe(
                    pos[j], world.last_est[i].get(j), bool(los[i, j]),
                    world.obs_model, world.pair_rng[(i, j)],
                )
                world.last_est[i][j] = estimate
        for j, estimate in world.last_est[i].items():
            est_snapshot[i, j] = estimate

    # 4./5. Neighbor sets, then histories (prepend only for members;
    #    stale histories keep aging out).
    for i in range(n):
        update_neighbors(world.neighbors[i], {j: bool(los[i, j]) for j in range(n) if j != i}, k)
        tracked = set(world.histories[i]) | set(world.neighbors[i].members())
        for j in sorted(tracked):
            h = world.histories[i].get(j)
            if h is None:
                h = PathHistory(config.k_p)
                world.histories[i][j] = h
            in_n = j in world.neighbors[i]
            update_history(h, world.last_est[i].get(j), k, in_n)
            if h.length == 0 and not in_n:
                del world.histories[i][j]

    # 6. Decide and control per agent against the frozen state.
    u = np.zeros((n, 2))
    n_log = np.zeros((n, 2))
    c_log = np.zeros((n, 2))
    fsm_log = np.empty(n, dtype=np.int8)
    tid_log = np.full(n, -1, dtype=np.int16)
    tpos_log = np.empty((n, 2))
    g = config.goal_vec

    for i in range(n):
        members = world.neighbors[i].members()
        if world.informed[i]:
            t_i: set[int] = set()
            x = fsm_input(True, 0)
        else:
            cand = {j: world.histories[i][j] for j in members}
            t_i = potential_targets(pos[i], world.prev_target[i], cand, world.sel_params)
            x = fsm_input(False, len(t_i))
        state = fsm_step(world.fsm[i], x)
        world.fsm[i] = state

        d_sel = None
        if state is FsmState.FOLLOW:
            tid, d_sel = select_target(t_i, world.histories[i])
            tid_log[i] = tid
        d = resolve_target(state, pos[i], d_sel, g)

        if state is FsmState.HOLD:
            a_n = pos[i].copy()
        else:
            path = _plan_cached(world, i, pos[i], d)
            a_n = next_waypoint(path, pos[i]) if path is not None else pos[i].copy()

        estimates = [world.last_est[i][j] for j in members]
        if world.informed[i]:
            n_vec = nav_informed(a_n, pos[i], estimates, world.ctrl_params)
        else:
            n_vec = nav_uninformed(a_n, pos[i], estimates, world.ctrl_params)
        obstacles = nearby_obstacles(forest, estimates, pos[i], config.r_o)
        c_vec = collision_vector(pos[i], obstacles, world.u_prev[i], world.ctrl_params)
        u[i] = control(n_vec, c_vec, config.v_max)

        n_log[i] = n_vec
        c_log[i] = c_vec
        fsm_log[i] = state.value
        tpos_log[i] = d
        world.prev_target[i] = d

    dmin, dmax, dmean = pair_distance_stats(pos)
    record = {
        "k": k,
        "pos": pos.copy(),
        "u": u.copy(),
        "n": n_log,
        "c": c_log,
        "fsm": fsm_log,
        "target_id": tid_log,
        "target_pos": tpos_log,
        "est": est_snapshot,
        "omega": order_metric(u) if n >= 2 else math.nan,
        "min_pair": dmin,
        "max_pair": dmax,
        "mean_pair": dmean,
        "min_tree": min_tree_distance(pos, forest),
    }

    # 7. Apply all commands at once.
    world.pos = pos + u * config.dt
    world.u_prev = u
    world.k = k + 1
    return record


@dataclass
class MissionLog:
    """Columnar per-step record plus the mission summary."""

    config: ScenarioConfig
    forest: Forest
    steps: np.ndarray  # (S,)
    pos: np.ndarray  # (S, N, 2)
    vel: np.ndarray  # (S, N, 2)
    nav: np.ndarray  # (S, N, 2)
    col: np.ndarray  # (S, N, 2)
    fsm: np.ndarray  # (S, N)
    target_id: np.ndarray  # (S, N)
    target_pos: np.ndarray  # (S, N, 2)
    estimates: np.ndarray  # (S, N, N, 2)
    omega: np.ndarray  # (S,)
    min_pair: np.ndarray
    max_pair: np.ndarray
    mean_pair: np.ndarray
    min_tree: np.ndarray
    summary: dict

    @property
    def n_records(self) -> int:
        return int(self.steps.shape[0])


def _build_log(config: ScenarioConfig, forest: Forest, records: list[dict],
               completed: bool, completion_step: int | None) -> MissionLog:
    n = config.n_uavs
    s = len(records)

    def col(key, shape, dtype=np.float64):
        out = np.empty((s, *shape), dtype=dtype)
        for m, rec in enumerate(records):
            out[m] = rec[key]
        return out

    summary = {
        "completed": completed,
        "completion_step": completion_step,
        "completion_time_s": (
            None if completion_step is None else completion_step * config.dt
        ),
        "n_records": s,
        "min_inter_agent": float(np.min(col("min_pair", ()))) if s and n >= 2 else None,
        "min_agent_tree": (
            float(np.min(col("min_tree", ()))) if s and forest.n_trees else None
        ),
        "terminal_order": float(records[-1]["omega"]) if s and n >= 2 else None,
    }
    return MissionLog(
        config=config,
        forest=forest,
        steps=col("k", (), np.int64),
        pos=col("pos", (n, 2)),
        vel=col("u", (n, 2)),
        nav=col("n", (n, 2)),
        col=col("c", (n, 2)),
        fsm=col("fsm", (n,), np.int8),
        target_id=col("target_id", (n,), np.int16),
        target_pos=col("target_pos", (n, 2)),
        estimates=col("est", (n, n, 2)),
        omega=col("omega", ()),
        min_pair=col("min_pair", ()),
        max_pair=col("max_pair", ()),
        mean_pair=col("mean_pair", ()),
        min_tree=col("min_tree", ()),
        summary=summary,
    )


def run_mission(config: ScenarioConfig, forest: Forest | None = None) -> MissionLog:
    """Run one mission to completion or to the step budget."""
    world = World(config, forest)
    records: list[dict] = []
    completed = False
    completion_step: int | None = None
    while True:
        if world.all_in_goal():
            completed = True
            completion_step = world.k
            break
        if world.k >= config.max_steps:
            break
        records.append(step(world))
    return _build_log(config, world.forest, records, completed, completion_step)


def run_batch(config: ScenarioConfig, n_runs: int,
              forest_seeds: list[int] | None = None) -> dict:
    """Independent seeded runs plus an aggregate over the completed ones."""
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    if forest_seeds is not None and len(forest_seeds) != n_runs:
        raise ValueError("forest_seeds must have one entry per run")
    runs = []
    logs = []
    for r in range(n_runs):
        fseed = forest_seeds[r] if forest_seeds is not None else config.forest.seed + r
        run_config = dataclasses.replace(
            config,
            master_seed=config.master_seed + r,
            forest=dataclasses.replace(config.forest, seed=fseed),
        )
        log = run_mission(run_config)
        logs.append(log)
        runs.append(
            {
                "run": r,
                "master_seed": run_config.master_seed,
                "forest_seed": fseed,
                **log.summary,
            }
        )

    times = [r["completion_time_s"] for r in runs if r["completed"]]
    min_pair = [r["min_inter_agent"] for r in runs if r["min_inter_agent"] is not None]
    min_tree = [r["min_agent_tree"] for r in runs if r["min_agent_tree"] is not None]
    orders = [r["terminal_order"] for r in runs if r["terminal_order"] is not None]

    def agg(values):
        if not values:
            return {"mean": None, "min": None, "max": None}
        return {
            "mean": float(np.mean(values)),
            "min": float(np.min(values)),
            "max": float(np.max(values)),
        }

    aggregate = {
        "n_runs": n_runs,
        "n_completed": sum(1 for r in runs if r["completed"]),
        "completion_time_s": agg(times),
        "min_inter_agent": agg(min_pair),
        "min_agent_tree": agg(min_tree),
        "terminal_order": agg(orders),
    }
    return {"runs": runs, "aggregate": aggregate, "logs": logs}
