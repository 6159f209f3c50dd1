"""Decentralized collective navigation for UAV swarms among obstacles.

A swarm with a few goal-informed members crosses a simulated forest
with no communication and no global localization: uninformed agents
infer whom to follow purely from how persistently and coherently their
neighbors have been moving.
"""

from .config import ConfigError, ForestParams, ScenarioConfig, config_from_dict, config_to_dict
from .controller import ControlParams, collision_candidates, collision_vector, control, nav_informed, nav_uninformed
from .environment import Forest, KeepClearZone, PlacementError, density, generate_forest, line_of_sight, load_forest, nearby_obstacles, save_forest, sense_obstacles
from .geometry import EPS_NORM, normalized_dot, rotate, vec
from .kernels import BACKEND
from .metrics import HistoryTooShort, displacements, order_metric, path_persistence, path_similarity
from .perception import NeighborSet, ObservationModel, PathHistory, observe, update_history, update_neighbors
from .planner import GridPath, OccupancyGrid, astar, edge_weight, grid_to_pbm, next_waypoint, update_grid
from .presets import PRESET_NAMES, preset_config
from .simulation import MissionLog, SpawnError, World, run_batch, run_mission, spawn_positions, step
from .targets import EmptyTargetSet, FsmInput, FsmState, SelectionParams, fsm_input, fsm_step, potential_targets, resolve_target, select_target

__version__ = "0.1.0"
