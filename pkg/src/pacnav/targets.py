"""Implicit leader choice: who each uninformed agent follows, and when.

Informed agents always head for the goal. Uninformed agents filter
their tracked neighbors down to plausible guides (far enough away, not
doubling back toward the previous target, enough history to judge),
then score each by how persistently it moves plus how similar its path
is to the other candidates'. A three-state machine arbitrates between
holding position, following the best candidate, and goal-directed
flight; the goal state is absorbing and reachable only by informed
agents since only they emit the goal input.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .geometry import EPS_NORM, norm
from .perception import PathHistory


class FsmState(Enum):
    HOLD = 0
    FOLLOW = 1
    GOAL = 2


class FsmInput(Enum):
    ALONE = 0
    SWARM = 1
    GOAL = 2


class EmptyTargetSet(ValueError):
    """select_target called with no candidates."""


@dataclass
class SelectionParams:
    r_f: float = 4.0
    min_history: int = 3

    def __post_init__(self):
        if self.r_f <= 0:
            raise ValueError("r_f must be positive")


def potential_targets(
    p_i: np.ndarray,
    prev_target: np.ndarray,
    histories: dict[int, PathHistory],
    params: SelectionParams,
) -> set[int]:
    """Filter tracked neighbors down to follow candidates.

    Keeps j iff its newest estimate is at least r_f away, it is not
    moving toward the previous target (newest entry closer than oldest
    discards it), and its history has at least min_history entries.
    """
    out: set[int] = set()
    for j, h in histories.items():
        if h.length < params.min_history:
            continue
        newest = h.newest()
        if norm(newest - p_i) < params.r_f:
            continue
        if norm(newest - prev_target) < norm(h.oldest() - prev_target):
            continue
        out.add(j)
    return out


def fsm_input(informed: bool, t_i_size: int) -> FsmInput:
    if informed:
        return FsmInput.GOAL
    return FsmInput.SWARM if t_i_size > 0 else FsmInput.ALONE


_TRANSITIONS = {
    (FsmState.HOLD, FsmInput.ALONE): FsmState.HOLD,
    (FsmState.HOLD, FsmInput.SWARM): FsmState.FOLLOW,
    (FsmState.HOLD, FsmInput.GOAL): FsmState.GOAL,
    (FsmState.FOLLOW, FsmInput.ALONE): FsmState.HOLD,
    (FsmState.FOLLOW, FsmInput.SWARM): FsmState.FOLLOW,
    (FsmState.FOLLOW, FsmInput.GOAL): FsmState.GOAL,
    (FsmState.GOAL, FsmInput.ALONE): FsmState.GOAL,
    (FsmState.GOAL, FsmInput.SWARM): FsmState.GOAL,
    (FsmState.GOAL, FsmInput.GOAL): FsmState.GOAL,
}


def fsm_step(state: FsmState, x: FsmInput) -> FsmState:
    return _TRANSITIONS[(state, x)]


def select_target(
    t_i: set[int], histories: dict[int, PathHistory]
) -> tuple[int, np.ndarray]:
    """Pick the candidate with the best persistence-plus-similarity score.

    Returns (chosen id, its newest estimate). Ties go to the lowest id.
    """
    if not t_i:
        raise EmptyTargetSet("no potential targets")
    ids = sorted(t_i)
    cap = max(histories[j].length for j in ids)
    stack = np.zeros((len(ids), cap, 2))
    lengths = np.empty(len(ids), dtype=np.int64)
    for row, j in enumerate(ids):
        h = histories[j]
        stack[row, : h.length] = h.positions
        lengths[row] = h.length
    scores = kernels.target_scores(stack, lengths, EPS_NORM)
    best = int(np.argmax(scores))  # first max wins: ids are ascending
    j_star = ids[best]
    return j_star, histories[j_star].newest().copy()


def resolve_target(
    state: FsmState, p_i: np.ndarray, d_selected: np.ndarray | None, g: np.ndarray
) -> np.ndarray:
    """Map FSM state to the position the planner should head for."""
    if state is FsmState.HOLD:
        return np.array(p_i, dtype=np.float64)
    if state is FsmState.FOLLOW:
        if d_selected is None:
            raise ValueError("follow state requires a selected target")
        return np.array(d_selected, dtype=np.float64)
    return np.array(g, dtype=np.float64)
