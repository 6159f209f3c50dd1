"""Velocity commands: navigation toward a waypoint plus reactive avoidance.

The navigation vector pulls the agent toward the next waypoint a_n.
Informed agents scale it down when the swarm hangs back (never below
v_min); uninformed agents instead damp the component aimed at each
tracked neighbor so they do not pile into the agent they follow.

Avoidance treats every threatening point obstacle separately: each
contributes a unit vector rotated away from the pure repulsion
direction toward a sideways escape, rotating more the closer the
obstacle gets (a quarter turn at contact range). Of the two rotation
senses, the one best aligned with the previous command wins, which
keeps consecutive avoidance vectors consistent and lets the agent slide
around obstacles instead of stalling in front of them. Magnitudes fall
off as 1/d and vanish at the avoidance radius.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import EPS_NORM, clamp_norm, norm, rotate

_HALF_PI = np.pi / 2.0


@dataclass
class ControlParams:
    k_n: float = 1.2
    k_c: float = 1.0
    v_min: float = 0.3
    alpha: float = 2.0
    r_f: float = 4.0
    r_o: float = 2.5
    v_max: float = 2.0
    eps_dist: float = 0.05

    def __post_init__(self):
        if not (0.0 < self.v_min < 1.0):
            raise ValueError("v_min must be in (0, 1)")
        if self.alpha <= 0 or self.r_o <= 0 or self.r_f <= 0 or self.v_max <= 0:
            raise ValueError("alpha, r_o, r_f, v_max must be positive")


def nav_informed(
    a_n: np.ndarray,
    p_i: np.ndarray,
    neighbor_estimates: list[np.ndarray],
    params: ControlParams,
) -> np.ndarray:
    """Goal-ward pull, slowed down when neighbors trail far behind.

    The factor hits its floor v_min when the mean neighbor distance
    reaches 2 r_f; with no neighbors at all the floor applies too (an
    isolated informed agent creeps rather than sprints).
    """
    if neighbor_estimates:
        total = 0.0
        for est in neighbor_estimates:
            total += norm(est - p_i)
        factor = max(
            params.v_min,
            1.0 - total / (2.0 * params.r_f * len(neighbor_estimates)),
        )
    else:
        factor = params.v_min
    return factor * params.k_n * (a_n - p_i)


def nav_uninformed(
    a_n: np.ndarray,
    p_i: np.ndarray,
    neighbor_estimates: list[np.ndarray],
    params: ControlParams,
) -> np.ndarray:
    """Waypoint pull with the approach component damped per neighbor.

    For each neighbor (ascending id order; the result is sequence
    dependent) the component of n along the line to that neighbor is
    scaled by min(1, (d/r_f)^alpha); the orthogonal remainder passes
    through. Neighbors closer than EPS_NORM are skipped.
    """
    n = params.k_n * (a_n - p_i)
    for est in neighbor_estimates:
        rel = est - p_i
        d = norm(rel)
        if d < EPS_NORM:
            continue
        s = (n[0] * rel[0] + n[1] * rel[1]) / (d * d) * rel
        ortho = n - s
        scale = min(1.0, (d / params.r_f) ** params.alpha)
        n = scale * s + ortho
    return n


def collision_candidates(
    p_i: np.ndarray, o_r: np.ndarray, r_o: float, eps_dist: float = 0.05
) -> tuple[np.ndarray, np.ndarray, float]:
    """The two unit escape directions for one obstacle, plus the angle.

    Both are the unit vector away from the obstacle rotated by +/- phi,
    where phi grows linearly with distance up to a quarter turn at r_o.
    Distances below eps_dist are clamped (direction falls back to +x
    when the offset is exactly zero).
    """
    rel = p_i - o_r
    d = norm(rel)
    if d < EPS_NORM:
        unit = np.array([1.0, 0.0])
        d = eps_dist
    elif d < eps_dist:
        unit = rel / d
        d = eps_dist
    else:
        unit = rel / d
    phi = _HALF_PI / r_o * d
    return rotate(unit, phi), rotate(unit, -phi), phi


def collision_vector(
    p_i: np.ndarray,
    obstacles: list[np.ndarray],
    u_prev: np.ndarray,
    params: ControlParams,
) -> np.ndarray:
    """Superposition of per-obstacle avoidance vectors.

    Candidate choice: the rotation sense whose direction best aligns
    with the previous command; ties and a near-zero previous command
    pick the counterclockwise one. Magnitude is max(0, 1/d - 1/r_o).
    """
    c = np.zeros(2)
    speed_prev = norm(u_prev)
    for o_r in obstacles:
        plus, minus, _ = collision_candidates(p_i, o_r, params.r_o, params.eps_dist)
        if speed_prev < EPS_NORM:
            chosen = plus
        else:
            dot_plus = plus[0] * u_prev[0] + plus[1] * u_prev[1]
            dot_minus = minus[0] * u_prev[0] + minus[1] * u_prev[1]
            chosen = minus if dot_minus > dot_plus else plus
        d = max(norm(p_i - o_r), params.eps_dist)
        magnitude = max(0.0, 1.0 / d - 1.0 / params.r_o)
        c += magnitude * chosen
    return params.k_c * c


def collision_vector_repulsive(
    p_i: np.ndarray,
    obstacles: list[np.ndarray],
    u_prev: np.ndarray,
    params: ControlParams,
) -> np.ndarray:
    """Baseline variant: push straight away from each obstacle.

    Same magnitudes, no sideways rotation. Kept as a reference to show
    why the rotated scheme is needed: symmetric obstacle pairs cancel
    this one's lateral components and the agent stalls.
    """
    c = np.zeros(2)
    for o_r in obstacles:
        rel = p_i - o_r
        d = norm(rel)
        unit = rel / d if d >= EPS_NORM else np.array([1.0, 0.0])
        magnitude = max(0.0, 1.0 / max(d, params.eps_dist) - 1.0 / params.r_o)
        c += magnitude * unit
    return params.k_c * c


def control(n: np.ndarray, c: np.ndarray, v_max: float) -> np.ndarray:
    """Combined command, speed-clamped preserving direction."""
    return clamp_norm(n + c, v_max)
