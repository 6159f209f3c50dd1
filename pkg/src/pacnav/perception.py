"""Noisy inter-agent observation and the bookkeeping built on top of it.

Each agent tracks every other UAV it has seen through two structures:
a neighbor set (who is currently tracked, with the last line-of-sight
step) and a path history per tracked UAV (bounded, newest-first record
of position estimates with their timestamps).

Estimates are stored in the observer's world frame: self-position is
assumed exactly known, so relative and absolute estimates differ by a
known constant and the absolute form is the internally consistent one.
Estimates keep flowing while a neighbor is occluded: the observation
degrades into a random walk around the last known position, and those
drifting samples do enter the history on purpose. Downstream metrics
average over whole paths precisely so that single bad estimates do not
matter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class NoPriorEstimate(RuntimeError):
    """NLoS observation requested for a UAV that was never seen."""


@dataclass
class ObservationModel:
    sigma_los: float = 0.2
    sigma_nlos: float = 0.5

    def __post_init__(self):
        if self.sigma_los < 0 or self.sigma_nlos < 0:
            raise ValueError("noise scales must be non-negative")


def observe(
    true_pos: np.ndarray,
    prev_estimate: np.ndarray | None,
    has_los: bool,
    model: ObservationModel,
    rng: np.random.Generator,
) -> np.ndarray:
    """One position estimate of another UAV.

    With LoS: ground truth plus isotropic Gaussian noise. Without LoS:
    a random-walk step from the previous estimate, so uncertainty grows
    linearly with occlusion time.
    """
    if has_los:
        return true_pos + rng.normal(0.0, model.sigma_los, 2)
    if prev_estimate is None:
        raise NoPriorEstimate("no previous estimate for occluded UAV")
    return prev_estimate + rng.normal(0.0, model.sigma_nlos, 2)


@dataclass
class NeighborSet:
    """Currently tracked UAV ids with their last line-of-sight step."""

    k_m: int
    last_los: dict[int, int] = field(default_factory=dict)

    def __contains__(self, j: int) -> bool:
        return j in self.last_los

    def __len__(self) -> int:
        return len(self.last_los)

    def members(self) -> list[int]:
        return sorted(self.last_los)


def update_neighbors(ns: NeighborSet, los_flags: dict[int, bool], k: int) -> NeighborSet:
    """Add/refresh every UAV seen this step, expire stale ones.

    A tracked UAV survives up to k_m steps without LoS and is dropped
    on the step after that.
    """
    for j, seen in los_flags.items():
        if seen:
            ns.last_los[j] = k
    stale = [j for j, d in ns.last_los.items() if k - d > ns.k_m]
    for j in stale:
        del ns.last_los[j]
    return ns


class PathHistory:
    """Bounded newest-first record of (estimate, step) pairs.

    Backed by fixed arrays of k_p rows; ``length`` rows are valid.
    Entries are dropped from the old end when the history overflows or
    when the oldest entry gets older than k_p steps.
    """

    __slots__ = ("k_p", "pos", "times", "length")

    def __init__(self, k_p: int):
        if k_p < 1:
            raise ValueError("k_p must be at least 1")
        self.k_p = k_p
        self.pos = np.zeros((k_p, 2))
        self.times = np.zeros(k_p, dtype=np.int64)
        self.length = 0

    def __len__(self) -> int:
        return self.length

    @property
    def positions(self) -> np.ndarray:
        return self.pos[: self.length]

    @property
    def steps(self) -> np.ndarray:
        return self.times[: self.length]

    def newest(self) -> np.ndarray:
        if self.length == 0:
            raise IndexError("empty history")
        return self.pos[0]

    def oldest(self) -> np.ndarray:
        if self.length == 0:
            raise IndexError("empty history")
        return self.pos[self.length - 1]


def update_history(
    h: PathHistory, estimate: np.ndarray | None, k: int, j_in_neighbors: bool
) -> PathHistory:
    """Prepend this step's estimate if j is tracked, then age out.

    Called every step for every UAV with a non-empty history, whether
    or not it is still a neighbor, so stale entries keep expiring.
    """
    if j_in_neighbors:
        if h.length > 0 and k <= h.times[0]:
            raise ValueError("time index must advance between updates")
        keep = min(h.length, h.k_p - 1)
        h.pos[1 : keep + 1] = h.pos[0:keep]
        h.times[1 : keep + 1] = h.times[0:keep]
        h.pos[0] = estimate
        h.times[0] = k
        h.length = keep + 1
    while h.length > 0 and k - h.times[h.length - 1] > h.k_p:
        h.length -= 1
    return h
