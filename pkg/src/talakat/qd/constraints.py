"""Feasibility constraints and the two fitness functions.

A level is feasible when its trace never exceeded the live-spawner limit
and kept at least 10 bullets on screen for more than half of its survived
frames.  Fitness rewards draining the boss; infeasible levels are further
scaled by how often they showed any bullet at all, which pulls barren
levels toward zero while still ranking them.
"""
from __future__ import annotations

from ..sim.config import SimConfig
from ..sim.trace import PlayTrace

DENSE_FRAME_FRACTION = 0.5
DENSE_BULLET_COUNT = 10


def check_constraints(trace: PlayTrace, sim_cfg: SimConfig | None = None) -> bool:
    cfg = sim_cfg or SimConfig()
    if trace.frames_survived == 0:
        return False
    if trace.max_live_spawners_seen > cfg.max_live_spawners:
        return False
    return (
        trace.frames_with_ten_plus_bullets / trace.frames_survived
        > DENSE_FRAME_FRACTION
    )


def fitness(trace: PlayTrace, feasible: bool, use_ten_plus: bool = False) -> float:
    """1 - remaining health fraction; infeasible also scaled by bullet presence.

    `use_ten_plus` switches the infeasible scale to the >=10-bullet frame
    fraction instead of the any-bullet fraction, for ablation runs.
    """
    total = trace.remaining_boss_health + trace.frames_survived
    if trace.frames_survived == 0 or total <= 0:
        return 0.0
    base = 1.0 - trace.remaining_boss_health / total
    if feasible:
        return base
    dense = (
        trace.frames_with_ten_plus_bullets
        if use_ten_plus
        else trace.frames_with_any_bullet
    )
    return base * (dense / trace.frames_survived)
