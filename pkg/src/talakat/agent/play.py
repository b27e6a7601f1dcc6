"""The seeded play loop: decide, repeat, dodge, tally.

Dexterity noise forces each decision to be held for r frames where
r = max(1, round(|gauss(0, sigma)|)), clamped to 30; sigma 0 therefore
decides every frame.  A death ends the trace on the previous frame: the
fatal action is not recorded, so replaying the recorded actions through
the engine survives exactly framesSurvived frames.
"""
from __future__ import annotations

import random

from ..lang.types import Script
from ..sim.config import SimConfig
from ..sim.trace import PlayTrace
from ..sim.world import WorldTimeline
from .config import AgentConfig
from .metrics import risk_from_grid
from .search import HORIZON, decide_fast

MAX_REPEAT = 30


def draw_repeat(rng: random.Random, sigma: float) -> int:
    return min(max(1, round(abs(rng.gauss(0.0, sigma)))), MAX_REPEAT)


def play(
    script: Script,
    cfg: AgentConfig,
    sim_cfg: SimConfig | None = None,
    horizon: int = HORIZON,
) -> PlayTrace:
    sim_cfg = sim_cfg or SimConfig()
    tl = WorldTimeline(script, sim_cfg)
    rng = random.Random(cfg.seed)
    px, py = sim_cfg.player_start_px()
    r = sim_cfg.player_radius
    width = float(sim_cfg.screen_width)
    height = float(sim_cfg.screen_height)
    end = tl.end_frame

    actions: list[int] = []
    path_x: list[float] = []
    path_y: list[float] = []
    died = False
    frame = 0
    act = 0
    repeat_left = 0
    while frame < end:
        if repeat_left == 0:
            act = decide_fast(tl, px, py, frame, cfg.strategy_budget, horizon)
            repeat_left = draw_repeat(rng, cfg.dexterity_sigma)
        repeat_left -= 1
        frame += 1
        vx, vy = sim_cfg.action_velocity(act)
        px = min(max(px + vx, r), width - r)
        py = min(max(py + vy, r), height - r)
        tl.ensure(frame)
        if tl.collides(frame, px, py):
            died = True
            break
        actions.append(act)
        path_x.append(px)
        path_y.append(py)
        tl.release(frame)

    n = len(actions)
    survived = tl.bullet_count[1 : n + 1]
    ncells = sim_cfg.grid_cols * sim_cfg.grid_rows
    return PlayTrace(
        actions=actions,
        frames_survived=n,
        remaining_boss_health=tl.cs.boss_health - n,
        died=died,
        frames_with_any_bullet=int((survived > 0).sum()),
        frames_with_ten_plus_bullets=int((survived >= 10).sum()),
        max_live_spawners_seen=int(tl.spawner_count[1 : n + 1].max()) if n else 0,
        per_frame_risk=[
            risk_from_grid(tl.grid[f], sim_cfg, path_x[f - 1], path_y[f - 1])
            for f in range(1, n + 1)
        ],
        per_frame_distribution=[int(tl.occupied[f]) / ncells for f in range(1, n + 1)],
        script_hash=script.content_hash(),
        agent=cfg.to_dict(),
    )
