"""Node scoring for the playing agent.

score = 0.5 * progress - lose + 0.5 * safety - 0.25 * future

progress counts frames survived from the decision root along the path;
lose is 1 on a dead node (which then contributes safety 0 and future 0);
safety is how many frames a stationary player survives from here, capped
at 10 (reaching the level end inside the probe counts as fully safe);
future measures the distance to the calmest spot on screen, scaled so a
full screen diagonal costs 10.

The calmest spot is the grid cell with the fewest bullets in its 3x3
neighborhood; distance is measured to the cell rectangle, so standing in
the best cell already scores 0.  Ties prefer the nearest cell, then the
lowest (row, col).
"""
from __future__ import annotations

import math

from ..sim.config import IDLE, SimConfig
from ..sim.engine import GameState, bullet_count_grid, step

SAFETY_CAP = 10


def safety_frames(state: GameState) -> int:
    """Frames a player who stops moving survives from here, capped at 10."""
    if state.player_dead:
        return 0
    probe = state.clone()
    for i in range(1, SAFETY_CAP + 1):
        if probe.terminal:
            return SAFETY_CAP
        step(probe, IDLE)
        if probe.player_dead:
            return i - 1
    return SAFETY_CAP


def future_term(state: GameState, cfg: SimConfig | None = None) -> float:
    """10 * distance(player, emptiest cell) / screen diagonal."""
    if state.player_dead:
        return 0.0
    cfg = cfg or state.cfg
    grid = bullet_count_grid(state, cfg)
    rows, cols = grid.shape
    px, py = state.player_x, state.player_y
    cw, ch = cfg.cell_width, cfg.cell_height
    best_cnt = -1
    best_d = 0.0
    for rr in range(rows):
        y0 = rr * ch
        y1 = y0 + ch
        if py < y0:
            dy = y0 - py
        elif py > y1:
            dy = py - y1
        else:
            dy = 0.0
        for cc in range(cols):
            cnt = int(grid[max(0, rr - 1) : rr + 2, max(0, cc - 1) : cc + 2].sum())
            if best_cnt >= 0 and cnt > best_cnt:
                continue
            x0 = cc * cw
            x1 = x0 + cw
            if px < x0:
                dx = x0 - px
            elif px > x1:
                dx = px - x1
            else:
                dx = 0.0
            d = math.sqrt(dx * dx + dy * dy)
            if best_cnt < 0 or cnt < best_cnt or d < best_d:
                best_cnt = cnt
                best_d = d
    return 10.0 * best_d / cfg.screen_diagonal


def heuristic(state: GameState, progress: int) -> float:
    """Score a search node `progress` frames past the decision root."""
    if state.player_dead:
        return 0.5 * progress - 1.0
    safety = float(safety_frames(state))
    future = future_term(state)
    return 0.5 * progress + 0.5 * safety - 0.25 * future
