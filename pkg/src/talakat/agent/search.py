"""Best-first action search.

`decide` is the readable reference: it clones the live state for every
child node.  `decide_fast` answers identically (the world timeline is
bit-equal to stepping the engine, and the player does not influence the
world) but runs on precomputed per-frame snapshots, which is what makes
search-based evaluation affordable.

Both searches share the contract: expand up to `strategy_budget` nodes
(the root expansion is the first), order the open list by score descending
with ties to the lowest first action then insertion order, and return the
first action on the path to the best node seen.  Nodes are not expanded
past the level end, a dead player, or the lookahead horizon.  A capped
horizon keeps one decision's work bounded; the search stops early once a
node proves a maximally safe idle line (no deeper node can beat it).
"""
from __future__ import annotations

import heapq
import math
from functools import lru_cache

import numpy as np
from numba import njit

from ..sim.config import ACTION_UNITS, IDLE, N_ACTIONS, SimConfig
from ..sim.engine import GameState, step
from ..sim.world import WorldTimeline, _collides
from .config import AgentConfig
from .heuristic import heuristic

HORIZON = 120
SAFETY_PROBE = 10


def decide(state: GameState, cfg: AgentConfig, horizon: int = HORIZON) -> int:
    """Pick the next action for the live state (reference implementation)."""
    if state.terminal:
        raise ValueError("cannot decide on a terminal state")
    root_frame = state.frame
    end_frame = root_frame + state.boss_health
    max_depth = min(horizon, end_frame - root_frame)
    hmax = 0.5 * max_depth + 5.0
    best_h = -math.inf
    best_act = IDLE
    heap: list[tuple[float, int, int, GameState]] = []
    seq = 0
    cur = state
    cur_first = -1
    expansions = 0
    while True:
        expansions += 1
        for a in range(N_ACTIONS):
            child = cur.clone()
            step(child, a)
            depth = child.frame - root_frame
            first = a if cur_first < 0 else cur_first
            h = heuristic(child, depth)
            if h > best_h or (h == best_h and first < best_act):
                best_h = h
                best_act = first
            if not child.player_dead and child.frame < end_frame and depth < horizon:
                heapq.heappush(heap, (-h, first, seq, child))
                seq += 1
        if expansions >= cfg.strategy_budget:
            break
        if best_h >= hmax and best_act == IDLE:
            break
        if not heap:
            break
        _, cur_first, _, cur = heapq.heappop(heap)
    return best_act


def decide_fast(
    tl: WorldTimeline,
    px: float,
    py: float,
    frame: int,
    budget: int,
    horizon: int = HORIZON,
) -> int:
    """`decide` against a world timeline instead of a live state."""
    cfg = tl.cfg
    need = min(frame + horizon + SAFETY_PROBE, tl.end_frame)
    if tl.simulated < need:
        tl.ensure(need)
    if tl.window_empty(frame + 1, need):
        return IDLE  # nothing can hit us: every line ties and idle wins ties
    order_t, lb_t = _future_tables(
        cfg.grid_rows, cfg.grid_cols, cfg.cell_width, cfg.cell_height
    )
    mc_cache = np.full(horizon + 2, -1, dtype=np.int64)
    return int(
        _decide_kernel(
            tl.pool_x,
            tl.pool_y,
            tl.pool_r,
            tl.frame_offset,
            tl.cell_start,
            tl.max_radius,
            tl.nbhd,
            order_t,
            lb_t,
            mc_cache,
            px,
            py,
            frame,
            tl.end_frame,
            budget,
            horizon,
            cfg.player_radius,
            cfg.player_speed,
            float(cfg.screen_width),
            float(cfg.screen_height),
            cfg.cell_width,
            cfg.cell_height,
            cfg.grid_cols,
            cfg.grid_rows,
            cfg.screen_diagonal,
            _ACT_UX,
            _ACT_UY,
        )
    )


_ACT_UX = np.array([u[0] for u in ACTION_UNITS], dtype=np.float64)
_ACT_UY = np.array([u[1] for u in ACTION_UNITS], dtype=np.float64)


@lru_cache(maxsize=8)
def _future_tables(rows: int, cols: int, cw: float, ch: float):
    """Per player-cell visit order of all cells by a distance lower bound.

    The bound is the rectangle-to-rectangle distance, which never exceeds
    the player-point-to-cell distance, so scanning in bound order allows
    an exact early stop in the future-term search.
    """
    ncells = rows * cols
    lbs = np.zeros((ncells, ncells), dtype=np.float64)
    for pcell in range(ncells):
        prow, pcol = divmod(pcell, cols)
        ax0 = pcol * cw
        ax1 = ax0 + cw
        ay0 = prow * ch
        ay1 = ay0 + ch
        for cell in range(ncells):
            rr, cc = divmod(cell, cols)
            bx0 = cc * cw
            by0 = rr * ch
            lbx = max(0.0, bx0 - ax1, ax0 - (bx0 + cw))
            lby = max(0.0, by0 - ay1, ay0 - (by0 + ch))
            lbs[pcell, cell] = math.sqrt(lbx * lbx + lby * lby)
    order = np.argsort(lbs, axis=1, kind="stable").astype(np.int64)
    lb_sorted = np.take_along_axis(lbs, order, axis=1)
    return order, lb_sorted


@njit(cache=True)
def _hbetter(n_h, n_first, a, b):
    if n_h[a] != n_h[b]:
        return n_h[a] > n_h[b]
    if n_first[a] != n_first[b]:
        return n_first[a] < n_first[b]
    return a < b


@njit(cache=True)
def _heap_push(heap, heap_n, n_h, n_first, idx):
    heap[heap_n] = idx
    i = heap_n
    while i > 0:
        p = (i - 1) >> 1
        if _hbetter(n_h, n_first, heap[i], heap[p]):
            t = heap[i]
            heap[i] = heap[p]
            heap[p] = t
            i = p
        else:
            break
    return heap_n + 1


@njit(cache=True)
def _heap_pop(heap, heap_n, n_h, n_first):
    heap_n -= 1
    heap[0] = heap[heap_n]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= heap_n:
            break
        m = left
        right = left + 1
        if right < heap_n and _hbetter(n_h, n_first, heap[right], heap[left]):
            m = right
        if _hbetter(n_h, n_first, heap[m], heap[i]):
            t = heap[i]
            heap[i] = heap[m]
            heap[m] = t
            i = m
        else:
            break
    return heap_n


@njit(cache=True)
def _decide_kernel(
    pool_x,
    pool_y,
    pool_r,
    frame_offset,
    cell_start,
    maxr,
    nbhd,
    order_t,
    lb_t,
    mc_cache,
    root_px,
    root_py,
    root_frame,
    end_frame,
    budget,
    horizon,
    pr,
    speed,
    width,
    height,
    cell_w,
    cell_h,
    grid_cols,
    grid_rows,
    diag,
    act_ux,
    act_uy,
):
    ncells = grid_cols * grid_rows
    cell_min = cell_w if cell_w < cell_h else cell_h
    cap = budget * 9 + 9
    n_px = np.empty(cap, dtype=np.float64)
    n_py = np.empty(cap, dtype=np.float64)
    n_fr = np.empty(cap, dtype=np.int64)
    n_first = np.empty(cap, dtype=np.int64)
    n_h = np.empty(cap, dtype=np.float64)
    heap = np.empty(cap, dtype=np.int64)
    heap_n = 0
    n_nodes = 0
    max_depth = end_frame - root_frame
    if max_depth > horizon:
        max_depth = horizon
    hmax = 0.5 * max_depth + 5.0
    best_h = -1.0e300
    best_act = 0
    cur_px = root_px
    cur_py = root_py
    cur_fr = root_frame
    cur_first = -1
    expansions = 0
    while True:
        expansions += 1
        child_fr = cur_fr + 1
        depth = child_fr - root_frame
        for a in range(9):
            nx = cur_px + act_ux[a] * speed
            ny = cur_py + act_uy[a] * speed
            if nx < pr:
                nx = pr
            elif nx > width - pr:
                nx = width - pr
            if ny < pr:
                ny = pr
            elif ny > height - pr:
                ny = height - pr
            first = cur_first
            if first < 0:
                first = a
            # a cell whose 3x3 neighborhood holds no bullet centers cannot
            # collide with anything when every live radius keeps the reach
            # under one cell and no center sits outside the grid, so those
            # frames skip the bucket scans entirely
            pcell = int(ny // cell_h) * grid_cols + int(nx // cell_w)
            if (
                nbhd[child_fr, pcell] == 0
                and maxr[child_fr] + pr < cell_min
                and cell_start[child_fr, ncells + 1] == cell_start[child_fr, ncells]
            ):
                dead = False
            else:
                dead = _collides(
                    pool_x, pool_y, pool_r, frame_offset, cell_start, maxr,
                    child_fr, nx, ny, pr, cell_w, cell_h, grid_cols, grid_rows,
                )
            if dead:
                h = 0.5 * depth - 1.0
            else:
                safety = 10.0
                for i in range(1, 11):
                    pf = child_fr + i
                    if pf > end_frame:
                        break
                    if (
                        nbhd[pf, pcell] == 0
                        and maxr[pf] + pr < cell_min
                        and cell_start[pf, ncells + 1] == cell_start[pf, ncells]
                    ):
                        continue
                    if _collides(
                        pool_x, pool_y, pool_r, frame_offset, cell_start, maxr,
                        pf, nx, ny, pr, cell_w, cell_h, grid_cols, grid_rows,
                    ):
                        safety = i - 1.0
                        break
                if nbhd[child_fr, pcell] == 0:
                    # own cell attains the global minimum count at distance 0
                    future = 0.0
                else:
                    mc = mc_cache[depth]
                    if mc < 0:
                        mc = nbhd[child_fr, 0]
                        for c in range(1, ncells):
                            v = nbhd[child_fr, c]
                            if v < mc:
                                mc = v
                        mc_cache[depth] = mc
                    best_d = -1.0
                    for k in range(ncells):
                        if best_d >= 0.0 and lb_t[pcell, k] >= best_d:
                            break
                        c = order_t[pcell, k]
                        if nbhd[child_fr, c] != mc:
                            continue
                        rr = c // grid_cols
                        cc = c - rr * grid_cols
                        y0 = rr * cell_h
                        y1 = y0 + cell_h
                        if ny < y0:
                            dy = y0 - ny
                        elif ny > y1:
                            dy = ny - y1
                        else:
                            dy = 0.0
                        x0 = cc * cell_w
                        x1 = x0 + cell_w
                        if nx < x0:
                            dx = x0 - nx
                        elif nx > x1:
                            dx = nx - x1
                        else:
                            dx = 0.0
                        d = math.sqrt(dx * dx + dy * dy)
                        if best_d < 0.0 or d < best_d:
                            best_d = d
                            if d <= lb_t[pcell, k]:
                                break
                    future = 10.0 * best_d / diag
                h = 0.5 * depth + 0.5 * safety - 0.25 * future
            if h > best_h or (h == best_h and first < best_act):
                best_h = h
                best_act = first
            if (not dead) and child_fr < end_frame and depth < horizon and n_nodes < cap:
                n_px[n_nodes] = nx
                n_py[n_nodes] = ny
                n_fr[n_nodes] = child_fr
                n_first[n_nodes] = first
                n_h[n_nodes] = h
                heap_n = _heap_push(heap, heap_n, n_h, n_first, n_nodes)
                n_nodes += 1
        if expansions >= budget:
            break
        if best_h >= hmax and best_act == 0:
            break
        if heap_n == 0:
            break
        idx = heap[0]
        heap_n = _heap_pop(heap, heap_n, n_h, n_first)
        cur_px = n_px[idx]
        cur_py = n_py[idx]
        cur_fr = n_fr[idx]
        cur_first = n_first[idx]
    return best_act
