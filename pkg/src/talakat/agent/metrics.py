"""Behavior metrics: entropy, risk, distribution.

Each maps a playthrough onto [0, 1].  Entropy looks at how varied the
movement was (symbol entropy of the first three derivatives of the unit
velocity sequence); risk at how close bullets were to the player (occupied
fraction of the player's 3x3 cell neighborhood); distribution at how much
of the screen the bullets covered.  Risk and distribution are per-frame
quantities whose per-level value is the mean over survived frames.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

from ..sim.config import ACTION_UNITS, SimConfig
from ..sim.engine import GameState, bullet_count_grid, round_half_up

MIN_ACTIONS_FOR_ENTROPY = 4


def _diffs(seq: list[tuple[float, float]]) -> list[tuple[float, float]]:
    return [(b[0] - a[0], b[1] - a[1]) for a, b in zip(seq, seq[1:])]


def _normalized_entropy(symbols: list[tuple[float, float]]) -> float:
    counts = Counter(symbols)
    n = len(symbols)
    h = -sum((c / n) * math.log(c / n) for c in counts.values())
    return h / math.log(max(2, len(counts)))


def entropy_metric(actions: Sequence[int]) -> float:
    """Mean normalized symbol entropy of the velocity derivatives d1, d2, d3."""
    if len(actions) < MIN_ACTIONS_FOR_ENTROPY:
        return 0.0
    velocity = [ACTION_UNITS[a] for a in actions]
    d1 = _diffs(velocity)
    d2 = _diffs(d1)
    d3 = _diffs(d2)
    return (
        _normalized_entropy(d1) + _normalized_entropy(d2) + _normalized_entropy(d3)
    ) / 3.0


def risk_metric(state: GameState, cfg: SimConfig | None = None) -> float:
    """Occupied fraction of the 3x3 cells around the player, edge-clipped."""
    cfg = cfg or state.cfg
    grid = bullet_count_grid(state, cfg)
    return risk_from_grid(
        grid.reshape(-1), cfg, state.player_x, state.player_y
    )


def risk_from_grid(grid_row, cfg: SimConfig, px: float, py: float) -> float:
    """Same as risk_metric, from a flattened per-frame bullet-count grid."""
    cols, rows = cfg.grid_cols, cfg.grid_rows
    pc = int(px // cfg.cell_width)
    prow = int(py // cfg.cell_height)
    r0, r1 = max(0, prow - 1), min(rows - 1, prow + 1)
    c0, c1 = max(0, pc - 1), min(cols - 1, pc + 1)
    occupied = 0
    for rr in range(r0, r1 + 1):
        base = rr * cols
        for cc in range(c0, c1 + 1):
            if grid_row[base + cc] > 0:
                occupied += 1
    return occupied / ((r1 - r0 + 1) * (c1 - c0 + 1))


def distribution_metric(state: GameState, cfg: SimConfig | None = None) -> float:
    """Fraction of all grid cells holding at least one bullet."""
    cfg = cfg or state.cfg
    grid = bullet_count_grid(state, cfg)
    return int((grid > 0).sum()) / (cfg.grid_cols * cfg.grid_rows)


def metric_bins(entropy: float, risk: float, distribution: float) -> tuple[int, int, int]:
    """Map the three [0,1] metrics onto the 11 archive bins each."""
    return (
        round_half_up(entropy * 10),
        round_half_up(risk * 10),
        round_half_up(distribution * 10),
    )
