from .config import ACTION_NAMES, ACTION_UNITS, IDLE, N_ACTIONS, SimConfig
from .engine import (
    Bullet,
    GameState,
    SpawnerEntity,
    arc_angles,
    bullet_count_grid,
    init,
    occupancy_grid,
    state_hash,
    step,
)
from .trace import PlayTrace, load_trace, replay, save_trace

__all__ = [
    "ACTION_NAMES",
    "ACTION_UNITS",
    "Bullet",
    "GameState",
    "IDLE",
    "N_ACTIONS",
    "PlayTrace",
    "SimConfig",
    "SpawnerEntity",
    "arc_angles",
    "bullet_count_grid",
    "init",
    "load_trace",
    "occupancy_grid",
    "replay",
    "save_trace",
    "state_hash",
    "step",
]
