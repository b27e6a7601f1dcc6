"""Simulation constants and the 9-action control scheme.

Screen coordinates are pixels with y growing downward.  Bullet and spawner
headings are degrees where 0 points screen-down (toward the player) and
positive angles turn toward screen-right: direction = (sin a, cos a).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

IDLE = 0
N_ACTIONS = 9

ACTION_NAMES = (
    "idle",
    "up",
    "up-right",
    "right",
    "down-right",
    "down",
    "down-left",
    "left",
    "up-left",
)

_DIAG = math.sqrt(2.0) / 2.0

# Unit velocity per action id; diagonals keep magnitude 1.
ACTION_UNITS: tuple[tuple[float, float], ...] = (
    (0.0, 0.0),
    (0.0, -1.0),
    (_DIAG, -_DIAG),
    (1.0, 0.0),
    (_DIAG, _DIAG),
    (0.0, 1.0),
    (-_DIAG, _DIAG),
    (-1.0, 0.0),
    (-_DIAG, -_DIAG),
)


@dataclass(frozen=True)
class SimConfig:
    screen_width: int = 384
    screen_height: int = 512
    player_speed: float = 4.0
    player_radius: float = 4.0
    player_start: tuple[float, float] = (0.5, 0.9)
    max_live_spawners: int = 100
    grid_cols: int = 12
    grid_rows: int = 16
    # engine guards against pathological scripts, not level semantics
    max_spawn_batch: int = 20
    max_live_bullets: int = 5000

    def __post_init__(self) -> None:
        if self.screen_width % self.grid_cols or self.screen_height % self.grid_rows:
            raise ValueError("grid must divide the screen evenly")

    @property
    def cell_width(self) -> float:
        return self.screen_width / self.grid_cols

    @property
    def cell_height(self) -> float:
        return self.screen_height / self.grid_rows

    @property
    def screen_diagonal(self) -> float:
        return math.hypot(self.screen_width, self.screen_height)

    def player_start_px(self) -> tuple[float, float]:
        return (
            self.player_start[0] * self.screen_width,
            self.player_start[1] * self.screen_height,
        )

    def action_velocity(self, action: int) -> tuple[float, float]:
        ux, uy = ACTION_UNITS[action]
        return ux * self.player_speed, uy * self.player_speed

    def to_dict(self) -> dict:
        return {
            "screenWidth": self.screen_width,
            "screenHeight": self.screen_height,
            "playerSpeed": self.player_speed,
            "playerRadius": self.player_radius,
            "playerStart": list(self.player_start),
            "maxLiveSpawners": self.max_live_spawners,
            "gridCols": self.grid_cols,
            "gridRows": self.grid_rows,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimConfig":
        return cls(
            screen_width=int(data.get("screenWidth", 384)),
            screen_height=int(data.get("screenHeight", 512)),
            player_speed=float(data.get("playerSpeed", 4.0)),
            player_radius=float(data.get("playerRadius", 4.0)),
            player_start=tuple(data.get("playerStart", (0.5, 0.9))),
            max_live_spawners=int(data.get("maxLiveSpawners", 100)),
            grid_cols=int(data.get("gridCols", 12)),
            grid_rows=int(data.get("gridRows", 16)),
        )


def direction(angle_degrees: float) -> tuple[float, float]:
    """Unit vector for a heading; 0 degrees points screen-down."""
    rad = math.radians(angle_degrees)
    return math.sin(rad), math.cos(rad)
