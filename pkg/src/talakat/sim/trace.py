"""Play traces and golden conformance traces.

A play trace records what one playthrough did (actions, outcome, per-frame
metrics).  A golden trace additionally freezes checkpoint snapshots of the
world so independent implementations can be checked against the reference
engine: bullet count and health must match exactly, player position within
1e-6 px.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from ..lang.types import Script
from .config import SimConfig
from .engine import GameState, init, state_hash, step

TRACE_VERSION = 1


@dataclass
class PlayTrace:
    actions: list[int]
    frames_survived: int
    remaining_boss_health: int
    died: bool
    frames_with_any_bullet: int
    frames_with_ten_plus_bullets: int
    max_live_spawners_seen: int
    per_frame_risk: list[float] = field(default_factory=list)
    per_frame_distribution: list[float] = field(default_factory=list)
    script_hash: str | None = None
    agent: dict | None = None

    def __post_init__(self) -> None:
        if len(self.actions) != self.frames_survived:
            raise ValueError("trace records one action per survived frame")

    def to_dict(self) -> dict:
        return {
            "version": TRACE_VERSION,
            "scriptHash": self.script_hash,
            "agent": self.agent,
            "actions": list(self.actions),
            "framesSurvived": self.frames_survived,
            "remainingBossHealth": self.remaining_boss_health,
            "died": self.died,
            "framesWithAnyBullet": self.frames_with_any_bullet,
            "framesWithTenPlusBullets": self.frames_with_ten_plus_bullets,
            "maxLiveSpawnersSeen": self.max_live_spawners_seen,
            "perFrameRisk": list(self.per_frame_risk),
            "perFrameDistribution": list(self.per_frame_distribution),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PlayTrace":
        return cls(
            actions=[int(a) for a in data["actions"]],
            frames_survived=int(data["framesSurvived"]),
            remaining_boss_health=int(data["remainingBossHealth"]),
            died=bool(data["died"]),
            frames_with_any_bullet=int(data.get("framesWithAnyBullet", 0)),
            frames_with_ten_plus_bullets=int(data.get("framesWithTenPlusBullets", 0)),
            max_live_spawners_seen=int(data.get("maxLiveSpawnersSeen", 0)),
            per_frame_risk=[float(v) for v in data.get("perFrameRisk", [])],
            per_frame_distribution=[float(v) for v in data.get("perFrameDistribution", [])],
            script_hash=data.get("scriptHash"),
            agent=data.get("agent"),
        )


def save_trace(trace: PlayTrace, path: str | Path) -> None:
    Path(path).write_text(json.dumps(trace.to_dict()) + "\n")


def load_trace(path: str | Path) -> PlayTrace:
    return PlayTrace.from_dict(json.loads(Path(path).read_text()))


def replay(
    script: Script, actions: list[int], cfg: SimConfig | None = None
) -> Iterator[GameState]:
    """Step the actions from a fresh state, yielding after every frame."""
    state = init(script, cfg)
    for action in actions:
        step(state, action)
        yield state


def final_state(script: Script, actions: list[int], cfg: SimConfig | None = None) -> GameState:
    state = init(script, cfg)
    for action in actions:
        step(state, action)
    return state


def make_golden(
    script: Script,
    actions: list[int],
    checkpoints: list[int],
    cfg: SimConfig | None = None,
    name: str | None = None,
) -> dict:
    """Freeze checkpoint snapshots of a replay into a golden trace document."""
    cfg = cfg or SimConfig()
    wanted = sorted(set(checkpoints))
    if wanted and (wanted[0] < 1 or wanted[-1] > len(actions)):
        raise ValueError("checkpoints must lie within the action range")
    snapshots: dict[str, dict] = {}
    for state in replay(script, actions, cfg):
        if state.frame in wanted:
            snapshots[str(state.frame)] = {
                "bullets": len(state.bullets),
                "player": [state.player_x, state.player_y],
                "bossHealth": state.boss_health,
                "stateHash": state_hash(state),
            }
    return {
        "version": TRACE_VERSION,
        "name": name,
        "scriptHash": script.content_hash(),
        "config": cfg.to_dict(),
        "actions": list(actions),
        "checkpoints": snapshots,
    }


def check_golden(script: Script, golden: dict, tolerance: float = 1e-6) -> list[str]:
    """Replay a golden trace; return a list of divergence descriptions."""
    problems: list[str] = []
    if golden["scriptHash"] != script.content_hash():
        problems.append("script hash mismatch")
        return problems
    cfg = SimConfig.from_dict(golden["config"])
    checkpoints = {int(k): v for k, v in golden["checkpoints"].items()}
    for state in replay(script, golden["actions"], cfg):
        expected = checkpoints.get(state.frame)
        if expected is None:
            continue
        if len(state.bullets) != expected["bullets"]:
            problems.append(
                f"frame {state.frame}: bullet count {len(state.bullets)} != {expected['bullets']}"
            )
        ex, ey = expected["player"]
        if abs(state.player_x - ex) > tolerance or abs(state.player_y - ey) > tolerance:
            problems.append(f"frame {state.frame}: player position diverged")
        if state.boss_health != expected["bossHealth"]:
            problems.append(f"frame {state.frame}: boss health diverged")
        if state_hash(state) != expected["stateHash"]:
            problems.append(f"frame {state.frame}: state hash diverged")
    return problems
