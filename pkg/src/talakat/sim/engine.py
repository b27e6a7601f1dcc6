"""Reference bullet-hell engine.

Normative frame-step contract, shared by every implementation (including
the fast kernel and the browser player):

  1. boss health decreases by 1 (every frame, whatever the player does)
  2. each pending boss event whose trigger >= health/maxHealth fires once,
     in script order
  3. spawners created before this frame act, in creation order: every
     patternTime-th visit executes the current pattern step (children are
     distributed over the spawnedAngle arc centered on spawnerAngle, offset
     by spawnerRadius, moving at spawnedSpeed) and the pattern index then
     advances; all seven samplers advance once per visit
  4. bullets and spawners translate by velocity; bullets fully outside the
     screen and spawners that finished their repeats are removed
  5. the player translates by the action velocity, its center clamped to
     [radius, screen - radius] on both axes
  6. flags: player-vs-bullet circle overlap (strict, dist^2 < (r1+r2)^2)
     sets playerDead, taking precedence over bossDead on the same frame;
     health 0 sets bossDead; a live spawner count above maxLiveSpawners
     sets the sticky spawnerOverflow flag, which suppresses spawner
     creation from the next attempt on (bullets still spawn)

Entities created during a frame do not act in that frame's phase 3, and a
child spawner's angle sampler window is shifted by its assigned spawn
angle so the whole pattern aims along the child's direction.
"""
from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass, field

import numpy as np

from ..lang.sampler import ValueSampler
from ..lang.types import (
    DEFAULT_BULLET_RADIUS,
    STEP_BULLET,
    STEP_WAIT,
    Script,
    SpawnerDef,
)
from .config import SimConfig, direction

PALETTE_SIZE = 6


@dataclass(slots=True)
class Bullet:
    x: float
    y: float
    vx: float
    vy: float
    radius: float
    color: int

    def copy(self) -> "Bullet":
        return Bullet(self.x, self.y, self.vx, self.vy, self.radius, self.color)


@dataclass(slots=True)
class SpawnerEntity:
    sid: str
    sdef: SpawnerDef
    x: float
    y: float
    vx: float
    vy: float
    born: int
    pattern_index: int = 0
    repeats_done: int = 0
    step_timer: int = 0
    spawner_angle: ValueSampler = None  # type: ignore[assignment]
    spawner_radius: ValueSampler = None  # type: ignore[assignment]
    spawned_number: ValueSampler = None  # type: ignore[assignment]
    spawned_angle: ValueSampler = None  # type: ignore[assignment]
    spawned_speed: ValueSampler = None  # type: ignore[assignment]
    bullet_radius: ValueSampler = None  # type: ignore[assignment]
    bullet_color: ValueSampler = None  # type: ignore[assignment]

    @property
    def expired(self) -> bool:
        repeat = self.sdef.pattern_repeat
        return repeat is not None and self.repeats_done >= repeat

    def samplers(self) -> tuple[ValueSampler, ...]:
        return (
            self.spawner_angle,
            self.spawner_radius,
            self.spawned_number,
            self.spawned_angle,
            self.spawned_speed,
            self.bullet_radius,
            self.bullet_color,
        )

    def copy(self) -> "SpawnerEntity":
        return SpawnerEntity(
            self.sid,
            self.sdef,
            self.x,
            self.y,
            self.vx,
            self.vy,
            self.born,
            self.pattern_index,
            self.repeats_done,
            self.step_timer,
            *(s.copy() for s in self.samplers()),
        )


@dataclass
class GameState:
    script: Script
    cfg: SimConfig
    frame: int = 0
    player_x: float = 0.0
    player_y: float = 0.0
    boss_health: int = 0
    boss_health_max: int = 0
    boss_x: float = 0.0
    boss_y: float = 0.0
    bullets: list[Bullet] = field(default_factory=list)
    spawners: list[SpawnerEntity] = field(default_factory=list)
    pending_events: list[int] = field(default_factory=list)
    player_dead: bool = False
    boss_dead: bool = False
    spawner_overflow: bool = False

    @property
    def terminal(self) -> bool:
        return self.player_dead or self.boss_dead

    def clone(self) -> "GameState":
        out = GameState(self.script, self.cfg)
        out.frame = self.frame
        out.player_x, out.player_y = self.player_x, self.player_y
        out.boss_health = self.boss_health
        out.boss_health_max = self.boss_health_max
        out.boss_x, out.boss_y = self.boss_x, self.boss_y
        out.bullets = [b.copy() for b in self.bullets]
        out.spawners = [s.copy() for s in self.spawners]
        out.pending_events = list(self.pending_events)
        out.player_dead = self.player_dead
        out.boss_dead = self.boss_dead
        out.spawner_overflow = self.spawner_overflow
        return out


def init(script: Script, cfg: SimConfig | None = None) -> GameState:
    cfg = cfg or SimConfig()
    state = GameState(script=script, cfg=cfg)
    state.player_x, state.player_y = cfg.player_start_px()
    state.boss_health = state.boss_health_max = script.boss.boss_health
    bx, by = script.boss.boss_position
    state.boss_x = bx * cfg.screen_width
    state.boss_y = by * cfg.screen_height
    state.pending_events = list(range(len(script.boss.script)))
    return state


def step(state: GameState, action: int) -> GameState:
    """Advance one frame in place (see module docstring for phase order)."""
    if state.terminal:
        raise ValueError("cannot step a terminal state")
    cfg = state.cfg
    state.frame += 1

    # 1. health
    state.boss_health -= 1

    # 2. boss events
    if state.pending_events:
        fraction = state.boss_health / state.boss_health_max
        still_pending = []
        for index in state.pending_events:
            event = state.script.boss.script[index]
            if event.trigger >= fraction:
                _fire_event(state, event)
            else:
                still_pending.append(index)
        state.pending_events = still_pending

    # 3. spawner execution (only entities born before this frame)
    for sp in list(state.spawners):
        if sp.born >= state.frame:
            continue
        sp.step_timer += 1
        if sp.step_timer >= sp.sdef.pattern_time:
            sp.step_timer = 0
            _execute_pattern_step(state, sp)
        for sampler in sp.samplers():
            sampler.step()

    # 4. motion and removal
    for b in state.bullets:
        b.x += b.vx
        b.y += b.vy
    width, height = cfg.screen_width, cfg.screen_height
    state.bullets = [
        b
        for b in state.bullets
        if b.x + b.radius >= 0
        and b.x - b.radius <= width
        and b.y + b.radius >= 0
        and b.y - b.radius <= height
    ]
    for sp in state.spawners:
        sp.x += sp.vx
        sp.y += sp.vy
    state.spawners = [sp for sp in state.spawners if not sp.expired]

    # 5. player motion
    vx, vy = cfg.action_velocity(action)
    r = cfg.player_radius
    state.player_x = min(max(state.player_x + vx, r), width - r)
    state.player_y = min(max(state.player_y + vy, r), height - r)

    # 6. flags
    px, py = state.player_x, state.player_y
    for b in state.bullets:
        reach = r + b.radius
        dx = b.x - px
        dy = b.y - py
        if dx * dx + dy * dy < reach * reach:
            state.player_dead = True
            break
    if not state.player_dead and state.boss_health <= 0:
        state.boss_dead = True
    if len(state.spawners) > cfg.max_live_spawners:
        state.spawner_overflow = True
    return state


def _fire_event(state: GameState, event) -> None:
    for action in event.actions:
        kind = action.kind
        if kind == "spawn_ref":
            _spawn_child(
                state, action.ref, state.boss_x, state.boss_y, action.angle, action.speed
            )
        elif kind == "spawn_bullet":
            _spawn_bullet(
                state,
                state.boss_x,
                state.boss_y,
                action.angle,
                action.speed,
                DEFAULT_BULLET_RADIUS,
                0,
            )
        elif kind == "clear_ref":
            state.spawners = [sp for sp in state.spawners if sp.sid != action.ref]
        elif kind == "clear_bullets":
            state.bullets = []
        elif kind == "clear_spawners":
            state.spawners = []


def _execute_pattern_step(state: GameState, sp: SpawnerEntity) -> None:
    pattern_step = sp.sdef.pattern[sp.pattern_index]
    if pattern_step != STEP_WAIT:
        count = round_half_up(sp.spawned_number.current)
        count = min(count, state.cfg.max_spawn_batch)
        offset = sp.spawner_radius.current
        speed = sp.spawned_speed.current
        for angle in arc_angles(
            sp.spawner_angle.current, sp.spawned_angle.current, count
        ):
            ux, uy = direction(angle)
            x = sp.x + offset * ux
            y = sp.y + offset * uy
            if pattern_step == STEP_BULLET:
                color = min(max(round_half_up(sp.bullet_color.current), 0), PALETTE_SIZE - 1)
                if len(state.bullets) < state.cfg.max_live_bullets:
                    state.bullets.append(
                        Bullet(x, y, speed * ux, speed * uy, sp.bullet_radius.current, color)
                    )
            else:
                _make_spawner(state, pattern_step, x, y, speed * ux, speed * uy, angle)
    sp.pattern_index += 1
    if sp.pattern_index >= len(sp.sdef.pattern):
        sp.pattern_index = 0
        sp.repeats_done += 1


def _spawn_child(
    state: GameState, sid: str, x: float, y: float, angle: float, speed: float
) -> None:
    ux, uy = direction(angle)
    _make_spawner(state, sid, x, y, speed * ux, speed * uy, angle)


def _make_spawner(
    state: GameState, sid: str, x: float, y: float, vx: float, vy: float, angle: float
) -> None:
    if state.spawner_overflow:
        return
    sdef = state.script.spawners[sid]
    entity = SpawnerEntity(
        sid,
        sdef,
        x,
        y,
        vx,
        vy,
        state.frame,
        0,
        0,
        0,
        *(getattr(sdef, name).copy() for name in SpawnerDef.SAMPLER_FIELDS),
    )
    if angle != 0.0:
        entity.spawner_angle.shift(angle)
    state.spawners.append(entity)


def _spawn_bullet(
    state: GameState,
    x: float,
    y: float,
    angle: float,
    speed: float,
    radius: float,
    color: int,
) -> None:
    if len(state.bullets) >= state.cfg.max_live_bullets:
        return
    ux, uy = direction(angle)
    state.bullets.append(Bullet(x, y, speed * ux, speed * uy, radius, color))


def arc_angles(center: float, arc: float, n: int) -> list[float]:
    """Headings of n children spread over an arc centered on `center`.

    Full circles space children 360/n apart starting at the center so the
    endpoint is not doubled; narrower arcs center each child in its slot.
    """
    if n <= 0:
        return []
    if arc >= 360.0:
        return [center + 360.0 * i / n for i in range(n)]
    start = center - arc / 2.0
    return [start + arc * (i + 0.5) / n for i in range(n)]


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def occupancy_grid(state: GameState, cfg: SimConfig | None = None) -> np.ndarray:
    """Boolean (rows, cols) grid: cell true iff a bullet center lies in it."""
    return bullet_count_grid(state, cfg) > 0


def bullet_count_grid(state: GameState, cfg: SimConfig | None = None) -> np.ndarray:
    cfg = cfg or state.cfg
    grid = np.zeros((cfg.grid_rows, cfg.grid_cols), dtype=np.int32)
    cw, ch = cfg.cell_width, cfg.cell_height
    for b in state.bullets:
        col = int(b.x // cw)
        row = int(b.y // ch)
        if 0 <= col < cfg.grid_cols and 0 <= row < cfg.grid_rows:
            grid[row, col] += 1
    return grid


def state_hash(state: GameState) -> str:
    """Canonical digest of the full dynamic state, for replay checks."""
    h = hashlib.sha256()
    h.update(
        struct.pack(
            "<qqq dd dd ???",
            state.frame,
            state.boss_health,
            state.boss_health_max,
            state.player_x,
            state.player_y,
            state.boss_x,
            state.boss_y,
            state.player_dead,
            state.boss_dead,
            state.spawner_overflow,
        )
    )
    for b in state.bullets:
        h.update(struct.pack("<dddddq", b.x, b.y, b.vx, b.vy, b.radius, b.color))
    for sp in state.spawners:
        h.update(sp.sid.encode())
        h.update(
            struct.pack(
                "<ddddqqqq",
                sp.x,
                sp.y,
                sp.vx,
                sp.vy,
                sp.born,
                sp.pattern_index,
                sp.repeats_done,
                sp.step_timer,
            )
        )
        for sampler in sp.samplers():
            h.update(
                struct.pack(
                    "<dddqqdq",
                    sampler.min_value,
                    sampler.max_value,
                    sampler.rate,
                    sampler.interval,
                    1 if sampler.wrap.value == "inverse" else 0,
                    sampler.current,
                    sampler.frame_counter,
                )
            )
    for index in state.pending_events:
        h.update(struct.pack("<q", index))
    return h.hexdigest()
