"""Data model for a parsed boss level script."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .sampler import ValueSampler, constant

# Words that cannot be used as spawner ids because they are keywords in
# pattern steps and boss events.
RESERVED_IDS = frozenset({"bullet", "wait", "bullets", "spawners", "spawn", "clear"})

STEP_BULLET = "bullet"
STEP_WAIT = "wait"

# Defaults applied to omitted spawner fields.
DEFAULT_PATTERN_TIME = 1
DEFAULT_BULLET_RADIUS = 8.0


@dataclass
class SpawnerDef:
    pattern: list[str]
    pattern_time: int = DEFAULT_PATTERN_TIME
    pattern_repeat: int | None = None  # None = repeat forever
    spawner_angle: ValueSampler = field(default_factory=lambda: constant(0.0))
    spawner_radius: ValueSampler = field(default_factory=lambda: constant(0.0))
    spawned_number: ValueSampler = field(default_factory=lambda: constant(1.0))
    spawned_angle: ValueSampler = field(default_factory=lambda: constant(0.0))
    spawned_speed: ValueSampler = field(default_factory=lambda: constant(0.0))
    bullet_radius: ValueSampler = field(default_factory=lambda: constant(DEFAULT_BULLET_RADIUS))
    bullet_color: ValueSampler = field(default_factory=lambda: constant(0.0))

    SAMPLER_FIELDS = (
        "spawner_angle",
        "spawner_radius",
        "spawned_number",
        "spawned_angle",
        "spawned_speed",
        "bullet_radius",
        "bullet_color",
    )


@dataclass
class EventAction:
    kind: str  # spawn_ref | spawn_bullet | clear_ref | clear_bullets | clear_spawners
    ref: str | None = None
    speed: float = 0.0
    angle: float = 0.0

    def to_csv(self) -> str:
        if self.kind == "spawn_ref":
            if self.speed == 0.0 and self.angle == 0.0:
                return f"spawn,{self.ref}"
            return f"spawn,{self.ref},{_num(self.speed)},{_num(self.angle)}"
        if self.kind == "spawn_bullet":
            return f"spawn,bullet,{_num(self.speed)},{_num(self.angle)}"
        if self.kind == "clear_ref":
            return f"clear,{self.ref}"
        if self.kind == "clear_bullets":
            return "clear,bullets"
        if self.kind == "clear_spawners":
            return "clear,spawners"
        raise ValueError(f"unknown action kind {self.kind!r}")


@dataclass
class BossEvent:
    trigger: float  # health fraction in (0, 1]
    actions: list[EventAction]


@dataclass
class BossDef:
    boss_health: int
    boss_position: tuple[float, float] = (0.5, 0.2)
    script: list[BossEvent] = field(default_factory=list)


@dataclass
class Script:
    spawners: dict[str, SpawnerDef]
    boss: BossDef

    def validate(self) -> list[str]:
        """Return a list of diagnostics; empty means the script is valid."""
        problems: list[str] = []
        if not self.spawners:
            problems.append("script defines no spawners")
        for sid, sdef in self.spawners.items():
            where = f"spawners.{sid}"
            if sid in RESERVED_IDS:
                problems.append(f"{where}: {sid!r} is a reserved word")
            if not sdef.pattern:
                problems.append(f"{where}.pattern: pattern is empty")
            for i, step in enumerate(sdef.pattern):
                if step in (STEP_BULLET, STEP_WAIT):
                    continue
                if step not in self.spawners:
                    problems.append(
                        f"{where}.pattern[{i}]: unknown spawner reference {step!r}"
                    )
            if sdef.pattern_time < 1:
                problems.append(f"{where}.patternTime: must be >= 1")
            if sdef.pattern_repeat is not None and sdef.pattern_repeat < 1:
                problems.append(f"{where}.patternRepeat: must be >= 1 or infinite")
        if self.boss.boss_health < 1:
            problems.append("boss.bossHealth: must be >= 1")
        for i, event in enumerate(self.boss.script):
            where = f"boss.script[{i}]"
            if not (0.0 < event.trigger <= 1.0):
                problems.append(f"{where}.health: trigger {event.trigger} outside (0, 1]")
            if not event.actions:
                problems.append(f"{where}.events: no actions")
            for j, action in enumerate(event.actions):
                if action.kind in ("spawn_ref", "clear_ref") and action.ref not in self.spawners:
                    problems.append(
                        f"{where}.events[{j}]: unknown spawner reference {action.ref!r}"
                    )
        return problems

    def spawner_ids(self) -> list[str]:
        return list(self.spawners.keys())

    def content_hash(self) -> str:
        from .writer import serialize

        return hashlib.sha256(serialize(self).encode()).hexdigest()


def _num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)
