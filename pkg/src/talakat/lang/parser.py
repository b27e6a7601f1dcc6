"""Turn a structured-text document into a validated Script."""
from __future__ import annotations

from .reader import SyntaxDiagnostic, read_document
from .sampler import SamplerError, ValueSampler, constant, parse_sampler
from .types import (
    DEFAULT_BULLET_RADIUS,
    BossDef,
    BossEvent,
    EventAction,
    Script,
    SpawnerDef,
)


class ScriptError(ValueError):
    """Script failed to parse or validate; diagnostics carry field paths."""

    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


def parse_script(text: str) -> Script:
    try:
        doc = read_document(text)
    except SyntaxDiagnostic as e:
        raise ScriptError([f"syntax error at {e.line}:{e.col}: "
                           f"{str(e).split(': ', 1)[1]}"]) from e
    script, problems = build_script(doc)
    if problems:
        raise ScriptError(problems)
    return script


def build_script(doc) -> tuple[Script | None, list[str]]:
    problems: list[str] = []
    if not isinstance(doc, dict):
        return None, ["document root must be an object"]

    spawners: dict[str, SpawnerDef] = {}
    raw_spawners = doc.get("spawners")
    if not isinstance(raw_spawners, dict):
        problems.append("spawners: missing or not an object")
        raw_spawners = {}
    for sid, raw in raw_spawners.items():
        sdef = _build_spawner(sid, raw, problems)
        if sdef is not None:
            spawners[str(sid)] = sdef

    raw_boss = doc.get("boss")
    if not isinstance(raw_boss, dict):
        problems.append("boss: missing or not an object")
        boss = BossDef(boss_health=1)
    else:
        boss = _build_boss(raw_boss, problems)

    if problems:
        return None, problems
    script = Script(spawners=spawners, boss=boss)
    problems = script.validate()
    if problems:
        return None, problems
    return script, []


def _build_spawner(sid: str, raw, problems: list[str]) -> SpawnerDef | None:
    where = f"spawners.{sid}"
    if not isinstance(raw, dict):
        problems.append(f"{where}: not an object")
        return None
    pattern = raw.get("pattern")
    if not isinstance(pattern, list) or not all(isinstance(p, str) for p in pattern):
        problems.append(f"{where}.pattern: must be an array of step names")
        pattern = []
    pattern_time = _int_field(raw, "patternTime", 1, where, problems)
    pattern_repeat = _repeat_field(raw, where, problems)

    samplers = {}
    for key, attr, default in (
        ("spawnerAngle", "spawner_angle", 0.0),
        ("spawnerRadius", "spawner_radius", 0.0),
        ("spawnedNumber", "spawned_number", 1.0),
        ("spawnedAngle", "spawned_angle", 0.0),
        ("spawnedSpeed", "spawned_speed", 0.0),
        ("bulletRadius", "bullet_radius", DEFAULT_BULLET_RADIUS),
        ("bulletColor", "bullet_color", 0.0),
    ):
        samplers[attr] = _sampler_field(raw, key, default, where, problems)

    return SpawnerDef(
        pattern=list(pattern),
        pattern_time=pattern_time,
        pattern_repeat=pattern_repeat,
        **samplers,
    )


def _build_boss(raw: dict, problems: list[str]) -> BossDef:
    health = raw.get("bossHealth", 0)
    try:
        health = int(health)
    except (TypeError, ValueError):
        problems.append("boss.bossHealth: not an integer")
        health = 0

    position = (0.5, 0.2)
    raw_pos = raw.get("bossPosition")
    if raw_pos is not None:
        try:
            if isinstance(raw_pos, str):
                x, y = (float(p) for p in raw_pos.split(","))
            else:
                x, y = (float(p) for p in raw_pos)
            position = (x, y)
        except (TypeError, ValueError):
            problems.append("boss.bossPosition: expected two comma-separated fractions")
        else:
            if not (0.0 <= position[0] <= 1.0 and 0.0 <= position[1] <= 1.0):
                problems.append("boss.bossPosition: fractions must be within [0, 1]")

    events: list[BossEvent] = []
    raw_script = raw.get("script", [])
    if not isinstance(raw_script, list):
        problems.append("boss.script: must be an array")
        raw_script = []
    for i, raw_event in enumerate(raw_script):
        where = f"boss.script[{i}]"
        if not isinstance(raw_event, dict):
            problems.append(f"{where}: not an object")
            continue
        try:
            trigger = float(raw_event.get("health"))
        except (TypeError, ValueError):
            problems.append(f"{where}.health: missing or non-numeric trigger")
            trigger = 0.0
        actions: list[EventAction] = []
        raw_actions = raw_event.get("events", [])
        if not isinstance(raw_actions, list):
            problems.append(f"{where}.events: must be an array")
            raw_actions = []
        for j, raw_action in enumerate(raw_actions):
            action = _parse_action(str(raw_action), f"{where}.events[{j}]", problems)
            if action is not None:
                actions.append(action)
        events.append(BossEvent(trigger=trigger, actions=actions))
    return BossDef(boss_health=health, boss_position=position, script=events)


def _parse_action(text: str, where: str, problems: list[str]) -> EventAction | None:
    parts = [p.strip() for p in text.split(",")]
    if not parts:
        problems.append(f"{where}: empty action")
        return None
    verb = parts[0].lower()
    if verb == "spawn":
        if len(parts) < 2:
            problems.append(f"{where}: spawn needs a target")
            return None
        target = parts[1]
        speed = angle = 0.0
        if len(parts) >= 3:
            try:
                speed = float(parts[2])
                angle = float(parts[3]) if len(parts) >= 4 else 0.0
            except ValueError:
                problems.append(f"{where}: non-numeric spawn speed/angle")
                return None
        if len(parts) > 4:
            problems.append(f"{where}: too many spawn fields")
            return None
        if target == "bullet":
            return EventAction("spawn_bullet", None, speed, angle)
        return EventAction("spawn_ref", target, speed, angle)
    if verb == "clear":
        if len(parts) != 2:
            problems.append(f"{where}: clear takes exactly one target")
            return None
        target = parts[1]
        if target == "bullets":
            return EventAction("clear_bullets")
        if target == "spawners":
            return EventAction("clear_spawners")
        return EventAction("clear_ref", target)
    problems.append(f"{where}: unknown action verb {parts[0]!r}")
    return None


def _int_field(raw: dict, key: str, default: int, where: str, problems: list[str]) -> int:
    value = raw.get(key, default)
    try:
        return int(value)
    except (TypeError, ValueError):
        problems.append(f"{where}.{key}: not an integer")
        return default


def _repeat_field(raw: dict, where: str, problems: list[str]) -> int | None:
    value = raw.get("patternRepeat")
    if value is None:
        return None
    if isinstance(value, str) and value.strip().lower() in ("infinite", "inf"):
        return None
    try:
        return int(value)
    except (TypeError, ValueError):
        problems.append(f"{where}.patternRepeat: expected an integer or 'infinite'")
        return None


def _sampler_field(
    raw: dict, key: str, default: float, where: str, problems: list[str]
) -> ValueSampler:
    value = raw.get(key)
    if value is None:
        return constant(default)
    try:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return constant(float(value))
        return parse_sampler(str(value))
    except SamplerError as e:
        problems.append(f"{where}.{key}: {e}")
        return constant(default)
