"""Canonical serialization of scripts.

The canonical form fills every field in explicitly (defaults included) so
that dumping and re-parsing yields a structurally identical Script.
"""
from __future__ import annotations

from .types import Script, SpawnerDef


def serialize(script: Script) -> str:
    lines: list[str] = ["{", "  spawners:{"]
    spawner_items = list(script.spawners.items())
    for i, (sid, sdef) in enumerate(spawner_items):
        comma = "," if i + 1 < len(spawner_items) else ""
        lines.extend(_spawner_lines(sid, sdef, comma))
    lines.append("  },")
    lines.append("  boss:{")
    lines.append(f"    bossHealth: {script.boss.boss_health},")
    bx, by = script.boss.boss_position
    lines.append(f'    bossPosition: "{_num(bx)}, {_num(by)}",')
    lines.append("    script:[")
    for i, event in enumerate(script.boss.script):
        comma = "," if i + 1 < len(script.boss.script) else ""
        actions = ", ".join(f'"{a.to_csv()}"' for a in event.actions)
        lines.append("      {")
        lines.append(f"        health: {_num(event.trigger)},")
        lines.append(f"        events: [{actions}]")
        lines.append("      }" + comma)
    lines.append("    ]")
    lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _spawner_lines(sid: str, sdef: SpawnerDef, trailing: str) -> list[str]:
    pattern = ", ".join(f'"{p}"' for p in sdef.pattern)
    repeat = "infinite" if sdef.pattern_repeat is None else str(sdef.pattern_repeat)
    return [
        f"    {_key(sid)}:{{",
        f"      pattern: [{pattern}],",
        f'      patternTime: "{sdef.pattern_time}",',
        f'      patternRepeat: "{repeat}",',
        f'      spawnerAngle: "{sdef.spawner_angle.to_csv()}",',
        f'      spawnerRadius: "{sdef.spawner_radius.to_csv()}",',
        f'      spawnedNumber: "{sdef.spawned_number.to_csv()}",',
        f'      spawnedAngle: "{sdef.spawned_angle.to_csv()}",',
        f'      spawnedSpeed: "{sdef.spawned_speed.to_csv()}",',
        f'      bulletRadius: "{sdef.bullet_radius.to_csv()}",',
        f'      bulletColor: "{sdef.bullet_color.to_csv()}"',
        "    }" + trailing,
    ]


def _key(name: str) -> str:
    if name and (name[0].isalpha() or name[0] == "_") and all(c.isalnum() or c == "_" for c in name):
        return name
    return f'"{name}"'


def _num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)
