"""Flatten a Script into numeric tables for the jitted world stepper.

The tables mirror the reference engine's data model exactly; only the
representation changes (ids become indices, samplers become rows).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..lang.sampler import ValueSampler, Wrap
from ..lang.types import DEFAULT_BULLET_RADIUS, STEP_BULLET, STEP_WAIT, Script

# pattern step encoding
PS_BULLET = 0
PS_WAIT = 1
PS_REF_BASE = 2  # 2 + spawner index

# event action encoding
AK_SPAWN_REF = 0
AK_SPAWN_BULLET = 1
AK_CLEAR_REF = 2
AK_CLEAR_BULLETS = 3
AK_CLEAR_SPAWNERS = 4

# sampler row layout
SAM_MIN, SAM_MAX, SAM_RATE, SAM_INTERVAL, SAM_WRAP, SAM_CURRENT, SAM_COUNTER = range(7)
N_SAMPLERS = 7
SAMPLER_WIDTH = 7


def _sampler_row(s: ValueSampler) -> list[float]:
    return [
        s.min_value,
        s.max_value,
        s.rate,
        float(s.interval),
        1.0 if s.wrap is Wrap.INVERSE else 0.0,
        s.current,
        float(s.frame_counter),
    ]


@dataclass
class CompiledScript:
    sids: list[str]
    pattern_steps: np.ndarray
    pattern_start: np.ndarray
    pattern_len: np.ndarray
    pattern_time: np.ndarray
    pattern_repeat: np.ndarray  # -1 means infinite
    samplers: np.ndarray  # (n_spawners, 7 samplers, 7 fields)
    boss_health: int
    boss_x: float
    boss_y: float
    event_trigger: np.ndarray
    event_action_start: np.ndarray
    event_action_len: np.ndarray
    action_kind: np.ndarray
    action_ref: np.ndarray
    action_speed: np.ndarray
    action_angle: np.ndarray
    default_bullet_radius: float = DEFAULT_BULLET_RADIUS


def compile_script(script: Script, screen_width: float, screen_height: float) -> CompiledScript:
    sids = list(script.spawners.keys())
    index = {sid: i for i, sid in enumerate(sids)}

    steps: list[int] = []
    starts, lens, times, repeats = [], [], [], []
    sampler_rows = []
    for sid in sids:
        sdef = script.spawners[sid]
        starts.append(len(steps))
        lens.append(len(sdef.pattern))
        for p in sdef.pattern:
            if p == STEP_BULLET:
                steps.append(PS_BULLET)
            elif p == STEP_WAIT:
                steps.append(PS_WAIT)
            else:
                steps.append(PS_REF_BASE + index[p])
        times.append(sdef.pattern_time)
        repeats.append(-1 if sdef.pattern_repeat is None else sdef.pattern_repeat)
        sampler_rows.append(
            [_sampler_row(getattr(sdef, name)) for name in type(sdef).SAMPLER_FIELDS]
        )

    triggers, a_start, a_len = [], [], []
    a_kind, a_ref, a_speed, a_angle = [], [], [], []
    for event in script.boss.script:
        triggers.append(event.trigger)
        a_start.append(len(a_kind))
        a_len.append(len(event.actions))
        for action in event.actions:
            kind = {
                "spawn_ref": AK_SPAWN_REF,
                "spawn_bullet": AK_SPAWN_BULLET,
                "clear_ref": AK_CLEAR_REF,
                "clear_bullets": AK_CLEAR_BULLETS,
                "clear_spawners": AK_CLEAR_SPAWNERS,
            }[action.kind]
            a_kind.append(kind)
            a_ref.append(index[action.ref] if action.ref is not None else -1)
            a_speed.append(action.speed)
            a_angle.append(action.angle)

    bx, by = script.boss.boss_position
    return CompiledScript(
        sids=sids,
        pattern_steps=np.asarray(steps, dtype=np.int64),
        pattern_start=np.asarray(starts, dtype=np.int64),
        pattern_len=np.asarray(lens, dtype=np.int64),
        pattern_time=np.asarray(times, dtype=np.int64),
        pattern_repeat=np.asarray(repeats, dtype=np.int64),
        samplers=np.asarray(sampler_rows, dtype=np.float64).reshape(
            len(sids), N_SAMPLERS, SAMPLER_WIDTH
        ),
        boss_health=script.boss.boss_health,
        boss_x=bx * screen_width,
        boss_y=by * screen_height,
        event_trigger=np.asarray(triggers, dtype=np.float64),
        event_action_start=np.asarray(a_start, dtype=np.int64),
        event_action_len=np.asarray(a_len, dtype=np.int64),
        action_kind=np.asarray(a_kind, dtype=np.int64),
        action_ref=np.asarray(a_ref, dtype=np.int64),
        action_speed=np.asarray(a_speed, dtype=np.float64),
        action_angle=np.asarray(a_angle, dtype=np.float64),
    )
