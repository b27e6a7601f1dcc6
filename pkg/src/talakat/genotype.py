"""Grammatical-evolution genotype for boss scripts.

A chromosome is 11 arrays of 23 integer codons in [0, 99].  Arrays 1-10 each
decode one spawner definition named "s1".."s10"; the last array decodes the
boss section.  Decoding walks a fixed field order, consuming codons left to
right within the owning array and wrapping to its start when exhausted; a
choice point with N alternatives takes alternative `codon % N`, and a numeric
terminal over [lo, hi] takes `lo + (codon / 100) * (hi - lo)` (rounded half
up for integer fields).  Every chromosome decodes to a script that passes
validation, so variation operators never need repair.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .lang.sampler import ValueSampler, Wrap
from .lang.types import BossDef, BossEvent, EventAction, Script, SpawnerDef

N_ARRAYS = 11
N_CODONS = 23
CODON_LIMIT = 100
# hard cap on codon reads per array; the fixed walk stays well under it
MAX_READS = 200

SPAWNER_IDS = tuple(f"s{i}" for i in range(1, 11))

# decoded field ranges
PATTERN_LENGTH = (1, 4)
PATTERN_TIME = (1, 20)
PATTERN_REPEATS = tuple(range(1, 11)) + (None,)  # None = infinite
ANGLE = (0.0, 360.0)
RADIUS_WINDOW = (0.0, 128.0)
RATE = (-20.0, 20.0)
INTERVAL = (1, 30)
NUMBER = (1.0, 12.0)
SPEED = (0.0, 8.0)
BULLET_RADIUS = (4.0, 16.0)
COLOR = (0.0, 5.0)
BOSS_HEALTH = (1000, 5000)
BOSS_X = (0.2, 0.8)
BOSS_Y = (0.05, 0.45)
EVENT_COUNT = (1, 4)
ACTIONS_PER_EVENT = (1, 2)
# successive triggers shrink by a factor in [0.05, 0.941]
TRIGGER_DECAY = (0.05, 0.9)

PATTERN_STEPS = ("bullet", "wait") + SPAWNER_IDS
ACTION_KINDS = ("spawn_ref", "spawn_bullet", "clear_ref", "clear_bullets", "clear_spawners")

MUTATION_RATE = 2.0 / N_CODONS


class ChromosomeError(ValueError):
    """Malformed chromosome data."""


@dataclass(frozen=True)
class Chromosome:
    arrays: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.arrays) != N_ARRAYS:
            raise ChromosomeError(f"expected {N_ARRAYS} arrays, got {len(self.arrays)}")
        for i, row in enumerate(self.arrays):
            if len(row) != N_CODONS:
                raise ChromosomeError(
                    f"array {i} has {len(row)} codons, expected {N_CODONS}"
                )
            for c in row:
                if not (0 <= c < CODON_LIMIT):
                    raise ChromosomeError(f"array {i}: codon {c} outside [0, 99]")

    def to_text(self) -> str:
        return "\n".join(" ".join(str(c) for c in row) for row in self.arrays) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Chromosome":
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                rows.append(tuple(int(tok) for tok in line.split()))
            except ValueError:
                raise ChromosomeError(f"non-integer codon in line {line!r}") from None
        return cls(tuple(rows))


class _CodonReader:
    """Left-to-right reads over one array, wrapping at the end."""

    def __init__(self, codons: tuple[int, ...]):
        self.codons = codons
        self.reads = 0

    def next(self) -> int:
        if self.reads >= MAX_READS:
            raise ChromosomeError("codon read cap exceeded")
        c = self.codons[self.reads % len(self.codons)]
        self.reads += 1
        return c

    def choice(self, n: int) -> int:
        return self.next() % n

    def number(self, lo: float, hi: float) -> float:
        return lo + (self.next() / 100.0) * (hi - lo)

    def integer(self, lo: int, hi: int) -> int:
        return int(math.floor(self.number(lo, hi) + 0.5))


def _sampler(r: _CodonReader, lo: float, hi: float) -> ValueSampler:
    a = r.number(lo, hi)
    b = r.number(lo, hi)
    if a > b:
        a, b = b, a
    rate = r.number(*RATE)
    interval = r.integer(*INTERVAL)
    wrap = Wrap.CIRCLE if r.choice(2) == 0 else Wrap.INVERSE
    return ValueSampler(a, b, rate, interval, wrap)


def _decode_spawner(codons: tuple[int, ...]) -> SpawnerDef:
    r = _CodonReader(codons)
    length = r.integer(*PATTERN_LENGTH)
    pattern = [PATTERN_STEPS[r.choice(len(PATTERN_STEPS))] for _ in range(length)]
    pattern_time = r.integer(*PATTERN_TIME)
    pattern_repeat = PATTERN_REPEATS[r.choice(len(PATTERN_REPEATS))]
    return SpawnerDef(
        pattern=pattern,
        pattern_time=pattern_time,
        pattern_repeat=pattern_repeat,
        spawner_angle=_sampler(r, *ANGLE),
        spawner_radius=_sampler(r, *RADIUS_WINDOW),
        spawned_number=_sampler(r, *NUMBER),
        spawned_angle=_sampler(r, *ANGLE),
        spawned_speed=_sampler(r, *SPEED),
        bullet_radius=_sampler(r, *BULLET_RADIUS),
        bullet_color=_sampler(r, *COLOR),
    )


def _decode_boss(codons: tuple[int, ...]) -> BossDef:
    r = _CodonReader(codons)
    health = r.integer(*BOSS_HEALTH)
    position = (r.number(*BOSS_X), r.number(*BOSS_Y))
    events: list[BossEvent] = []
    trigger = 1.0
    for i in range(r.integer(*EVENT_COUNT)):
        if i > 0:
            # strictly descending thresholds, staying inside (0, 1]
            trigger = trigger * r.number(*TRIGGER_DECAY)
        actions = []
        for _ in range(r.integer(*ACTIONS_PER_EVENT)):
            kind = ACTION_KINDS[r.choice(len(ACTION_KINDS))]
            if kind in ("spawn_ref", "clear_ref"):
                ref = SPAWNER_IDS[r.choice(len(SPAWNER_IDS))]
                actions.append(EventAction(kind, ref))
            else:
                actions.append(EventAction(kind))
        events.append(BossEvent(trigger=trigger, actions=actions))
    return BossDef(boss_health=health, boss_position=position, script=events)


def decode(c: Chromosome) -> Script:
    spawners = {
        SPAWNER_IDS[i]: _decode_spawner(c.arrays[i]) for i in range(len(SPAWNER_IDS))
    }
    return Script(spawners=spawners, boss=_decode_boss(c.arrays[10]))


def random_chromosome(rng: random.Random) -> Chromosome:
    return Chromosome(
        tuple(
            tuple(rng.randrange(CODON_LIMIT) for _ in range(N_CODONS))
            for _ in range(N_ARRAYS)
        )
    )


def crossover(a: Chromosome, b: Chromosome, rng: random.Random) -> Chromosome:
    """Uniform crossover with whole arrays as atomic units."""
    rows = tuple(
        a.arrays[i] if rng.random() < 0.5 else b.arrays[i] for i in range(N_ARRAYS)
    )
    return Chromosome(rows)


def mutate(a: Chromosome, rng: random.Random) -> Chromosome:
    """Redraw codons at rate 2/23 inside one uniformly chosen array."""
    target = rng.randrange(N_ARRAYS)
    rows = []
    for i, row in enumerate(a.arrays):
        if i != target:
            rows.append(row)
            continue
        rows.append(
            tuple(
                rng.randrange(CODON_LIMIT) if rng.random() < MUTATION_RATE else c
                for c in row
            )
        )
    return Chromosome(tuple(rows))
