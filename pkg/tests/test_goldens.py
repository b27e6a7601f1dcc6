"""Every committed golden trace replays clean against its embedded script."""
from __future__ import annotations

import json
from pathlib import Path

import pytest

from talakat.lang import parse_script
from talakat.sim.trace import check_golden

GOLDENS = Path(__file__).resolve().parents[1] / "goldens"
TRACES = sorted(GOLDENS.glob("traces/*.json"))


@pytest.mark.parametrize("path", TRACES, ids=lambda p: p.stem)
def test_trace_replays_clean(path):
    doc = json.loads(path.read_text())
    script = parse_script(doc["script"])
    assert doc["scriptHash"] == script.content_hash()
    assert check_golden(script, doc) == []


def test_corpus_is_present():
    names = {p.stem for p in TRACES}
    assert {"demo_idle", "demo_survivor", "sweeper_idle"} <= names
    scripts = {p.name for p in GOLDENS.glob("scripts/*.talakat")}
    assert {"demo_boss.talakat", "sweeper.talakat"} <= scripts


def test_checkpoints_carry_portable_state():
    """Web-client conformance fields: counts, positions, health, bullets."""
    for path in TRACES:
        doc = json.loads(path.read_text())
        assert doc["checkpoints"], path.stem
        for frame, cp in doc["checkpoints"].items():
            assert int(frame) >= 0
            assert cp["bullets"] == len(cp["bulletStates"])
            assert len(cp["player"]) == 2
            assert cp["bossHealth"] >= 0
            assert cp["spawners"] >= 0
            for b in cp["bulletStates"]:
                assert len(b) == 6
