"""Regenerate the golden trace documents under goldens/traces/.

Each golden freezes checkpoint snapshots of a deterministic replay: bullet
count, player position, boss health, a bit-exact state hash, and the full
engine-ordered bullet states.  The embedded bullet states let independent
engine ports (the web player) check conformance positionally to 1e-6 px
without reproducing the byte-level hash.

Run from the repository root after any intentional engine change:

    python3 tools/make_goldens.py
"""
from __future__ import annotations

import json
from pathlib import Path

from talakat.agent import AgentConfig, play
from talakat.lang import parse_script
from talakat.sim import init, step
from talakat.sim.trace import make_golden, replay

ROOT = Path(__file__).resolve().parents[1]
SCRIPTS = ROOT / "goldens" / "scripts"
TRACES = ROOT / "goldens" / "traces"

SWEEPER = """\
{
    spawners: {
        sweep: {
            pattern: ["bullet"],
            patternTime: "4",
            spawnerAngle: "0, 180, 2, 0, reverse",
            spawnedSpeed: "2",
            spawnedNumber: "2",
            spawnedAngle: "360",
        },
    },
    boss: {
        bossHealth: 300,
        bossPosition: "0.5, 0.2",
        script: [{health: 1.0, events: ["spawn,sweep"]}],
    },
}
"""


def idle_actions(script, limit: int, margin: int = 5) -> list[int]:
    """Idle actions up to `limit` frames, stopping short of an idle death."""
    state = init(script)
    for i in range(1, limit + 1):
        step(state, 0)
        if state.player_dead:
            return [0] * max(i - margin, 1)
    return [0] * limit


def enriched_golden(script, text: str, actions, checkpoints, name: str) -> dict:
    golden = make_golden(script, actions, checkpoints, name=name)
    golden["script"] = text
    wanted = {int(k) for k in golden["checkpoints"]}
    for state in replay(script, actions):
        if state.frame in wanted:
            snap = golden["checkpoints"][str(state.frame)]
            snap["spawners"] = len(state.spawners)
            snap["bulletStates"] = [
                [b.x, b.y, b.vx, b.vy, b.radius, b.color] for b in state.bullets
            ]
    return golden


def write(name: str, doc: dict) -> None:
    path = TRACES / name
    path.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {path} ({len(doc['actions'])} actions, "
          f"{len(doc['checkpoints'])} checkpoints)")


def main() -> None:
    TRACES.mkdir(parents=True, exist_ok=True)

    sweeper_path = SCRIPTS / "sweeper.talakat"
    sweeper_path.write_text(SWEEPER)
    print(f"wrote {sweeper_path}")

    demo_text = (SCRIPTS / "demo_boss.talakat").read_text()
    demo = parse_script(demo_text)

    # idle run: early spawn geometry before the idle player gets hit
    idles = idle_actions(demo, 120)
    checkpoints = [f for f in (4, 12, 24, 48, 60, len(idles)) if f <= len(idles)]
    write("demo_idle.json",
          enriched_golden(demo, demo_text, idles, checkpoints, "demo_idle"))

    # full-length survival run: covers the 50%-health event and level end
    trace = play(demo, AgentConfig.named("high", "high", seed=2))
    assert not trace.died and trace.frames_survived == demo.boss.boss_health, \
        "survivor seed no longer survives; pick a new one"
    survivor_checkpoints = sorted(
        set(range(250, 3001, 250)) | {1, 1499, 1500, 1501, 3000}
    )
    write("demo_survivor.json",
          enriched_golden(demo, demo_text, trace.actions, survivor_checkpoints,
                          "demo_survivor"))

    sweeper = parse_script(SWEEPER)
    sw_idles = idle_actions(sweeper, 300)
    sw_checkpoints = [f for f in (8, 40, 80, 160, 240, len(sw_idles))
                      if f <= len(sw_idles)]
    write("sweeper_idle.json",
          enriched_golden(sweeper, SWEEPER, sw_idles, sorted(set(sw_checkpoints)),
                          "sweeper_idle"))


if __name__ == "__main__":
    main()
