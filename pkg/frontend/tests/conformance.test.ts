import { describe, expect, it } from "vitest";

import { parseScript } from "../src/parser.js";
import { GoldenDoc, checkGolden, finalState } from "../src/trace.js";
import { goldenDoc, goldenNames } from "./helpers.js";

// The golden corpus is the cross-implementation contract: replaying the
// recorded actions here must reproduce the reference engine's checkpoint
// snapshots (bullet and spawner counts and boss health exactly, positions
// within 1e-6 px).

describe("golden corpus", () => {
  const names = goldenNames();

  it("is present", () => {
    expect(names).toContain("demo_idle.json");
    expect(names).toContain("demo_survivor.json");
    expect(names).toContain("sweeper_idle.json");
  });

  it.each(names)("%s replays without divergence", (name) => {
    const golden = goldenDoc(name);
    expect(typeof golden.script).toBe("string");
    const script = parseScript(golden.script as string);
    expect(checkGolden(script, golden)).toEqual([]);
  });

  it.each(names)("%s replay survives to the last action", (name) => {
    const golden = goldenDoc(name);
    const script = parseScript(golden.script as string);
    const state = finalState(script, golden.actions, undefined);
    expect(state.frame).toBe(golden.actions.length);
    expect(state.playerDead).toBe(false);
  });
});

describe("checkGolden sensitivity", () => {
  const tampered = (mutate: (golden: GoldenDoc) => void): string[] => {
    const golden = goldenDoc("demo_idle.json");
    mutate(golden);
    return checkGolden(parseScript(golden.script as string), golden);
  };

  const lastFrame = (golden: GoldenDoc): string => {
    const frames = Object.keys(golden.checkpoints).map(Number);
    return String(Math.max(...frames));
  };

  it("flags a wrong bullet count", () => {
    const problems = tampered((g) => {
      g.checkpoints[lastFrame(g)].bullets += 1;
    });
    expect(problems.some((p) => p.includes("bullet count"))).toBe(true);
  });

  it("flags a drifted player position", () => {
    const problems = tampered((g) => {
      g.checkpoints[lastFrame(g)].player[0] += 1e-3;
    });
    expect(problems.some((p) => p.includes("player position"))).toBe(true);
  });

  it("accepts a sub-tolerance player wobble", () => {
    const problems = tampered((g) => {
      g.checkpoints[lastFrame(g)].player[0] += 1e-9;
    });
    expect(problems).toEqual([]);
  });

  it("flags wrong boss health", () => {
    const problems = tampered((g) => {
      g.checkpoints[lastFrame(g)].bossHealth -= 1;
    });
    expect(problems.some((p) => p.includes("boss health"))).toBe(true);
  });

  it("flags a wrong spawner count", () => {
    const problems = tampered((g) => {
      (g.checkpoints[lastFrame(g)].spawners as number) += 1;
    });
    expect(problems.some((p) => p.includes("spawner count"))).toBe(true);
  });

  it("flags a drifted bullet state", () => {
    const golden = goldenDoc("sweeper_idle.json");
    const frames = Object.keys(golden.checkpoints).map(Number);
    const key = String(Math.max(...frames));
    const states = golden.checkpoints[key].bulletStates!;
    expect(states.length).toBeGreaterThan(0);
    states[0][0] += 1e-3;
    const problems = checkGolden(parseScript(golden.script as string), golden);
    expect(problems.some((p) => p.includes("bullet 0 diverged"))).toBe(true);
  });

  it("flags a wrong bullet color", () => {
    const golden = goldenDoc("sweeper_idle.json");
    const frames = Object.keys(golden.checkpoints).map(Number);
    const key = String(Math.max(...frames));
    golden.checkpoints[key].bulletStates![0][5] = 3;
    const problems = checkGolden(parseScript(golden.script as string), golden);
    expect(problems.some((p) => p.includes("diverged"))).toBe(true);
  });
});
