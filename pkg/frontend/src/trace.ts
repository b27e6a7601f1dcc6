// Play traces and golden conformance traces.
//
// A play trace records what one playthrough did (actions, outcome,
// per-frame metrics) in the same JSON shape the reference tools read, so
// a trace exported from the browser can be replayed, rendered, and scored
// by them.  A golden trace freezes checkpoint snapshots of a replay;
// checkGolden replays one here and reports every divergence from the
// portable checkpoint fields.  The stateHash field is an implementation
// detail of the reference engine (a digest of its in-memory layout) and
// is not comparable across runtimes, so it is ignored.

import { SimConfig, configFromDict } from "./config.js";
import { GameState, initState, stepFrame } from "./engine.js";
import { Script } from "./script.js";

export const TRACE_VERSION = 1;

export interface PlayTraceDoc {
  version: number;
  scriptHash: string | null;
  agent: Record<string, unknown> | null;
  actions: number[];
  framesSurvived: number;
  remainingBossHealth: number;
  died: boolean;
  framesWithAnyBullet: number;
  framesWithTenPlusBullets: number;
  maxLiveSpawnersSeen: number;
  perFrameRisk: number[];
  perFrameDistribution: number[];
}

export interface GoldenCheckpoint {
  bullets: number;
  player: [number, number];
  bossHealth: number;
  stateHash?: string;
  spawners?: number;
  bulletStates?: [number, number, number, number, number, number][];
}

export interface GoldenDoc {
  version: number;
  name: string | null;
  scriptHash: string;
  config: Record<string, unknown>;
  actions: number[];
  checkpoints: Record<string, GoldenCheckpoint>;
  script?: string;
}

// Step the actions from a fresh state, yielding after every frame.
export function* replay(
  script: Script,
  actions: number[],
  cfg?: SimConfig,
): Generator<GameState> {
  const state = initState(script, cfg);
  for (const action of actions) {
    stepFrame(state, action);
    yield state;
  }
}

export const finalState = (
  script: Script,
  actions: number[],
  cfg?: SimConfig,
): GameState => {
  const state = initState(script, cfg);
  for (const action of actions) stepFrame(state, action);
  return state;
};

// Replay a golden trace; return a list of divergence descriptions.
// Bullet/spawner counts and boss health must match exactly, positions
// within the tolerance.
export const checkGolden = (
  script: Script,
  golden: GoldenDoc,
  tolerance = 1e-6,
): string[] => {
  const problems: string[] = [];
  const cfg = configFromDict(golden.config);
  const checkpoints = new Map<number, GoldenCheckpoint>();
  for (const [key, value] of Object.entries(golden.checkpoints)) {
    checkpoints.set(Number(key), value);
  }
  for (const state of replay(script, golden.actions, cfg)) {
    const expected = checkpoints.get(state.frame);
    if (expected === undefined) continue;
    if (state.bullets.length !== expected.bullets) {
      problems.push(
        `frame ${state.frame}: bullet count ${state.bullets.length} != ${expected.bullets}`,
      );
    }
    const [ex, ey] = expected.player;
    if (Math.abs(state.playerX - ex) > tolerance || Math.abs(state.playerY - ey) > tolerance) {
      problems.push(`frame ${state.frame}: player position diverged`);
    }
    if (state.bossHealth !== expected.bossHealth) {
      problems.push(`frame ${state.frame}: boss health diverged`);
    }
    if (expected.spawners !== undefined && state.spawners.length !== expected.spawners) {
      problems.push(
        `frame ${state.frame}: spawner count ${state.spawners.length} != ${expected.spawners}`,
      );
    }
    if (expected.bulletStates !== undefined) {
      problems.push(...compareBullets(state, expected.bulletStates, tolerance));
    }
  }
  return problems;
};

const compareBullets = (
  state: GameState,
  expected: [number, number, number, number, number, number][],
  tolerance: number,
): string[] => {
  if (state.bullets.length !== expected.length) {
    return [`frame ${state.frame}: bullet state count diverged`];
  }
  const problems: string[] = [];
  state.bullets.forEach((b, i) => {
    const [x, y, vx, vy, radius, color] = expected[i];
    const close =
      Math.abs(b.x - x) <= tolerance &&
      Math.abs(b.y - y) <= tolerance &&
      Math.abs(b.vx - vx) <= tolerance &&
      Math.abs(b.vy - vy) <= tolerance &&
      Math.abs(b.radius - radius) <= tolerance;
    if (!close || b.color !== color) {
      problems.push(`frame ${state.frame}: bullet ${i} diverged`);
    }
  });
  return problems;
};
