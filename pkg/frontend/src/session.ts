// A play session: one level, one run, one trace.
//
// Human play reads the keyboard each frame; trace replay feeds back the
// recorded actions and never touches the keyboard. Tallies follow the
// reference play loop: a fatal action is not recorded (replaying the
// recorded actions survives exactly framesSurvived frames), remaining
// boss health is maxHealth - framesSurvived, and per-frame metrics are
// taken from the post-step world over the survived frames only.

import { SimConfig, cellHeight, cellWidth, defaultConfig } from "./config.js";
import { GameState, bulletCountGrid, initState, stepFrame } from "./engine.js";
import { InputState } from "./input.js";
import { ScriptError, parseScript } from "./parser.js";
import { Script } from "./script.js";
import { PlayTraceDoc, TRACE_VERSION } from "./trace.js";

export type SessionMode = "human" | "replay";
export type Outcome = "running" | "died" | "victory" | "replay-complete";

// Same as the reference risk metric: fraction of occupied cells in the
// 3x3 grid neighborhood around the player, clipped at the grid edge.
export const riskFromGrid = (
  grid: Int32Array,
  cfg: SimConfig,
  px: number,
  py: number,
): number => {
  const cols = cfg.gridCols;
  const rows = cfg.gridRows;
  const pc = Math.floor(px / cellWidth(cfg));
  const prow = Math.floor(py / cellHeight(cfg));
  const r0 = Math.max(0, prow - 1);
  const r1 = Math.min(rows - 1, prow + 1);
  const c0 = Math.max(0, pc - 1);
  const c1 = Math.min(cols - 1, pc + 1);
  let occupied = 0;
  for (let rr = r0; rr <= r1; rr++) {
    const base = rr * cols;
    for (let cc = c0; cc <= c1; cc++) {
      if (grid[base + cc] > 0) occupied += 1;
    }
  }
  return occupied / ((r1 - r0 + 1) * (c1 - c0 + 1));
};

export interface SessionOptions {
  cfg?: SimConfig;
  input?: InputState;
  replayActions?: number[];
}

export class PlaySession {
  readonly state: GameState;
  readonly input: InputState;
  outcome: Outcome = "running";
  recordedActions: number[] = [];
  framesWithAnyBullet = 0;
  framesWithTenPlusBullets = 0;
  maxLiveSpawnersSeen = 0;
  perFrameRisk: number[] = [];
  perFrameDistribution: number[] = [];
  private replayActions: number[];

  constructor(
    readonly script: Script,
    readonly mode: SessionMode,
    options: SessionOptions = {},
  ) {
    const cfg = options.cfg ?? defaultConfig();
    this.state = initState(script, cfg);
    this.input = options.input ?? new InputState();
    this.replayActions = options.replayActions ?? [];
    if (mode === "replay" && options.replayActions === undefined) {
      throw new Error("replay mode needs the actions to replay");
    }
  }

  get finished(): boolean {
    return this.outcome !== "running";
  }

  get framesSurvived(): number {
    return this.recordedActions.length;
  }

  // Advance one frame; returns false once the session is over.
  tick(): boolean {
    if (this.finished) return false;
    const frame = this.recordedActions.length;
    let action: number;
    if (this.mode === "replay") {
      if (frame >= this.replayActions.length) {
        this.outcome = "replay-complete";
        return false;
      }
      action = this.replayActions[frame];
    } else {
      action = this.input.action();
    }
    stepFrame(this.state, action);
    if (this.state.playerDead) {
      this.outcome = "died";
      return false;
    }
    this.recordedActions.push(action);
    this.tally();
    if (this.state.bossDead) {
      this.outcome = "victory";
    } else if (this.mode === "replay" && this.recordedActions.length >= this.replayActions.length) {
      this.outcome = "replay-complete";
    }
    return true;
  }

  private tally(): void {
    const state = this.state;
    const cfg = state.cfg;
    const count = state.bullets.length;
    if (count > 0) this.framesWithAnyBullet += 1;
    if (count >= 10) this.framesWithTenPlusBullets += 1;
    this.maxLiveSpawnersSeen = Math.max(this.maxLiveSpawnersSeen, state.spawners.length);
    const grid = bulletCountGrid(state, cfg);
    this.perFrameRisk.push(riskFromGrid(grid, cfg, state.playerX, state.playerY));
    let occupied = 0;
    for (const cell of grid) if (cell > 0) occupied += 1;
    this.perFrameDistribution.push(occupied / (cfg.gridCols * cfg.gridRows));
  }

  exportTrace(): PlayTraceDoc {
    return {
      version: TRACE_VERSION,
      scriptHash: null,
      agent: null,
      actions: [...this.recordedActions],
      framesSurvived: this.framesSurvived,
      remainingBossHealth: this.state.bossHealthMax - this.framesSurvived,
      died: this.outcome === "died",
      framesWithAnyBullet: this.framesWithAnyBullet,
      framesWithTenPlusBullets: this.framesWithTenPlusBullets,
      maxLiveSpawnersSeen: this.maxLiveSpawnersSeen,
      perFrameRisk: [...this.perFrameRisk],
      perFrameDistribution: [...this.perFrameDistribution],
    };
  }
}

export type LoadResult =
  | { ok: true; session: PlaySession }
  | { ok: false; errors: string[] };

export const loadLevel = (
  scriptText: string,
  mode: SessionMode,
  options: SessionOptions = {},
): LoadResult => {
  try {
    const script = parseScript(scriptText);
    return { ok: true, session: new PlaySession(script, mode, options) };
  } catch (e) {
    if (e instanceof ScriptError) return { ok: false, errors: e.diagnostics };
    throw e;
  }
};
