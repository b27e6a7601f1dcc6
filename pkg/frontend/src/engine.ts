// Bullet-hell engine: a faithful port of the reference frame-step
// contract, phase for phase:
//
//   1. boss health decreases by 1 (every frame, whatever the player does)
//   2. each pending boss event whose trigger >= health/maxHealth fires
//      once, in script order
//   3. spawners created before this frame act, in creation order: every
//      patternTime-th visit executes the current pattern step and the
//      pattern index then advances; all seven samplers advance per visit
//   4. bullets and spawners translate by velocity; bullets fully outside
//      the screen and spawners that finished their repeats are removed
//   5. the player translates by the action velocity, clamped to the screen
//   6. flags: strict circle overlap kills the player (taking precedence
//      over bossDead on the same frame); health 0 sets bossDead; a live
//      spawner count above maxLiveSpawners sets the sticky overflow flag,
//      which suppresses spawner creation from the next attempt on
//
// Entities created during a frame do not act in that frame's phase 3, and
// a child spawner's angle sampler window is shifted by its assigned spawn
// angle so the whole pattern aims along the child's direction.

import {
  MAX_LIVE_BULLETS,
  MAX_SPAWN_BATCH,
  SimConfig,
  actionVelocity,
  cellHeight,
  cellWidth,
  defaultConfig,
  direction,
  playerStartPx,
} from "./config.js";
import { ValueSampler } from "./sampler.js";
import {
  DEFAULT_BULLET_RADIUS,
  EventAction,
  SAMPLER_FIELDS,
  STEP_WAIT,
  Script,
  SpawnerDef,
} from "./script.js";

export const PALETTE_SIZE = 6;

export class Bullet {
  constructor(
    public x: number,
    public y: number,
    public vx: number,
    public vy: number,
    public radius: number,
    public color: number,
  ) {}
}

export class SpawnerEntity {
  patternIndex = 0;
  repeatsDone = 0;
  stepTimer = 0;
  spawnerAngle: ValueSampler;
  spawnerRadius: ValueSampler;
  spawnedNumber: ValueSampler;
  spawnedAngle: ValueSampler;
  spawnedSpeed: ValueSampler;
  bulletRadius: ValueSampler;
  bulletColor: ValueSampler;

  constructor(
    public sid: string,
    public sdef: SpawnerDef,
    public x: number,
    public y: number,
    public vx: number,
    public vy: number,
    public born: number,
  ) {
    this.spawnerAngle = sdef.spawnerAngle.copy();
    this.spawnerRadius = sdef.spawnerRadius.copy();
    this.spawnedNumber = sdef.spawnedNumber.copy();
    this.spawnedAngle = sdef.spawnedAngle.copy();
    this.spawnedSpeed = sdef.spawnedSpeed.copy();
    this.bulletRadius = sdef.bulletRadius.copy();
    this.bulletColor = sdef.bulletColor.copy();
  }

  get expired(): boolean {
    const repeat = this.sdef.patternRepeat;
    return repeat !== null && this.repeatsDone >= repeat;
  }

  samplers(): ValueSampler[] {
    return SAMPLER_FIELDS.map((name) => this[name]);
  }
}

export interface GameState {
  script: Script;
  cfg: SimConfig;
  frame: number;
  playerX: number;
  playerY: number;
  bossHealth: number;
  bossHealthMax: number;
  bossX: number;
  bossY: number;
  bullets: Bullet[];
  spawners: SpawnerEntity[];
  pendingEvents: number[];
  playerDead: boolean;
  bossDead: boolean;
  spawnerOverflow: boolean;
}

export const isTerminal = (state: GameState): boolean =>
  state.playerDead || state.bossDead;

export const initState = (script: Script, cfg?: SimConfig): GameState => {
  const config = cfg ?? defaultConfig();
  const [px, py] = playerStartPx(config);
  const [bx, by] = script.boss.bossPosition;
  return {
    script,
    cfg: config,
    frame: 0,
    playerX: px,
    playerY: py,
    bossHealth: script.boss.bossHealth,
    bossHealthMax: script.boss.bossHealth,
    bossX: bx * config.screenWidth,
    bossY: by * config.screenHeight,
    bullets: [],
    spawners: [],
    pendingEvents: script.boss.script.map((_, i) => i),
    playerDead: false,
    bossDead: false,
    spawnerOverflow: false,
  };
};

// advance one frame in place (see module comment for phase order)
export const stepFrame = (state: GameState, action: number): GameState => {
  if (isTerminal(state)) throw new Error("cannot step a terminal state");
  const cfg = state.cfg;
  state.frame += 1;

  // 1. health
  state.bossHealth -= 1;

  // 2. boss events
  if (state.pendingEvents.length > 0) {
    const fraction = state.bossHealth / state.bossHealthMax;
    const stillPending: number[] = [];
    for (const index of state.pendingEvents) {
      const event = state.script.boss.script[index];
      if (event.trigger >= fraction) {
        fireEvent(state, event.actions);
      } else {
        stillPending.push(index);
      }
    }
    state.pendingEvents = stillPending;
  }

  // 3. spawner execution (only entities born before this frame)
  for (const sp of [...state.spawners]) {
    if (sp.born >= state.frame) continue;
    sp.stepTimer += 1;
    if (sp.stepTimer >= sp.sdef.patternTime) {
      sp.stepTimer = 0;
      executePatternStep(state, sp);
    }
    for (const sampler of sp.samplers()) sampler.step();
  }

  // 4. motion and removal
  for (const b of state.bullets) {
    b.x += b.vx;
    b.y += b.vy;
  }
  const width = cfg.screenWidth;
  const height = cfg.screenHeight;
  state.bullets = state.bullets.filter(
    (b) =>
      b.x + b.radius >= 0 &&
      b.x - b.radius <= width &&
      b.y + b.radius >= 0 &&
      b.y - b.radius <= height,
  );
  for (const sp of state.spawners) {
    sp.x += sp.vx;
    sp.y += sp.vy;
  }
  state.spawners = state.spawners.filter((sp) => !sp.expired);

  // 5. player motion
  const [vx, vy] = actionVelocity(cfg, action);
  const r = cfg.playerRadius;
  state.playerX = Math.min(Math.max(state.playerX + vx, r), width - r);
  state.playerY = Math.min(Math.max(state.playerY + vy, r), height - r);

  // 6. flags
  const px = state.playerX;
  const py = state.playerY;
  for (const b of state.bullets) {
    const reach = r + b.radius;
    const dx = b.x - px;
    const dy = b.y - py;
    if (dx * dx + dy * dy < reach * reach) {
      state.playerDead = true;
      break;
    }
  }
  if (!state.playerDead && state.bossHealth <= 0) {
    state.bossDead = true;
  }
  if (state.spawners.length > cfg.maxLiveSpawners) {
    state.spawnerOverflow = true;
  }
  return state;
};

const fireEvent = (state: GameState, actions: EventAction[]): void => {
  for (const action of actions) {
    switch (action.kind) {
      case "spawn_ref":
        spawnChild(state, action.ref as string, state.bossX, state.bossY, action.angle, action.speed);
        break;
      case "spawn_bullet":
        spawnBullet(state, state.bossX, state.bossY, action.angle, action.speed, DEFAULT_BULLET_RADIUS, 0);
        break;
      case "clear_ref":
        state.spawners = state.spawners.filter((sp) => sp.sid !== action.ref);
        break;
      case "clear_bullets":
        state.bullets = [];
        break;
      case "clear_spawners":
        state.spawners = [];
        break;
    }
  }
};

const executePatternStep = (state: GameState, sp: SpawnerEntity): void => {
  const patternStep = sp.sdef.pattern[sp.patternIndex];
  if (patternStep !== STEP_WAIT) {
    let count = roundHalfUp(sp.spawnedNumber.value);
    count = Math.min(count, MAX_SPAWN_BATCH);
    const offset = sp.spawnerRadius.value;
    const speed = sp.spawnedSpeed.value;
    for (const angle of arcAngles(sp.spawnerAngle.value, sp.spawnedAngle.value, count)) {
      const [ux, uy] = direction(angle);
      const x = sp.x + offset * ux;
      const y = sp.y + offset * uy;
      if (patternStep === "bullet") {
        const color = Math.min(Math.max(roundHalfUp(sp.bulletColor.value), 0), PALETTE_SIZE - 1);
        if (state.bullets.length < MAX_LIVE_BULLETS) {
          state.bullets.push(new Bullet(x, y, speed * ux, speed * uy, sp.bulletRadius.value, color));
        }
      } else {
        makeSpawner(state, patternStep, x, y, speed * ux, speed * uy, angle);
      }
    }
  }
  sp.patternIndex += 1;
  if (sp.patternIndex >= sp.sdef.pattern.length) {
    sp.patternIndex = 0;
    sp.repeatsDone += 1;
  }
};

const spawnChild = (
  state: GameState,
  sid: string,
  x: number,
  y: number,
  angle: number,
  speed: number,
): void => {
  const [ux, uy] = direction(angle);
  makeSpawner(state, sid, x, y, speed * ux, speed * uy, angle);
};

const makeSpawner = (
  state: GameState,
  sid: string,
  x: number,
  y: number,
  vx: number,
  vy: number,
  angle: number,
): void => {
  if (state.spawnerOverflow) return;
  const sdef = state.script.spawners.get(sid) as SpawnerDef;
  const entity = new SpawnerEntity(sid, sdef, x, y, vx, vy, state.frame);
  if (angle !== 0.0) entity.spawnerAngle.shift(angle);
  state.spawners.push(entity);
};

const spawnBullet = (
  state: GameState,
  x: number,
  y: number,
  angle: number,
  speed: number,
  radius: number,
  color: number,
): void => {
  if (state.bullets.length >= MAX_LIVE_BULLETS) return;
  const [ux, uy] = direction(angle);
  state.bullets.push(new Bullet(x, y, speed * ux, speed * uy, radius, color));
};

// Headings of n children spread over an arc centered on `center`: full
// circles space children 360/n apart starting at the center so the
// endpoint is not doubled; narrower arcs center each child in its slot.
export const arcAngles = (center: number, arc: number, n: number): number[] => {
  if (n <= 0) return [];
  if (arc >= 360.0) {
    return Array.from({ length: n }, (_, i) => center + (360.0 * i) / n);
  }
  const start = center - arc / 2.0;
  return Array.from({ length: n }, (_, i) => start + (arc * (i + 0.5)) / n);
};

export const roundHalfUp = (x: number): number => Math.floor(x + 0.5);

// per-cell bullet-center counts (row-major rows x cols); off-grid centers
// are excluded
export const bulletCountGrid = (state: GameState, cfg?: SimConfig): Int32Array => {
  const config = cfg ?? state.cfg;
  const grid = new Int32Array(config.gridRows * config.gridCols);
  const cw = cellWidth(config);
  const ch = cellHeight(config);
  for (const b of state.bullets) {
    const col = Math.floor(b.x / cw);
    const row = Math.floor(b.y / ch);
    if (col >= 0 && col < config.gridCols && row >= 0 && row < config.gridRows) {
      grid[row * config.gridCols + col] += 1;
    }
  }
  return grid;
};
