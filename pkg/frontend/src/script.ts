// Data model for a parsed boss level script.

import { ValueSampler, constant } from "./sampler.js";

export const STEP_BULLET = "bullet";
export const STEP_WAIT = "wait";

export const RESERVED_IDS = new Set([
  "bullet",
  "wait",
  "bullets",
  "spawners",
  "spawn",
  "clear",
]);

export const DEFAULT_PATTERN_TIME = 1;
export const DEFAULT_BULLET_RADIUS = 8.0;

export interface SpawnerDef {
  pattern: string[];
  patternTime: number;
  patternRepeat: number | null; // null = repeat forever
  spawnerAngle: ValueSampler;
  spawnerRadius: ValueSampler;
  spawnedNumber: ValueSampler;
  spawnedAngle: ValueSampler;
  spawnedSpeed: ValueSampler;
  bulletRadius: ValueSampler;
  bulletColor: ValueSampler;
}

export const SAMPLER_FIELDS = [
  "spawnerAngle",
  "spawnerRadius",
  "spawnedNumber",
  "spawnedAngle",
  "spawnedSpeed",
  "bulletRadius",
  "bulletColor",
] as const;

export type SamplerField = (typeof SAMPLER_FIELDS)[number];

export const defaultSpawner = (): SpawnerDef => ({
  pattern: [],
  patternTime: DEFAULT_PATTERN_TIME,
  patternRepeat: null,
  spawnerAngle: constant(0.0),
  spawnerRadius: constant(0.0),
  spawnedNumber: constant(1.0),
  spawnedAngle: constant(0.0),
  spawnedSpeed: constant(0.0),
  bulletRadius: constant(DEFAULT_BULLET_RADIUS),
  bulletColor: constant(0.0),
});

export type EventKind =
  | "spawn_ref"
  | "spawn_bullet"
  | "clear_ref"
  | "clear_bullets"
  | "clear_spawners";

export interface EventAction {
  kind: EventKind;
  ref: string | null;
  speed: number;
  angle: number;
}

export interface BossEvent {
  trigger: number; // health fraction in (0, 1]
  actions: EventAction[];
}

export interface BossDef {
  bossHealth: number;
  bossPosition: [number, number];
  script: BossEvent[];
}

export interface Script {
  spawners: Map<string, SpawnerDef>;
  boss: BossDef;
}

// Returns a list of diagnostics; empty means the script is valid.
export const validateScript = (script: Script): string[] => {
  const problems: string[] = [];
  if (script.spawners.size === 0) problems.push("script defines no spawners");
  for (const [sid, sdef] of script.spawners) {
    const where = `spawners.${sid}`;
    if (RESERVED_IDS.has(sid)) {
      problems.push(`${where}: '${sid}' is a reserved word`);
    }
    if (sdef.pattern.length === 0) {
      problems.push(`${where}.pattern: pattern is empty`);
    }
    sdef.pattern.forEach((step, i) => {
      if (step === STEP_BULLET || step === STEP_WAIT) return;
      if (!script.spawners.has(step)) {
        problems.push(`${where}.pattern[${i}]: unknown spawner reference '${step}'`);
      }
    });
    if (sdef.patternTime < 1) {
      problems.push(`${where}.patternTime: must be >= 1`);
    }
    if (sdef.patternRepeat !== null && sdef.patternRepeat < 1) {
      problems.push(`${where}.patternRepeat: must be >= 1 or infinite`);
    }
  }
  if (script.boss.bossHealth < 1) {
    problems.push("boss.bossHealth: must be >= 1");
  }
  script.boss.script.forEach((event, i) => {
    const where = `boss.script[${i}]`;
    if (!(0.0 < event.trigger && event.trigger <= 1.0)) {
      problems.push(`${where}.health: trigger ${event.trigger} outside (0, 1]`);
    }
    if (event.actions.length === 0) {
      problems.push(`${where}.events: no actions`);
    }
    event.actions.forEach((action, j) => {
      if (
        (action.kind === "spawn_ref" || action.kind === "clear_ref") &&
        !script.spawners.has(action.ref as string)
      ) {
        problems.push(`${where}.events[${j}]: unknown spawner reference '${action.ref}'`);
      }
    });
  });
  return problems;
};
