// Turn a structured-text document into a validated Script.

import { DocValue, SyntaxDiagnostic, readDocument } from "./reader.js";
import { SamplerError, ValueSampler, constant, parseSampler } from "./sampler.js";
import {
  BossDef,
  BossEvent,
  DEFAULT_BULLET_RADIUS,
  EventAction,
  Script,
  SpawnerDef,
  validateScript,
} from "./script.js";

export class ScriptError extends Error {
  constructor(public diagnostics: string[]) {
    super(diagnostics.join("; "));
  }
}

type Doc = { [key: string]: DocValue };

const isObject = (v: DocValue | undefined): v is Doc =>
  typeof v === "object" && v !== null && !Array.isArray(v);

export const parseScript = (text: string): Script => {
  let doc: DocValue;
  try {
    doc = readDocument(text);
  } catch (e) {
    if (e instanceof SyntaxDiagnostic) {
      throw new ScriptError([`syntax error at ${e.line}:${e.col}: ${e.message.split(": ").slice(1).join(": ")}`]);
    }
    throw e;
  }
  const [script, problems] = buildScript(doc);
  if (problems.length > 0 || script === null) throw new ScriptError(problems);
  return script;
};

export const buildScript = (doc: DocValue): [Script | null, string[]] => {
  const problems: string[] = [];
  if (!isObject(doc)) return [null, ["document root must be an object"]];

  const spawners = new Map<string, SpawnerDef>();
  let rawSpawners = doc["spawners"];
  if (!isObject(rawSpawners)) {
    problems.push("spawners: missing or not an object");
    rawSpawners = {};
  }
  for (const [sid, raw] of Object.entries(rawSpawners)) {
    const sdef = buildSpawner(sid, raw, problems);
    if (sdef !== null) spawners.set(sid, sdef);
  }

  const rawBoss = doc["boss"];
  let boss: BossDef;
  if (!isObject(rawBoss)) {
    problems.push("boss: missing or not an object");
    boss = { bossHealth: 1, bossPosition: [0.5, 0.2], script: [] };
  } else {
    boss = buildBoss(rawBoss, problems);
  }

  if (problems.length > 0) return [null, problems];
  const script: Script = { spawners, boss };
  const issues = validateScript(script);
  if (issues.length > 0) return [null, issues];
  return [script, []];
};

const buildSpawner = (sid: string, raw: DocValue, problems: string[]): SpawnerDef | null => {
  const where = `spawners.${sid}`;
  if (!isObject(raw)) {
    problems.push(`${where}: not an object`);
    return null;
  }
  let pattern = raw["pattern"];
  if (!Array.isArray(pattern) || !pattern.every((p) => typeof p === "string")) {
    problems.push(`${where}.pattern: must be an array of step names`);
    pattern = [];
  }
  const patternTime = intField(raw, "patternTime", 1, where, problems);
  const patternRepeat = repeatField(raw, where, problems);

  return {
    pattern: [...(pattern as string[])],
    patternTime,
    patternRepeat,
    spawnerAngle: samplerField(raw, "spawnerAngle", 0.0, where, problems),
    spawnerRadius: samplerField(raw, "spawnerRadius", 0.0, where, problems),
    spawnedNumber: samplerField(raw, "spawnedNumber", 1.0, where, problems),
    spawnedAngle: samplerField(raw, "spawnedAngle", 0.0, where, problems),
    spawnedSpeed: samplerField(raw, "spawnedSpeed", 0.0, where, problems),
    bulletRadius: samplerField(raw, "bulletRadius", DEFAULT_BULLET_RADIUS, where, problems),
    bulletColor: samplerField(raw, "bulletColor", 0.0, where, problems),
  };
};

const buildBoss = (raw: Doc, problems: string[]): BossDef => {
  const rawHealth = raw["bossHealth"] ?? 0;
  let health = toInt(rawHealth);
  if (health === null) {
    problems.push("boss.bossHealth: not an integer");
    health = 0;
  }

  let position: [number, number] = [0.5, 0.2];
  const rawPos = raw["bossPosition"];
  if (rawPos !== undefined) {
    const parsed = parsePosition(rawPos);
    if (parsed === null) {
      problems.push("boss.bossPosition: expected two comma-separated fractions");
    } else if (
      !(0.0 <= parsed[0] && parsed[0] <= 1.0 && 0.0 <= parsed[1] && parsed[1] <= 1.0)
    ) {
      position = parsed;
      problems.push("boss.bossPosition: fractions must be within [0, 1]");
    } else {
      position = parsed;
    }
  }

  const events: BossEvent[] = [];
  let rawScript = raw["script"] ?? [];
  if (!Array.isArray(rawScript)) {
    problems.push("boss.script: must be an array");
    rawScript = [];
  }
  (rawScript as DocValue[]).forEach((rawEvent, i) => {
    const where = `boss.script[${i}]`;
    if (!isObject(rawEvent)) {
      problems.push(`${where}: not an object`);
      return;
    }
    let trigger = toFloat(rawEvent["health"]);
    if (trigger === null) {
      problems.push(`${where}.health: missing or non-numeric trigger`);
      trigger = 0.0;
    }
    const actions: EventAction[] = [];
    let rawActions = rawEvent["events"] ?? [];
    if (!Array.isArray(rawActions)) {
      problems.push(`${where}.events: must be an array`);
      rawActions = [];
    }
    (rawActions as DocValue[]).forEach((rawAction, j) => {
      const action = parseAction(String(rawAction), `${where}.events[${j}]`, problems);
      if (action !== null) actions.push(action);
    });
    events.push({ trigger, actions });
  });
  return { bossHealth: health, bossPosition: position, script: events };
};

const parseAction = (text: string, where: string, problems: string[]): EventAction | null => {
  const parts = text.split(",").map((p) => p.trim());
  if (parts.length === 0) {
    problems.push(`${where}: empty action`);
    return null;
  }
  const verb = parts[0].toLowerCase();
  if (verb === "spawn") {
    if (parts.length < 2) {
      problems.push(`${where}: spawn needs a target`);
      return null;
    }
    const target = parts[1];
    let speed = 0.0;
    let angle = 0.0;
    if (parts.length >= 3) {
      const s = toFloat(parts[2]);
      const a = parts.length >= 4 ? toFloat(parts[3]) : 0.0;
      if (s === null || a === null) {
        problems.push(`${where}: non-numeric spawn speed/angle`);
        return null;
      }
      speed = s;
      angle = a;
    }
    if (parts.length > 4) {
      problems.push(`${where}: too many spawn fields`);
      return null;
    }
    if (target === "bullet") {
      return { kind: "spawn_bullet", ref: null, speed, angle };
    }
    return { kind: "spawn_ref", ref: target, speed, angle };
  }
  if (verb === "clear") {
    if (parts.length !== 2) {
      problems.push(`${where}: clear takes exactly one target`);
      return null;
    }
    const target = parts[1];
    if (target === "bullets") return { kind: "clear_bullets", ref: null, speed: 0, angle: 0 };
    if (target === "spawners") return { kind: "clear_spawners", ref: null, speed: 0, angle: 0 };
    return { kind: "clear_ref", ref: target, speed: 0, angle: 0 };
  }
  problems.push(`${where}: unknown action verb '${parts[0]}'`);
  return null;
};

const toFloat = (value: DocValue | undefined): number | null => {
  if (typeof value === "number") return value;
  if (typeof value === "string" && value.trim() !== "") {
    const parsed = Number(value);
    if (!Number.isNaN(parsed)) return parsed;
  }
  return null;
};

const toInt = (value: DocValue | undefined): number | null => {
  if (typeof value === "number") return Math.trunc(value);
  if (typeof value === "string" && /^[+-]?\d+$/.test(value.trim())) {
    return parseInt(value.trim(), 10);
  }
  return null;
};

const parsePosition = (raw: DocValue): [number, number] | null => {
  let parts: (number | null)[];
  if (typeof raw === "string") {
    parts = raw.split(",").map((p) => toFloat(p));
  } else if (Array.isArray(raw)) {
    parts = raw.map((p) => toFloat(p));
  } else {
    return null;
  }
  if (parts.length !== 2 || parts[0] === null || parts[1] === null) return null;
  return [parts[0], parts[1]];
};

const intField = (
  raw: Doc,
  key: string,
  fallback: number,
  where: string,
  problems: string[],
): number => {
  const value = raw[key];
  if (value === undefined) return fallback;
  const parsed = toInt(value);
  if (parsed === null) {
    problems.push(`${where}.${key}: not an integer`);
    return fallback;
  }
  return parsed;
};

const repeatField = (raw: Doc, where: string, problems: string[]): number | null => {
  const value = raw["patternRepeat"];
  if (value === undefined) return null;
  if (typeof value === "string" && ["infinite", "inf"].includes(value.trim().toLowerCase())) {
    return null;
  }
  const parsed = toInt(value);
  if (parsed === null) {
    problems.push(`${where}.patternRepeat: expected an integer or 'infinite'`);
    return null;
  }
  return parsed;
};

const samplerField = (
  raw: Doc,
  key: string,
  fallback: number,
  where: string,
  problems: string[],
): ValueSampler => {
  const value = raw[key];
  if (value === undefined) return constant(fallback);
  try {
    if (typeof value === "number") return constant(value);
    return parseSampler(String(value));
  } catch (e) {
    if (e instanceof SamplerError) {
      problems.push(`${where}.${key}: ${e.message}`);
      return constant(fallback);
    }
    throw e;
  }
};
