// Shared fixtures: the golden corpus shipped with the reference
// implementation and a seeded RNG so tests stay reproducible.

import { readFileSync, readdirSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { GoldenDoc } from "../src/trace.js";

export const TRACES_DIR = fileURLToPath(
  new URL("../../goldens/traces", import.meta.url),
);

export const goldenNames = (): string[] =>
  readdirSync(TRACES_DIR)
    .filter((name) => name.endsWith(".json"))
    .sort();

export const goldenDoc = (name: string): GoldenDoc =>
  JSON.parse(readFileSync(join(TRACES_DIR, name), "utf8")) as GoldenDoc;

export const demoScriptText = (): string => goldenDoc("demo_idle.json").script as string;

// mulberry32: small deterministic PRNG for property-style sweeps
export const seededRng = (seed: number): (() => number) => {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
};

export const randInt = (rng: () => number, lo: number, hi: number): number =>
  lo + Math.floor(rng() * (hi - lo));
