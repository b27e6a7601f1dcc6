import { describe, expect, it } from "vitest";

import { ScriptError, buildScript, parseScript } from "../src/parser.js";
import { readDocument } from "../src/reader.js";
import { demoScriptText } from "./helpers.js";

const MINIMAL = `
{
  spawners: { s: { pattern: [bullet] } }
  boss: {
    bossHealth: 100
    bossPosition: "0.5, 0.2"
    script: [ { health: 1 events: [ "spawn, s" ] } ]
  }
}
`;

const problemsOf = (text: string): string[] => {
  const [script, problems] = buildScript(readDocument(text));
  expect(script).toBeNull();
  return problems;
};

describe("demo script", () => {
  const script = parseScript(demoScriptText());

  it("has the expected structure", () => {
    expect([...script.spawners.keys()].sort()).toEqual(["one", "three", "two"]);
    expect(script.boss.bossHealth).toBe(3000);
    expect(script.boss.bossPosition).toEqual([0.5, 0.2]);
  });

  it("parses the boss events", () => {
    expect(script.boss.script.map((e) => e.trigger)).toEqual([1.0, 0.5]);
    const [first, second] = script.boss.script;
    expect(first.actions.map((a) => [a.kind, a.ref])).toEqual([["spawn_ref", "one"]]);
    expect(second.actions.map((a) => [a.kind, a.ref])).toEqual([
      ["clear_spawners", null],
      ["spawn_ref", "three"],
    ]);
  });

  it("parses the spawner fields", () => {
    const one = script.spawners.get("one")!;
    expect(one.pattern).toEqual(["two"]);
    expect(one.patternTime).toBe(4);
    expect(one.spawnerAngle.wrap).toBe("circle");
    expect([one.spawnerAngle.rate, one.spawnerAngle.interval]).toEqual([10, 12]);
    const three = script.spawners.get("three")!;
    expect(three.spawnerAngle.wrap).toBe("inverse");
    expect(three.spawnerAngle.interval).toBe(1); // "0" in the source normalizes to 1
  });

  it("fills defaults in", () => {
    const two = script.spawners.get("two")!;
    expect(two.patternTime).toBe(1);
    expect(two.patternRepeat).toBe(1);
    expect(two.bulletRadius.current).toBe(8);
    expect(script.spawners.get("one")!.patternRepeat).toBeNull(); // infinite
  });
});

describe("relaxed syntax", () => {
  it("parses the minimal script", () => {
    const script = parseScript(MINIMAL);
    expect([...script.spawners.keys()]).toEqual(["s"]);
    expect(script.boss.bossHealth).toBe(100);
    expect(script.spawners.get("s")!.spawnedNumber.current).toBe(1);
  });

  it("ignores whitespace and trailing commas", () => {
    let dense = MINIMAL.replace(/\n/g, " ");
    dense = dense.replace("] }", "], },").replace("100", "100,");
    const a = parseScript(dense);
    const b = parseScript(MINIMAL);
    expect(a.boss).toEqual(b.boss);
    expect(a.spawners.get("s")).toEqual(b.spawners.get("s"));
  });

  it("accepts comments and quoting styles", () => {
    const text = `
    // line comment
    {
      spawners: { "s": { pattern: ["bullet"], bulletRadius: 6 } },
      # hash comment
      boss: {
        bossHealth: 100,
        bossPosition: "0.25, 0.1",
        script: [ { health: 1.0, events: ["spawn,s"] } ],
      },
    }
    `;
    const script = parseScript(text);
    expect(script.spawners.get("s")!.bulletRadius.current).toBe(6);
    expect(script.boss.bossPosition).toEqual([0.25, 0.1]);
  });

  it("tolerates a missing comma between objects", () => {
    const text = MINIMAL.replace(
      "s: { pattern: [bullet] }",
      's: { pattern: [bullet] }\n t: { pattern: ["s"] }',
    );
    const script = parseScript(text);
    expect([...script.spawners.keys()].sort()).toEqual(["s", "t"]);
  });
});

describe("diagnostics", () => {
  it("flags a dangling event reference", () => {
    const problems = problemsOf(MINIMAL.replace("spawn, s", "spawn, ghost"));
    expect(problems.some((p) => p.includes("ghost"))).toBe(true);
  });

  it("flags a dangling pattern reference", () => {
    const problems = problemsOf(MINIMAL.replace("[bullet]", "[bullet, missing]"));
    expect(problems.some((p) => p.includes("missing") && p.includes("pattern"))).toBe(true);
  });

  it("reports syntax error positions", () => {
    let diagnostics: string[] = [];
    try {
      parseScript("{ spawners { s { pattern [bullet }");
    } catch (e) {
      diagnostics = (e as ScriptError).diagnostics;
    }
    expect(diagnostics[0]).toMatch(/syntax error at \d+:\d+/);
  });

  it("flags a trigger out of range", () => {
    for (const bad of ["health: 1.5 ", "health: 0 "]) {
      const problems = problemsOf(MINIMAL.replace("health: 1 ", bad));
      expect(problems.some((p) => p.includes("trigger"))).toBe(true);
    }
  });

  it("flags an empty pattern", () => {
    const problems = problemsOf(MINIMAL.replace("pattern: [bullet]", "pattern: []"));
    expect(problems.some((p) => p.includes("pattern"))).toBe(true);
  });

  it("names the bad sampler field", () => {
    const text = MINIMAL.replace("pattern: [bullet]", 'pattern: [bullet] spawnedSpeed: "9,1"');
    const problems = problemsOf(text);
    expect(problems.some((p) => p.includes("spawners.s.spawnedSpeed"))).toBe(true);
  });

  it("flags a missing boss health", () => {
    const problems = problemsOf(MINIMAL.replace("bossHealth: 100", ""));
    expect(problems.some((p) => p.includes("bossHealth"))).toBe(true);
  });

  it("rejects a fractional integer field", () => {
    const problems = problemsOf(MINIMAL.replace("bossHealth: 100", 'bossHealth: "3.5"'));
    expect(problems.some((p) => p.includes("bossHealth"))).toBe(true);
  });
});
