import { describe, expect, it } from "vitest";

import { SamplerError, ValueSampler, constant, parseSampler } from "../src/sampler.js";
import { randInt, seededRng } from "./helpers.js";

// independent stepping model used to derive expected values
const oracleStep = (
  lo: number,
  hi: number,
  rate: number,
  interval: number,
  wrap: "circle" | "inverse",
  current: number,
  counter: number,
  n: number,
): [number, number] => {
  for (let i = 0; i < n; i++) {
    counter += 1;
    if (counter % interval !== 0) continue;
    const span = hi - lo;
    if (span <= 0) {
      current = lo;
      continue;
    }
    let value = current + rate;
    if (wrap === "circle") {
      let wrapped = (value - lo) % span;
      if (wrapped < 0) wrapped += span;
      current = lo + wrapped;
    } else {
      while (value > hi || value < lo) {
        if (value > hi) value = 2 * hi - value;
        else value = 2 * lo - value;
        rate = -rate;
      }
      current = value;
    }
  }
  return [current, rate];
};

describe("parse", () => {
  it("accepts the full five-field form", () => {
    const s = parseSampler("0,360,10,12,circle");
    expect([s.minValue, s.maxValue, s.rate, s.interval]).toEqual([0, 360, 10, 12]);
    expect(s.wrap).toBe("circle");
    expect(s.current).toBe(0);
  });

  it("treats a single field as a constant", () => {
    const s = parseSampler("4");
    expect(s.minValue).toBe(4);
    expect(s.maxValue).toBe(4);
    expect(s.current).toBe(4);
    expect(s.rate).toBe(0);
  });

  it("accepts the reverse keyword and a zero interval", () => {
    const s = parseSampler("0,180,2,0,reverse");
    expect(s.wrap).toBe("inverse");
    expect(s.interval).toBe(1);
    expect([s.minValue, s.maxValue, s.rate]).toEqual([0, 180, 2]);
  });

  it("accepts the two-field form", () => {
    const s = parseSampler("3,9");
    expect([s.minValue, s.maxValue, s.rate]).toEqual([3, 9, 0]);
  });

  it.each(["a,b", "5,1", "0,10,1,2,zigzag", "", "1,2,3,4,5,6", "0,10,1,1.5"])(
    "rejects %j",
    (bad) => {
      expect(() => parseSampler(bad)).toThrow(SamplerError);
    },
  );
});

describe("step", () => {
  it("applies the rate only on the interval (circle)", () => {
    const s = parseSampler("0,360,10,12,circle");
    for (let i = 0; i < 11; i++) {
      s.step();
      expect(s.current).toBe(0);
    }
    s.step();
    expect(s.current).toBe(10);
  });

  it("reflects and negates the rate (inverse)", () => {
    const s = parseSampler("0,180,2,1,inverse");
    const [expected, expectedRate] = oracleStep(0, 180, 2, 1, "inverse", 0, 0, 91);
    for (let i = 0; i < 91; i++) s.step();
    expect(s.current).toBe(expected);
    expect(s.current).toBe(178);
    expect(s.rate).toBe(expectedRate);
    expect(s.rate).toBe(-2);
  });

  it("keeps a constant still", () => {
    const s = parseSampler("7");
    for (let i = 0; i < 1000; i++) s.step();
    expect(s.current).toBe(7);
  });

  it("is periodic under inverse wrap", () => {
    const s = parseSampler("0,180,2,1,inverse");
    const period = (2 * 180) / (2 / 1);
    const seen: number[] = [];
    for (let i = 0; i < 3 * period; i++) {
      seen.push(s.value);
      s.step();
    }
    expect(seen.slice(0, period)).toEqual(seen.slice(period, 2 * period));
    expect(seen.slice(period, 2 * period)).toEqual(seen.slice(2 * period));
  });

  it("stays confined over long runs", () => {
    const circle = parseSampler("10,47,3.7,2,circle");
    const inverse = parseSampler("-5,12,1.3,3,inverse");
    for (let i = 0; i < 100_000; i++) {
      circle.step();
      inverse.step();
      expect(circle.value).toBeGreaterThanOrEqual(10);
      expect(circle.value).toBeLessThan(47);
      expect(inverse.value).toBeGreaterThanOrEqual(-5);
      expect(inverse.value).toBeLessThanOrEqual(12);
    }
  });

  it("matches the oracle across seeded parameter sweeps", () => {
    const rng = seededRng(7);
    for (let round = 0; round < 200; round++) {
      const lo = rng() * 200 - 100;
      const span = rng() * 200;
      const rate = rng() * 100 - 50;
      const interval = randInt(rng, 1, 21);
      const wrap = rng() < 0.5 ? "circle" : "inverse";
      const n = randInt(rng, 0, 500);
      const s = new ValueSampler(lo, lo + span, rate, interval, wrap);
      for (let i = 0; i < n; i++) s.step();
      if (span === 0) {
        expect(s.current).toBe(lo);
      } else if (wrap === "circle") {
        expect(s.value).toBeGreaterThanOrEqual(lo);
        expect(s.value).toBeLessThan(lo + span);
      } else {
        expect(s.value).toBeGreaterThanOrEqual(lo);
        expect(s.value).toBeLessThanOrEqual(lo + span);
      }
    }
  });
});

describe("copy and shift", () => {
  it("copies independently", () => {
    const s = parseSampler("0,10,3,1,circle");
    const out = s.copy();
    out.step();
    expect(s.current).toBe(0);
    expect(s.frameCounter).toBe(0);
    expect(out.current).toBe(3);
    expect(out.frameCounter).toBe(1);
  });

  it("shift translates the whole window", () => {
    const s = parseSampler("-10,10,5,1,circle"); // current starts at min
    s.shift(90);
    expect([s.minValue, s.maxValue, s.current]).toEqual([80, 100, 80]);
    s.step();
    expect(s.current).toBe(85);
  });

  it("rejects an inverted window", () => {
    expect(() => new ValueSampler(5, 1)).toThrow(SamplerError);
    expect(constant(5).value).toBe(5);
  });
});
