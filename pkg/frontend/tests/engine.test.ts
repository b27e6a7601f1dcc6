import { describe, expect, it } from "vitest";

import { defaultConfig } from "../src/config.js";
import {
  Bullet,
  GameState,
  arcAngles,
  bulletCountGrid,
  initState,
  isTerminal,
  roundHalfUp,
  stepFrame,
} from "../src/engine.js";
import { parseScript } from "../src/parser.js";
import { demoScriptText, randInt, seededRng } from "./helpers.js";

const WAIT_ONLY = `
{
  spawners: { calm: { pattern: [wait] } }
  boss: {
    bossHealth: 300
    bossPosition: "0.5, 0.2"
    script: [ { health: 1, events: ["spawn, calm"] } ]
  }
}
`;

// every spawner clones itself twice per frame: live count = 3^(frame-1)
const RECURSIVE = `
{
  spawners: { s: { pattern: ["s"], spawnedNumber: 2, spawnedAngle: 360 } }
  boss: {
    bossHealth: 500
    bossPosition: "0.5, 0.2"
    script: [ { health: 1, events: ["spawn, s"] } ]
  }
}
`;

// world evolution is player-independent; ignore player deaths while
// probing deep frames with an idle player
const worldStep = (state: GameState, n = 1): GameState => {
  for (let i = 0; i < n; i++) {
    stepFrame(state, 0);
    state.playerDead = false;
  }
  return state;
};

const degrees = (vx: number, vy: number): number => (Math.atan2(vx, vy) * 180.0) / Math.PI;

describe("init", () => {
  it("anchors entities and health", () => {
    const state = initState(parseScript(demoScriptText()));
    expect(state.bossHealth).toBe(3000);
    expect(state.bossHealthMax).toBe(3000);
    expect([state.bossX, state.bossY]).toEqual([192.0, 102.4]);
    expect([state.playerX, state.playerY]).toEqual([192.0, 460.8]);
    expect(state.frame).toBe(0);
    expect(state.bullets).toEqual([]);
    expect(state.spawners).toEqual([]);
    expect(state.pendingEvents).toEqual([0, 1]);
  });
});

describe("arcAngles", () => {
  it("spaces a full circle of four", () => {
    expect(arcAngles(0.0, 360.0, 4)).toEqual([0.0, 90.0, 180.0, 270.0]);
  });

  it("centers three children in a narrow arc", () => {
    const got = arcAngles(0.0, 30.0, 3);
    expect(got.length).toBe(3);
    got.forEach((a, i) => expect(a).toBeCloseTo([-10.0, 0.0, 10.0][i], 12));
  });

  it("puts a single child at the center", () => {
    expect(arcAngles(42.5, 100.0, 1)).toEqual([42.5]);
  });

  it("returns nothing for zero children", () => {
    expect(arcAngles(0.0, 360.0, 0)).toEqual([]);
  });

  it("offsets the whole ring by the center", () => {
    expect(arcAngles(10.0, 360.0, 4)).toEqual([10.0, 100.0, 190.0, 280.0]);
  });

  it("rounds half up", () => {
    expect(roundHalfUp(2.5)).toBe(3);
    expect(roundHalfUp(2.4999)).toBe(2);
    expect(roundHalfUp(-0.5)).toBe(0);
  });
});

describe("demo timeline", () => {
  // frame numbers below were derived by hand from the step contract
  it("opening event spawns one", () => {
    const state = initState(parseScript(demoScriptText()));
    stepFrame(state, 0);
    expect(state.spawners.map((sp) => sp.sid)).toEqual(["one"]);
    expect(state.spawners[0].born).toBe(1);
    expect([state.spawners[0].x, state.spawners[0].y]).toEqual([192.0, 102.4]);
    expect(state.pendingEvents).toEqual([1]);
  });

  it("fires the first fan at frame five", () => {
    // "one" acts from frame 2, patternTime 4 -> first execution frame 5
    const state = initState(parseScript(demoScriptText()));
    worldStep(state, 4);
    expect(state.spawners.map((sp) => sp.sid)).toEqual(["one"]);
    worldStep(state);
    const children = state.spawners.filter((sp) => sp.sid === "two");
    expect(children.length).toBe(4);
    expect(children.map((c) => c.spawnerAngle.current)).toEqual([0.0, 90.0, 180.0, 270.0]);
    children.forEach((c) => expect([c.x, c.y]).toEqual([192.0, 102.4]));
    expect(state.bullets).toEqual([]);
  });

  it("shows twelve bullets at frame six", () => {
    const state = initState(parseScript(demoScriptText()));
    worldStep(state, 6);
    expect(state.bullets.length).toBe(12);
    // children of "two" expire after their single pattern repeat
    expect(state.spawners.map((sp) => sp.sid)).toEqual(["one"]);
    for (const b of state.bullets) {
      expect(Math.hypot(b.vx, b.vy)).toBeCloseTo(4.0, 9);
    }
    const got = state.bullets.map((b) => degrees(b.vx, b.vy)).sort((a, b) => a - b);
    const expected: number[] = [];
    for (const c of [0, 90, 180, 270]) {
      for (const a of [c - 10, c, c + 10]) {
        expected.push(a <= 180 ? a : a - 360);
      }
    }
    expected.sort((a, b) => a - b);
    got.forEach((a, i) => expect(a).toBeCloseTo(expected[i], 9));
  });

  it("rotates on the sampler cadence", () => {
    // spawnerAngle (0,360,10,12,circle) advances from frame 2
    const state = initState(parseScript(demoScriptText()));
    worldStep(state, 12);
    expect(state.spawners[0].spawnerAngle.current).toBe(0.0);
    worldStep(state);
    expect(state.spawners[0].spawnerAngle.current).toBe(10.0);
    worldStep(state, 12);
    expect(state.spawners[0].spawnerAngle.current).toBe(20.0);
  });

  it("fires the half-health event once", () => {
    const state = initState(parseScript(demoScriptText()));
    worldStep(state, 1499);
    expect(state.pendingEvents).toEqual([1]);
    expect(state.spawners.some((sp) => sp.sid === "one")).toBe(true);
    worldStep(state);
    expect(state.bossHealth).toBe(1500);
    expect(state.spawners.map((sp) => sp.sid)).toEqual(["three"]);
    expect(state.pendingEvents).toEqual([]);
  });
});

describe("health and events", () => {
  it("drains health one per frame under any actions", () => {
    const rng = seededRng(5);
    const state = initState(parseScript(WAIT_ONLY));
    while (!isTerminal(state)) {
      stepFrame(state, randInt(rng, 0, 9));
      expect(state.bossHealth).toBe(state.bossHealthMax - state.frame);
    }
    expect(state.bossDead).toBe(true);
    expect(state.playerDead).toBe(false);
    expect(state.frame).toBe(300);
  });

  it("fires events only once", () => {
    const state = initState(parseScript(demoScriptText()));
    worldStep(state, 30);
    expect(state.spawners.filter((sp) => sp.sid === "one").length).toBe(1);
  });

  it("rejects stepping a terminal state", () => {
    const state = initState(parseScript(WAIT_ONLY));
    for (let i = 0; i < 300; i++) stepFrame(state, 0);
    expect(isTerminal(state)).toBe(true);
    expect(() => stepFrame(state, 0)).toThrow();
  });
});

describe("player motion", () => {
  it("stays put when idle", () => {
    const state = initState(parseScript(WAIT_ONLY));
    stepFrame(state, 0);
    expect([state.playerX, state.playerY]).toEqual([192.0, 460.8]);
  });

  it("moves at full speed on cardinals and diagonals", () => {
    let state = initState(parseScript(WAIT_ONLY));
    stepFrame(state, 3);
    expect([state.playerX, state.playerY]).toEqual([196.0, 460.8]);
    const diag = (4.0 * Math.sqrt(2.0)) / 2.0;
    state = initState(parseScript(WAIT_ONLY));
    stepFrame(state, 2);
    expect(state.playerX).toBeCloseTo(192.0 + diag, 12);
    expect(state.playerY).toBeCloseTo(460.8 - diag, 12);
  });

  it("clamps to the screen", () => {
    const state = initState(parseScript(WAIT_ONLY));
    for (let i = 0; i < 80; i++) stepFrame(state, 4); // down-right
    expect([state.playerX, state.playerY]).toEqual([380.0, 508.0]);
    for (let i = 0; i < 200; i++) stepFrame(state, 8); // up-left
    expect([state.playerX, state.playerY]).toEqual([4.0, 4.0]);
  });
});

describe("collision", () => {
  const place = (dx: number, radius = 8.0): GameState => {
    const state = initState(parseScript(WAIT_ONLY));
    state.bullets.push(new Bullet(state.playerX + dx, state.playerY, 0.0, 0.0, radius, 0));
    return state;
  };

  it("does not kill on touching circles", () => {
    const state = place(12.0);
    stepFrame(state, 0);
    expect(state.playerDead).toBe(false);
  });

  it("kills on overlap", () => {
    const state = place(11.999);
    stepFrame(state, 0);
    expect(state.playerDead).toBe(true);
    expect(state.bossDead).toBe(false);
  });

  it("player death precedes boss death", () => {
    const state = initState(parseScript(WAIT_ONLY));
    for (let i = 0; i < 199; i++) stepFrame(state, 0);
    state.bullets.push(new Bullet(state.playerX, state.playerY, 0.0, 0.0, 8.0, 0));
    stepFrame(state, 0); // health hits 0 on the same frame the bullet overlaps
    expect(state.playerDead).toBe(true);
    expect(state.bossDead).toBe(false);
  });
});

describe("culling", () => {
  it("removes a bullet only when fully offscreen", () => {
    const state = initState(parseScript(WAIT_ONLY));
    state.bullets.push(new Bullet(1.0, 256.0, -4.0, 0.0, 8.0, 0));
    // x: -3, -7 keep (x + r >= 0), -11 culled
    stepFrame(state, 0);
    expect(state.bullets.length).toBe(1);
    stepFrame(state, 0);
    expect(state.bullets.length).toBe(1);
    stepFrame(state, 0);
    expect(state.bullets.length).toBe(0);
  });

  it("does not screen-cull spawners", () => {
    const state = initState(parseScript(WAIT_ONLY));
    stepFrame(state, 0);
    state.spawners[0].vx = -50.0;
    for (let i = 0; i < 10; i++) stepFrame(state, 0);
    expect(state.spawners.length).toBe(1);
    expect(state.spawners[0].x).toBe(-308.0);
  });
});

describe("overflow", () => {
  it("grows recursively and sets the sticky flag", () => {
    const state = initState(parseScript(RECURSIVE));
    const expected = [1, 3, 9, 27, 81, 243, 243, 243];
    expected.forEach((want) => {
      worldStep(state);
      expect(state.spawners.length).toBe(want);
      expect(state.spawnerOverflow).toBe(want > 100);
    });
  });

  it("keeps spawning bullets after overflow", () => {
    const text = RECURSIVE.replace('pattern: ["s"]', 'pattern: ["s", bullet]');
    const state = initState(parseScript(text));
    worldStep(state, 12);
    expect(state.spawnerOverflow).toBe(true);
    const spawnersBefore = state.spawners.length;
    const bulletsBefore = state.bullets.length;
    worldStep(state, 2);
    expect(state.spawners.length).toBe(spawnersBefore);
    expect(state.bullets.length).toBeGreaterThan(bulletsBefore);
  });
});

describe("grids", () => {
  it("starts empty", () => {
    const state = initState(parseScript(WAIT_ONLY));
    expect([...bulletCountGrid(state)].every((c) => c === 0)).toBe(true);
  });

  it("counts a single center bullet", () => {
    const state = initState(parseScript(WAIT_ONLY));
    state.bullets.push(new Bullet(192.0, 256.0, 0, 0, 8.0, 0));
    const grid = bulletCountGrid(state);
    expect([...grid].reduce((a, b) => a + b, 0)).toBe(1);
    expect(grid[8 * 12 + 6]).toBe(1);
  });

  it("matches brute force on random scenes", () => {
    const cfg = defaultConfig();
    const rng = seededRng(11);
    for (let round = 0; round < 20; round++) {
      const state = initState(parseScript(WAIT_ONLY));
      const n = randInt(rng, 1, 60);
      for (let i = 0; i < n; i++) {
        const x = rng() * (cfg.screenWidth + 20) - 10;
        const y = rng() * (cfg.screenHeight + 20) - 10;
        state.bullets.push(new Bullet(x, y, 0, 0, 4.0, 0));
      }
      const want = new Int32Array(16 * 12);
      for (const b of state.bullets) {
        const col = Math.floor(b.x / 32);
        const row = Math.floor(b.y / 32);
        if (col >= 0 && col < 12 && row >= 0 && row < 16) want[row * 12 + col] += 1;
      }
      expect([...bulletCountGrid(state)]).toEqual([...want]);
    }
  });
});
