// Simulation constants and the 9-action control scheme.
//
// Screen coordinates are pixels with y growing downward. Bullet and
// spawner headings are degrees where 0 points screen-down (toward the
// player) and positive angles turn toward screen-right:
// direction = (sin a, cos a).

export const IDLE = 0;
export const N_ACTIONS = 9;

export const ACTION_NAMES = [
  "idle",
  "up",
  "up-right",
  "right",
  "down-right",
  "down",
  "down-left",
  "left",
  "up-left",
] as const;

const DIAG = Math.sqrt(2.0) / 2.0;

// unit velocity per action id; diagonals keep magnitude 1
export const ACTION_UNITS: ReadonlyArray<readonly [number, number]> = [
  [0.0, 0.0],
  [0.0, -1.0],
  [DIAG, -DIAG],
  [1.0, 0.0],
  [DIAG, DIAG],
  [0.0, 1.0],
  [-DIAG, DIAG],
  [-1.0, 0.0],
  [-DIAG, -DIAG],
];

export interface SimConfig {
  screenWidth: number;
  screenHeight: number;
  playerSpeed: number;
  playerRadius: number;
  playerStart: [number, number];
  maxLiveSpawners: number;
  gridCols: number;
  gridRows: number;
}

// engine guards against pathological scripts, not level semantics
export const MAX_SPAWN_BATCH = 20;
export const MAX_LIVE_BULLETS = 5000;

export const defaultConfig = (): SimConfig => ({
  screenWidth: 384,
  screenHeight: 512,
  playerSpeed: 4.0,
  playerRadius: 4.0,
  playerStart: [0.5, 0.9],
  maxLiveSpawners: 100,
  gridCols: 12,
  gridRows: 16,
});

export const configFromDict = (data: Record<string, unknown>): SimConfig => {
  const base = defaultConfig();
  const num = (key: string, fallback: number): number =>
    typeof data[key] === "number" ? (data[key] as number) : fallback;
  const start = Array.isArray(data["playerStart"])
    ? (data["playerStart"] as number[])
    : base.playerStart;
  return {
    screenWidth: num("screenWidth", base.screenWidth),
    screenHeight: num("screenHeight", base.screenHeight),
    playerSpeed: num("playerSpeed", base.playerSpeed),
    playerRadius: num("playerRadius", base.playerRadius),
    playerStart: [start[0], start[1]],
    maxLiveSpawners: num("maxLiveSpawners", base.maxLiveSpawners),
    gridCols: num("gridCols", base.gridCols),
    gridRows: num("gridRows", base.gridRows),
  };
};

export const cellWidth = (cfg: SimConfig): number => cfg.screenWidth / cfg.gridCols;
export const cellHeight = (cfg: SimConfig): number => cfg.screenHeight / cfg.gridRows;

export const playerStartPx = (cfg: SimConfig): [number, number] => [
  cfg.playerStart[0] * cfg.screenWidth,
  cfg.playerStart[1] * cfg.screenHeight,
];

export const actionVelocity = (cfg: SimConfig, action: number): [number, number] => {
  const [ux, uy] = ACTION_UNITS[action];
  return [ux * cfg.playerSpeed, uy * cfg.playerSpeed];
};

// unit vector for a heading; 0 degrees points screen-down
export const direction = (angleDegrees: number): [number, number] => {
  const rad = angleDegrees * (Math.PI / 180.0);
  return [Math.sin(rad), Math.cos(rad)];
};
