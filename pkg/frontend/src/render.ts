// Canvas renderer matching the reference rasterizer: bullets as filled
// discs in their palette color, the player as a white disc with a dark
// core, the boss as a ringed anchor, and a health bar along the top edge.

import { SimConfig } from "./config.js";
import { GameState } from "./engine.js";

export const PALETTE = [
  "#e74c3c",
  "#f39c12",
  "#f1eb4d",
  "#2ecc71",
  "#3498db",
  "#9b59b6",
] as const;

export const BACKGROUND = "#10101c";
export const PLAYER_RGB = "#ffffff";
export const PLAYER_CORE = "#28283c";
export const BOSS_RGB = "#fadb14";
export const BAR_BACK = "#3c3c46";
export const BAR_FILL = "#c0392b";
export const BAR_HEIGHT = 4;

// the drawing surface, structurally (a CanvasRenderingContext2D fits)
export interface Context2D {
  fillStyle: string | CanvasGradient | CanvasPattern;
  fillRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
}

const disc = (ctx: Context2D, cx: number, cy: number, r: number, color: string): void => {
  ctx.fillStyle = color;
  ctx.beginPath();
  ctx.arc(cx, cy, r, 0, Math.PI * 2);
  ctx.fill();
};

export const renderState = (ctx: Context2D, state: GameState, cfg?: SimConfig): void => {
  const config = cfg ?? state.cfg;
  const w = config.screenWidth;
  const h = config.screenHeight;

  ctx.fillStyle = BACKGROUND;
  ctx.fillRect(0, 0, w, h);

  disc(ctx, state.bossX, state.bossY, 10.0, BOSS_RGB);
  disc(ctx, state.bossX, state.bossY, 6.0, BACKGROUND);
  disc(ctx, state.bossX, state.bossY, 3.0, BOSS_RGB);

  for (const b of state.bullets) {
    disc(ctx, b.x, b.y, Math.max(b.radius, 1.0), PALETTE[b.color]);
  }

  disc(ctx, state.playerX, state.playerY, config.playerRadius + 2.0, PLAYER_RGB);
  disc(ctx, state.playerX, state.playerY, config.playerRadius - 2.0, PLAYER_CORE);

  ctx.fillStyle = BAR_BACK;
  ctx.fillRect(0, 0, w, BAR_HEIGHT);
  const frac = state.bossHealthMax ? state.bossHealth / state.bossHealthMax : 0.0;
  const fill = Math.round(Math.max(0.0, Math.min(1.0, frac)) * w);
  ctx.fillStyle = BAR_FILL;
  ctx.fillRect(0, 0, fill, BAR_HEIGHT);
};
