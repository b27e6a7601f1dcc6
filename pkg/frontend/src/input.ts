// Keyboard state and its mapping onto the 9-action control scheme.
//
// Keys are tracked by KeyboardEvent.code so layouts with remapped letters
// still get WASD by physical position. Opposite directions cancel, and
// any combination of held keys resolves to exactly one action id.

import { IDLE } from "./config.js";

const UP_KEYS = new Set(["ArrowUp", "KeyW"]);
const DOWN_KEYS = new Set(["ArrowDown", "KeyS"]);
const LEFT_KEYS = new Set(["ArrowLeft", "KeyA"]);
const RIGHT_KEYS = new Set(["ArrowRight", "KeyD"]);

export const HANDLED_CODES = new Set([
  ...UP_KEYS,
  ...DOWN_KEYS,
  ...LEFT_KEYS,
  ...RIGHT_KEYS,
]);

// action id by (dx+1, dy+1) with y growing screen-down
const ACTION_BY_OFFSET = [
  [8, 7, 6],
  [1, 0, 5],
  [2, 3, 4],
] as const;

export class InputState {
  private pressed = new Set<string>();

  press(code: string): void {
    if (HANDLED_CODES.has(code)) this.pressed.add(code);
  }

  release(code: string): void {
    this.pressed.delete(code);
  }

  clear(): void {
    this.pressed.clear();
  }

  private anyDown(codes: Set<string>): boolean {
    for (const code of codes) if (this.pressed.has(code)) return true;
    return false;
  }

  action(): number {
    const dx = Number(this.anyDown(RIGHT_KEYS)) - Number(this.anyDown(LEFT_KEYS));
    const dy = Number(this.anyDown(DOWN_KEYS)) - Number(this.anyDown(UP_KEYS));
    if (dx === 0 && dy === 0) return IDLE;
    return ACTION_BY_OFFSET[dx + 1][dy + 1];
  }
}
