// Fixed-timestep driver: simulation ticks at exactly 60 Hz regardless of
// the display refresh rate, rendering once per animation frame. Wall
// clock deltas are clamped so a backgrounded tab does not fast-forward
// the level on return.

export const FRAME_MS = 1000.0 / 60.0;
export const MAX_DELTA_MS = 250.0;

type Scheduler = (callback: (now: number) => void) => number;
type Canceler = (handle: number) => void;

export class GameLoop {
  private handle: number | null = null;
  private lastNow: number | null = null;
  private accumulated = 0;

  constructor(
    private readonly tick: () => boolean,
    private readonly render: () => void,
    private readonly schedule: Scheduler = (cb) => requestAnimationFrame(cb),
    private readonly cancel: Canceler = (h) => cancelAnimationFrame(h),
  ) {}

  get running(): boolean {
    return this.handle !== null;
  }

  start(): void {
    if (this.handle !== null) return;
    this.lastNow = null;
    this.accumulated = 0;
    const frame = (now: number): void => {
      this.handle = this.schedule(frame);
      if (!this.advance(now)) this.stop();
    };
    this.handle = this.schedule(frame);
  }

  stop(): void {
    if (this.handle === null) return;
    this.cancel(this.handle);
    this.handle = null;
  }

  // Consume wall time in FRAME_MS steps; returns false once tick() says
  // the session is over. Exposed for tests with synthetic timestamps.
  advance(now: number): boolean {
    if (this.lastNow !== null) {
      this.accumulated += Math.min(now - this.lastNow, MAX_DELTA_MS);
    }
    this.lastNow = now;
    let alive = true;
    while (alive && this.accumulated >= FRAME_MS) {
      this.accumulated -= FRAME_MS;
      alive = this.tick();
    }
    this.render();
    return alive;
  }
}
