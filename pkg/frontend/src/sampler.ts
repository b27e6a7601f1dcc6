// Time-varying value samplers, mirroring the reference implementation:
// a value confined to [min, max] that changes by `rate` once every
// `interval` frames, wrapping modularly (circle) or bouncing (inverse).

export type Wrap = "circle" | "inverse";

const WRAP_KEYWORDS: Record<string, Wrap> = {
  circle: "circle",
  inverse: "inverse",
  reverse: "inverse",
};

// beyond 2^53 reflection periods the bounce parity is numeric noise
const MAX_PERIODS = 9007199254740992.0;

export class SamplerError extends Error {}

export class ValueSampler {
  constructor(
    public minValue: number,
    public maxValue: number,
    public rate = 0.0,
    public interval = 1,
    public wrap: Wrap = "circle",
    public current: number | null = null,
    public frameCounter = 0,
  ) {
    if (minValue > maxValue) {
      throw new SamplerError(`sampler min ${minValue} exceeds max ${maxValue}`);
    }
    if (this.interval < 1) this.interval = 1;
    if (this.current === null) this.current = minValue;
  }

  get value(): number {
    return this.current as number;
  }

  copy(): ValueSampler {
    return new ValueSampler(
      this.minValue,
      this.maxValue,
      this.rate,
      this.interval,
      this.wrap,
      this.current,
      this.frameCounter,
    );
  }

  // translate the whole window; used to aim a child at its spawn angle
  shift(offset: number): void {
    this.minValue += offset;
    this.maxValue += offset;
    this.current = (this.current as number) + offset;
  }

  step(): void {
    this.frameCounter += 1;
    if (this.frameCounter % this.interval !== 0) return;
    if (this.rate === 0.0) return;
    const span = this.maxValue - this.minValue;
    if (span <= 0.0) {
      this.current = this.minValue;
      return;
    }
    let value = (this.current as number) + this.rate;
    if (this.wrap === "circle") {
      let wrapped = (value - this.minValue) % span;
      if (wrapped < 0.0) wrapped += span;
      let current = this.minValue + wrapped;
      // float modulo may land on span exactly; keep current < max
      if (wrapped >= span || current >= this.maxValue) {
        current = this.minValue;
      }
      this.current = current;
    } else {
      let rate = this.rate;
      const offset = value - this.minValue;
      if (offset > span || offset < 0.0) {
        const periods = offset / (2.0 * span);
        if (periods > MAX_PERIODS || periods < -MAX_PERIODS) {
          this.current = this.minValue;
          return;
        }
        // strip whole reflection periods (an even number of bounces,
        // so rate keeps its sign) to bound the loop below
        value -= Math.floor(periods) * (2.0 * span);
      }
      while (value > this.maxValue || value < this.minValue) {
        if (value > this.maxValue) {
          value = 2.0 * this.maxValue - value;
        } else {
          value = 2.0 * this.minValue - value;
        }
        rate = -rate;
      }
      this.current = value;
      this.rate = rate;
    }
  }
}

export const constant = (value: number): ValueSampler =>
  new ValueSampler(value, value, 0.0, 1, "circle");

const parseNum = (raw: string): number => {
  const text = raw.trim();
  if (text === "") throw new SamplerError("empty sampler field");
  const value = Number(text);
  if (Number.isNaN(value)) {
    throw new SamplerError(`non-numeric sampler field '${raw}'`);
  }
  return value;
};

// Accepted arities: value | min,max | min,max,rate | min,max,rate,interval
// | min,max,rate,interval,wrap. An interval of 0 normalizes to 1.
export const parseSampler = (csv: string): ValueSampler => {
  const parts = String(csv)
    .split(",")
    .map((p) => p.trim());
  if (parts.length === 0 || (parts.length === 1 && parts[0] === "")) {
    throw new SamplerError("empty sampler");
  }
  if (parts.length > 5) {
    throw new SamplerError(
      `too many sampler fields (${parts.length}), expected 1-5`,
    );
  }
  if (parts.length === 1) return constant(parseNum(parts[0]));
  const lo = parseNum(parts[0]);
  const hi = parseNum(parts[1]);
  const rate = parts.length >= 3 ? parseNum(parts[2]) : 0.0;
  let interval = 1;
  if (parts.length >= 4) {
    const raw = parseNum(parts[3]);
    if (!Number.isInteger(raw) || raw < 0) {
      throw new SamplerError(
        `sampler interval must be a non-negative integer, got '${parts[3]}'`,
      );
    }
    interval = Math.max(1, raw);
  }
  let wrap: Wrap = "circle";
  if (parts.length === 5) {
    const keyword = parts[4].toLowerCase();
    const resolved = WRAP_KEYWORDS[keyword];
    if (resolved === undefined) {
      throw new SamplerError(`unknown wrap keyword '${parts[4]}'`);
    }
    wrap = resolved;
  }
  return new ValueSampler(lo, hi, rate, interval, wrap);
};
