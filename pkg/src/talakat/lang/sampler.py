"""Time-varying value samplers.

Most numeric fields of a spawner are not fixed numbers but samplers: a value
confined to [min, max] that changes by `rate` once every `interval` frames.
On reaching a bound the value either wraps around modularly (circle) or
bounces back with the rate sign flipped (inverse).  A bare number is a
degenerate sampler with min == max and rate 0.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class Wrap(enum.Enum):
    CIRCLE = "circle"
    INVERSE = "inverse"


# "reverse" appears in the wild as a synonym of inverse; both are accepted.
_WRAP_KEYWORDS = {
    "circle": Wrap.CIRCLE,
    "inverse": Wrap.INVERSE,
    "reverse": Wrap.INVERSE,
}


class SamplerError(ValueError):
    """Malformed sampler CSV string."""


@dataclass
class ValueSampler:
    min_value: float
    max_value: float
    rate: float = 0.0
    interval: int = 1
    wrap: Wrap = Wrap.CIRCLE
    current: float = field(default=None)  # type: ignore[assignment]
    frame_counter: int = 0

    def __post_init__(self) -> None:
        if self.min_value > self.max_value:
            raise SamplerError(
                f"sampler min {self.min_value} exceeds max {self.max_value}"
            )
        if self.interval < 1:
            self.interval = 1
        if self.current is None:
            self.current = self.min_value

    def copy(self) -> "ValueSampler":
        return ValueSampler(
            self.min_value,
            self.max_value,
            self.rate,
            self.interval,
            self.wrap,
            self.current,
            self.frame_counter,
        )

    @property
    def is_constant(self) -> bool:
        return self.rate == 0.0 or self.min_value == self.max_value

    def shift(self, offset: float) -> None:
        """Translate the whole window; used to aim a child at its spawn angle."""
        self.min_value += offset
        self.max_value += offset
        self.current += offset

    def step(self) -> None:
        """Advance one frame; apply `rate` every `interval` frames."""
        self.frame_counter += 1
        if self.frame_counter % self.interval != 0:
            return
        if self.rate == 0.0:
            return
        span = self.max_value - self.min_value
        if span <= 0.0:
            self.current = self.min_value
            return
        value = self.current + self.rate
        if self.wrap is Wrap.CIRCLE:
            wrapped = (value - self.min_value) % span
            current = self.min_value + wrapped
            # float modulo may round up to span exactly; keep current < max
            if wrapped >= span or current >= self.max_value:
                current = self.min_value
            self.current = current
        else:
            rate = self.rate
            offset = value - self.min_value
            if offset > span or offset < 0.0:
                periods = offset / (2.0 * span)
                if periods > 9007199254740992.0 or periods < -9007199254740992.0:
                    # the window is degenerate next to the value (or the rate
                    # is enormous); reflection parity is numeric noise here,
                    # so restart from the lower bound like a collapsed span
                    self.current = self.min_value
                    return
                # strip whole reflection periods (an even number of bounces,
                # so rate keeps its sign) to bound the loop below
                value -= math.floor(periods) * (2.0 * span)
            while value > self.max_value or value < self.min_value:
                if value > self.max_value:
                    value = 2.0 * self.max_value - value
                else:
                    value = 2.0 * self.min_value - value
                rate = -rate
            self.current = value
            self.rate = rate

    def to_csv(self) -> str:
        if self.is_constant and self.min_value == self.max_value:
            return _fmt(self.min_value)
        return ",".join(
            [
                _fmt(self.min_value),
                _fmt(self.max_value),
                _fmt(self.rate),
                str(self.interval),
                self.wrap.value,
            ]
        )


def constant(value: float) -> ValueSampler:
    return ValueSampler(value, value, 0.0, 1, Wrap.CIRCLE)


def parse_sampler(csv: str) -> ValueSampler:
    """Parse the comma-separated sampler form.

    Accepted arities:
      1 field   -> constant value
      2 fields  -> min,max (rate 0)
      3 fields  -> min,max,rate (interval 1, circle)
      4 fields  -> min,max,rate,interval (circle)
      5 fields  -> min,max,rate,interval,wrap

    An interval of 0 is normalized to 1 (a change every frame).
    """
    parts = [p.strip() for p in str(csv).split(",")]
    if not parts or parts == [""]:
        raise SamplerError("empty sampler")
    if len(parts) > 5:
        raise SamplerError(f"too many sampler fields ({len(parts)}), expected 1-5")

    def num(i: int) -> float:
        try:
            return float(parts[i])
        except ValueError:
            raise SamplerError(f"non-numeric sampler field {parts[i]!r}") from None

    if len(parts) == 1:
        return constant(num(0))
    lo, hi = num(0), num(1)
    rate = num(2) if len(parts) >= 3 else 0.0
    interval = 1
    if len(parts) >= 4:
        raw = num(3)
        if raw != int(raw) or raw < 0:
            raise SamplerError(f"sampler interval must be a non-negative integer, got {parts[3]!r}")
        interval = max(1, int(raw))
    wrap = Wrap.CIRCLE
    if len(parts) == 5:
        keyword = parts[4].lower()
        if keyword not in _WRAP_KEYWORDS:
            raise SamplerError(f"unknown wrap keyword {parts[4]!r}")
        wrap = _WRAP_KEYWORDS[keyword]
    return ValueSampler(lo, hi, rate, interval, wrap)


def sampler_step(s: ValueSampler) -> ValueSampler:
    """Functional form of `ValueSampler.step`: returns an advanced copy."""
    out = s.copy()
    out.step()
    return out


def _fmt(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)
