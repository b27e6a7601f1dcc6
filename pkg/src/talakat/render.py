"""Frame snapshots as binary PPM images.

Replays recorded actions through the reference engine and rasterizes the
requested frames: bullets as filled discs in their palette color, the player
as a white disc with a dark core, the boss as a ringed anchor, and a health
bar along the top edge.  PPM (P6) keeps the artifact free of image-library
dependencies; anything can convert it.
"""
from __future__ import annotations

import numpy as np

from .lang.types import Script
from .sim.config import SimConfig
from .sim.engine import GameState, init, step

# bullet palette indices 0-5
PALETTE = np.array(
    [
        [231, 76, 60],    # red
        [243, 156, 18],   # orange
        [241, 235, 77],   # yellow
        [46, 204, 113],   # green
        [52, 152, 219],   # blue
        [155, 89, 182],   # violet
    ],
    dtype=np.uint8,
)

BACKGROUND = np.array([16, 16, 28], dtype=np.uint8)
PLAYER_RGB = np.array([255, 255, 255], dtype=np.uint8)
PLAYER_CORE = np.array([40, 40, 60], dtype=np.uint8)
BOSS_RGB = np.array([250, 219, 20], dtype=np.uint8)
BAR_BACK = np.array([60, 60, 70], dtype=np.uint8)
BAR_FILL = np.array([192, 57, 43], dtype=np.uint8)
BAR_HEIGHT = 4


class RenderError(ValueError):
    """Trace does not replay cleanly on the script."""


def _disc(img: np.ndarray, cx: float, cy: float, r: float, rgb: np.ndarray) -> None:
    h, w, _ = img.shape
    x0 = max(0, int(np.floor(cx - r)))
    x1 = min(w, int(np.floor(cx + r)) + 1)
    y0 = max(0, int(np.floor(cy - r)))
    y1 = min(h, int(np.floor(cy + r)) + 1)
    if x0 >= x1 or y0 >= y1:
        return
    ys, xs = np.ogrid[y0:y1, x0:x1]
    mask = (xs - cx) ** 2 + (ys - cy) ** 2 <= r * r
    img[y0:y1, x0:x1][mask] = rgb


def render_state(state: GameState, cfg: SimConfig | None = None) -> bytes:
    cfg = cfg or SimConfig()
    w, h = cfg.screen_width, cfg.screen_height
    img = np.empty((h, w, 3), dtype=np.uint8)
    img[:] = BACKGROUND

    _disc(img, state.boss_x, state.boss_y, 10.0, BOSS_RGB)
    _disc(img, state.boss_x, state.boss_y, 6.0, BACKGROUND)
    _disc(img, state.boss_x, state.boss_y, 3.0, BOSS_RGB)

    for b in state.bullets:
        _disc(img, b.x, b.y, max(b.radius, 1.0), PALETTE[b.color])

    _disc(img, state.player_x, state.player_y, cfg.player_radius + 2.0, PLAYER_RGB)
    _disc(img, state.player_x, state.player_y, cfg.player_radius - 2.0, PLAYER_CORE)

    img[:BAR_HEIGHT, :] = BAR_BACK
    frac = state.boss_health / state.boss_health_max if state.boss_health_max else 0.0
    fill = int(round(max(0.0, min(1.0, frac)) * w))
    img[:BAR_HEIGHT, :fill] = BAR_FILL

    return b"P6\n%d %d\n255\n" % (w, h) + img.tobytes()


def render_frames(
    script: Script,
    actions: list[int],
    frames: list[int],
    cfg: SimConfig | None = None,
    script_hash: str | None = None,
) -> list[tuple[int, bytes]]:
    """Rasterize the requested frames of a replay.

    Frame k is the state after k recorded actions; frame 0 is the initial
    state.  A death mid-replay or a script hash mismatch means the trace was
    not produced by this script.
    """
    cfg = cfg or SimConfig()
    if script_hash is not None and script_hash != script.content_hash():
        raise RenderError("trace script hash does not match the script")
    wanted = sorted(set(int(f) for f in frames))
    if not wanted:
        return []
    if wanted[0] < 0 or wanted[-1] > len(actions):
        raise RenderError(
            f"frame {wanted[0] if wanted[0] < 0 else wanted[-1]} outside replay "
            f"range 0..{len(actions)}"
        )
    out: list[tuple[int, bytes]] = []
    state = init(script, cfg)
    if wanted[0] == 0:
        out.append((0, render_state(state, cfg)))
        wanted = wanted[1:]
    for i, action in enumerate(actions, start=1):
        if not wanted:
            break
        step(state, action)
        if state.player_dead:
            raise RenderError(f"trace diverged at frame {i}: replay died on a recorded action")
        if i == wanted[0]:
            out.append((i, render_state(state, cfg)))
            wanted = wanted[1:]
    return out
