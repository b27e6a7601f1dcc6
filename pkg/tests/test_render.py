"""PPM snapshot rendering and replay-divergence reporting."""
from __future__ import annotations

import numpy as np
import pytest

from talakat.lang import parse_script
from talakat.render import (
    BACKGROUND,
    BAR_FILL,
    PALETTE,
    RenderError,
    render_frames,
    render_state,
)
from talakat.sim import SimConfig, init, step
from talakat.sim.engine import Bullet

# one bullet dropped straight onto the player's starting column
DROPPER = """
{
    spawners: {
        drop: {
            pattern: ["bullet"], patternTime: 1, patternRepeat: 1,
            spawnerAngle: "0, 0, 0, 99", spawnerRadius: "0, 0, 0, 99",
            spawnedNumber: "1, 1, 0, 99", spawnedAngle: "0, 0, 0, 99",
            spawnedSpeed: "8, 8, 0, 99", bulletRadius: "6, 6, 0, 99",
        },
    },
    boss: {
        bossHealth: 3000,
        bossPosition: "0.5, 0.2",
        script: [{health: 1.0, events: ["spawn,drop"]}],
    },
}
"""


def decode_ppm(data: bytes) -> np.ndarray:
    # header lines: magic, "w h", "255", then raw pixels
    magic, dims, depth, pixels = data.split(b"\n", 3)
    assert magic == b"P6"
    width, height = map(int, dims.split())
    assert depth == b"255"
    img = np.frombuffer(pixels, dtype=np.uint8)
    assert img.size == width * height * 3
    return img.reshape(height, width, 3)


def color_present(img: np.ndarray, rgb) -> bool:
    return bool(np.all(img == np.asarray(rgb, dtype=np.uint8), axis=-1).any())


class TestRenderState:
    def test_header_and_size(self, demo_script):
        data = render_state(init(demo_script))
        assert data.startswith(b"P6\n384 512\n255\n")
        img = decode_ppm(data)
        assert img.shape == (512, 384, 3)

    def test_initial_frame_has_no_bullet_colors(self, demo_script):
        img = decode_ppm(render_state(init(demo_script)))
        for rgb in PALETTE:
            assert not color_present(img, rgb)
        # player, boss, and full health bar are all present
        assert color_present(img, [255, 255, 255])
        assert color_present(img, [250, 219, 20])
        assert np.all(img[0] == BAR_FILL)

    def test_bullet_disc_painted_in_palette_color(self, demo_script):
        state = init(demo_script)
        state.bullets.append(Bullet(100.0, 300.0, 0.0, 0.0, 5.0, 3))
        img = decode_ppm(render_state(state))
        assert tuple(img[300, 100]) == tuple(PALETTE[3])
        assert tuple(img[300, 106]) == tuple(BACKGROUND)

    def test_health_bar_tracks_fraction(self, demo_script):
        state = init(demo_script)
        state.boss_health = state.boss_health_max // 2
        img = decode_ppm(render_state(state))
        w = img.shape[1]
        assert np.all(img[0, : w // 2 - 1] == BAR_FILL)
        assert not color_present(img[0, w // 2 + 1 :], BAR_FILL)


class TestRenderFrames:
    def test_frame_zero_matches_initial_state(self, demo_script):
        frames = render_frames(demo_script, [0, 0, 0], [0])
        assert frames == [(0, render_state(init(demo_script)))]

    def test_frames_returned_sorted_and_deduplicated(self, demo_script):
        frames = render_frames(demo_script, [0] * 10, [5, 0, 5])
        assert [f for f, _ in frames] == [0, 5]

    def test_frame_beyond_trace_rejected(self, demo_script):
        with pytest.raises(RenderError, match=r"frame 4 outside replay range 0\.\.3"):
            render_frames(demo_script, [0, 0, 0], [4])
        with pytest.raises(RenderError, match="frame -1"):
            render_frames(demo_script, [0, 0, 0], [-1])

    def test_script_hash_mismatch_rejected(self, demo_script):
        with pytest.raises(RenderError, match="hash"):
            render_frames(demo_script, [0], [0], script_hash="not-the-script")
        ok = render_frames(demo_script, [0], [0],
                           script_hash=demo_script.content_hash())
        assert len(ok) == 1

    def test_divergent_trace_reports_frame_number(self):
        script = parse_script(DROPPER)
        state = init(script)
        fatal = None
        for i in range(1, 400):
            step(state, 0)
            if state.player_dead:
                fatal = i
                break
        assert fatal is not None, "dropper fixture must hit an idle player"
        with pytest.raises(RenderError, match=f"frame {fatal}"):
            render_frames(script, [0] * (fatal + 5), [fatal + 5])
        # frames before the death are fine
        ok = render_frames(script, [0] * (fatal - 1), [fatal - 1])
        assert len(ok) == 1
