"""Jitted world timeline.

The world (bullets, spawners, boss events) evolves independently of the
player, so one evaluation simulates it once and every search node reuses
the per-frame snapshots.  Snapshots are cell-sorted so collision checks
touch only nearby bullets; bullets whose centers are off the grid go into
a trailing bucket that is always scanned.

The stepper mirrors the reference engine bit for bit (same expressions,
same iteration order); equivalence is enforced by tests.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

from ..lang.types import Script
from .compile import CompiledScript, compile_script
from .config import SimConfig

CHUNK = 64
PRUNE_ENTRIES = 2_000_000

# st layout: frame, health, n_spawners, n_bullets, overflow
ST_FRAME, ST_HEALTH, ST_NSPAWN, ST_NBULLET, ST_OVERFLOW = range(5)


@njit(cache=True)
def _sampler_step(sam, i, k):
    counter = sam[i, k, 6] + 1.0
    sam[i, k, 6] = counter
    if counter % sam[i, k, 3] != 0.0:
        return
    rate = sam[i, k, 2]
    if rate == 0.0:
        return
    lo = sam[i, k, 0]
    hi = sam[i, k, 1]
    span = hi - lo
    if span <= 0.0:
        sam[i, k, 5] = lo
        return
    value = sam[i, k, 5] + rate
    if sam[i, k, 4] == 0.0:
        wrapped = (value - lo) % span
        current = lo + wrapped
        if wrapped >= span or current >= hi:
            current = lo
        sam[i, k, 5] = current
    else:
        offset = value - lo
        if offset > span or offset < 0.0:
            periods = offset / (2.0 * span)
            if periods > 9007199254740992.0 or periods < -9007199254740992.0:
                sam[i, k, 5] = lo
                return
            value -= math.floor(periods) * (2.0 * span)
        while value > hi or value < lo:
            if value > hi:
                value = 2.0 * hi - value
            else:
                value = 2.0 * lo - value
            rate = -rate
        sam[i, k, 5] = value
        sam[i, k, 2] = rate


@njit(cache=True)
def _copy_spawner(sp_int, sp_f, sp_sam, dst, src):
    for j in range(5):
        sp_int[dst, j] = sp_int[src, j]
    for j in range(4):
        sp_f[dst, j] = sp_f[src, j]
    for a in range(7):
        for b in range(7):
            sp_sam[dst, a, b] = sp_sam[src, a, b]


@njit(cache=True)
def _make_spawner(st, sp_int, sp_f, sp_sam, samplers0, def_idx, x, y, angle, speed, frame):
    if st[ST_OVERFLOW] == 1:
        return
    ns = st[ST_NSPAWN]
    if ns >= sp_int.shape[0]:  # capacity guard; unreachable within the cap math
        return
    rad = math.radians(angle)
    ux = math.sin(rad)
    uy = math.cos(rad)
    sp_int[ns, 0] = def_idx
    sp_int[ns, 1] = 0
    sp_int[ns, 2] = 0
    sp_int[ns, 3] = 0
    sp_int[ns, 4] = frame
    sp_f[ns, 0] = x
    sp_f[ns, 1] = y
    sp_f[ns, 2] = speed * ux
    sp_f[ns, 3] = speed * uy
    for a in range(7):
        for b in range(7):
            sp_sam[ns, a, b] = samplers0[def_idx, a, b]
    if angle != 0.0:
        sp_sam[ns, 0, 0] += angle
        sp_sam[ns, 0, 1] += angle
        sp_sam[ns, 0, 5] += angle
    st[ST_NSPAWN] = ns + 1


@njit(cache=True)
def _sim_chunk(
    st,
    sp_int,
    sp_f,
    sp_sam,
    bl,
    bl_c,
    pending,
    pattern_steps,
    pattern_start,
    pattern_len,
    pattern_time,
    pattern_repeat,
    samplers0,
    boss_health_max,
    boss_x,
    boss_y,
    event_trigger,
    event_action_start,
    event_action_len,
    action_kind,
    action_ref,
    action_speed,
    action_angle,
    width,
    height,
    max_live_spawners,
    max_spawn_batch,
    max_live_bullets,
    default_bullet_radius,
    grid_cols,
    grid_rows,
    cell_w,
    cell_h,
    n_frames,
    chunk_x,
    chunk_y,
    chunk_r,
    chunk_off,
    chunk_cell_start,
    chunk_grid,
    chunk_nbhd,
    chunk_info,
    chunk_maxr,
    scratch_counts,
    scratch_fill,
    scratch_cell,
):
    ncells = grid_cols * grid_rows
    pos = 0
    chunk_off[0] = 0
    for fi in range(n_frames):
        frame = st[ST_FRAME] + 1
        st[ST_FRAME] = frame
        st[ST_HEALTH] -= 1

        # phase 2: boss events
        fraction = st[ST_HEALTH] / boss_health_max
        for e in range(event_trigger.shape[0]):
            if pending[e] == 1 and event_trigger[e] >= fraction:
                pending[e] = 0
                a0 = event_action_start[e]
                for ai in range(a0, a0 + event_action_len[e]):
                    kind = action_kind[ai]
                    if kind == 0:  # spawn ref
                        _make_spawner(
                            st,
                            sp_int,
                            sp_f,
                            sp_sam,
                            samplers0,
                            action_ref[ai],
                            boss_x,
                            boss_y,
                            action_angle[ai],
                            action_speed[ai],
                            frame,
                        )
                    elif kind == 1:  # spawn bullet
                        if st[ST_NBULLET] < max_live_bullets:
                            rad = math.radians(action_angle[ai])
                            ux = math.sin(rad)
                            uy = math.cos(rad)
                            nb = st[ST_NBULLET]
                            bl[nb, 0] = boss_x
                            bl[nb, 1] = boss_y
                            bl[nb, 2] = action_speed[ai] * ux
                            bl[nb, 3] = action_speed[ai] * uy
                            bl[nb, 4] = default_bullet_radius
                            bl_c[nb] = 0
                            st[ST_NBULLET] = nb + 1
                    elif kind == 2:  # clear ref
                        w = 0
                        for i in range(st[ST_NSPAWN]):
                            if sp_int[i, 0] != action_ref[ai]:
                                if w != i:
                                    _copy_spawner(sp_int, sp_f, sp_sam, w, i)
                                w += 1
                        st[ST_NSPAWN] = w
                    elif kind == 3:  # clear bullets
                        st[ST_NBULLET] = 0
                    else:  # clear spawners
                        st[ST_NSPAWN] = 0

        # phase 3: spawner execution (entities born before this frame)
        n3 = st[ST_NSPAWN]
        for i in range(n3):
            if sp_int[i, 4] >= frame:
                continue
            sp_int[i, 3] += 1
            didx = sp_int[i, 0]
            if sp_int[i, 3] >= pattern_time[didx]:
                sp_int[i, 3] = 0
                pstep = pattern_steps[pattern_start[didx] + sp_int[i, 1]]
                if pstep != 1:  # not wait
                    count = int(math.floor(sp_sam[i, 2, 5] + 0.5))
                    if count > max_spawn_batch:
                        count = max_spawn_batch
                    if count > 0:
                        center = sp_sam[i, 0, 5]
                        arc = sp_sam[i, 3, 5]
                        offs = sp_sam[i, 1, 5]
                        speed = sp_sam[i, 4, 5]
                        full = arc >= 360.0
                        start_a = center - arc / 2.0
                        for ci in range(count):
                            if full:
                                ang = center + 360.0 * ci / count
                            else:
                                ang = start_a + arc * (ci + 0.5) / count
                            rad = math.radians(ang)
                            ux = math.sin(rad)
                            uy = math.cos(rad)
                            x = sp_f[i, 0] + offs * ux
                            y = sp_f[i, 1] + offs * uy
                            if pstep == 0:  # bullet
                                if st[ST_NBULLET] < max_live_bullets:
                                    color = int(math.floor(sp_sam[i, 6, 5] + 0.5))
                                    if color < 0:
                                        color = 0
                                    if color > 5:
                                        color = 5
                                    nb = st[ST_NBULLET]
                                    bl[nb, 0] = x
                                    bl[nb, 1] = y
                                    bl[nb, 2] = speed * ux
                                    bl[nb, 3] = speed * uy
                                    bl[nb, 4] = sp_sam[i, 5, 5]
                                    bl_c[nb] = color
                                    st[ST_NBULLET] = nb + 1
                            else:
                                _make_spawner(
                                    st,
                                    sp_int,
                                    sp_f,
                                    sp_sam,
                                    samplers0,
                                    pstep - 2,
                                    x,
                                    y,
                                    ang,
                                    speed,
                                    frame,
                                )
                sp_int[i, 1] += 1
                if sp_int[i, 1] >= pattern_len[didx]:
                    sp_int[i, 1] = 0
                    sp_int[i, 2] += 1
            for k in range(7):
                _sampler_step(sp_sam, i, k)

        # phase 4: motion and removal
        nb = st[ST_NBULLET]
        w = 0
        for i in range(nb):
            x = bl[i, 0] + bl[i, 2]
            y = bl[i, 1] + bl[i, 3]
            r = bl[i, 4]
            if x + r >= 0.0 and x - r <= width and y + r >= 0.0 and y - r <= height:
                bl[w, 0] = x
                bl[w, 1] = y
                bl[w, 2] = bl[i, 2]
                bl[w, 3] = bl[i, 3]
                bl[w, 4] = r
                bl_c[w] = bl_c[i]
                w += 1
        st[ST_NBULLET] = w
        ns = st[ST_NSPAWN]
        w = 0
        for i in range(ns):
            sp_f[i, 0] += sp_f[i, 2]
            sp_f[i, 1] += sp_f[i, 3]
            rep = pattern_repeat[sp_int[i, 0]]
            if rep < 0 or sp_int[i, 2] < rep:
                if w != i:
                    _copy_spawner(sp_int, sp_f, sp_sam, w, i)
                w += 1
        st[ST_NSPAWN] = w

        # phase 6 flag (the player phases live outside the world)
        if st[ST_NSPAWN] > max_live_spawners:
            st[ST_OVERFLOW] = 1

        # per-frame snapshot, cell-sorted with a trailing off-grid bucket
        nb = st[ST_NBULLET]
        for c in range(ncells + 1):
            scratch_counts[c] = 0
        maxr = 0.0
        for i in range(nb):
            col = int(bl[i, 0] // cell_w)
            row = int(bl[i, 1] // cell_h)
            if 0 <= col < grid_cols and 0 <= row < grid_rows:
                c = row * grid_cols + col
            else:
                c = ncells
            scratch_cell[i] = c
            scratch_counts[c] += 1
            if bl[i, 4] > maxr:
                maxr = bl[i, 4]
        occ = 0
        for c in range(ncells):
            v = scratch_counts[c]
            chunk_grid[fi, c] = v
            if v > 0:
                occ += 1
        run = 0
        for c in range(ncells + 1):
            chunk_cell_start[fi, c] = run
            scratch_fill[c] = run
            run += scratch_counts[c]
        chunk_cell_start[fi, ncells + 1] = run
        base = pos
        for i in range(nb):
            d = scratch_fill[scratch_cell[i]]
            scratch_fill[scratch_cell[i]] = d + 1
            chunk_x[base + d] = bl[i, 0]
            chunk_y[base + d] = bl[i, 1]
            chunk_r[base + d] = bl[i, 4]
        pos = base + nb
        chunk_off[fi + 1] = pos
        for rr in range(grid_rows):
            for cc in range(grid_cols):
                total = 0
                for dr in range(-1, 2):
                    nr = rr + dr
                    if nr < 0 or nr >= grid_rows:
                        continue
                    for dc in range(-1, 2):
                        nc = cc + dc
                        if 0 <= nc < grid_cols:
                            total += chunk_grid[fi, nr * grid_cols + nc]
                chunk_nbhd[fi, rr * grid_cols + cc] = total
        chunk_info[fi, 0] = nb
        chunk_info[fi, 1] = st[ST_NSPAWN]
        chunk_info[fi, 2] = st[ST_OVERFLOW]
        chunk_info[fi, 3] = occ
        chunk_maxr[fi] = maxr


@njit(cache=True)
def _collides(
    pool_x,
    pool_y,
    pool_r,
    frame_offset,
    cell_start,
    maxr,
    frame,
    px,
    py,
    pr,
    cell_w,
    cell_h,
    grid_cols,
    grid_rows,
):
    ncells = grid_cols * grid_rows
    base = frame_offset[frame]
    if frame_offset[frame + 1] == base:
        return False
    reach = pr + maxr[frame]
    c0 = int((px - reach) // cell_w)
    c1 = int((px + reach) // cell_w)
    r0 = int((py - reach) // cell_h)
    r1 = int((py + reach) // cell_h)
    if c0 < 0:
        c0 = 0
    if r0 < 0:
        r0 = 0
    if c1 >= grid_cols:
        c1 = grid_cols - 1
    if r1 >= grid_rows:
        r1 = grid_rows - 1
    for rr in range(r0, r1 + 1):
        row_base = rr * grid_cols
        for cc in range(c0, c1 + 1):
            cell = row_base + cc
            for i in range(cell_start[frame, cell], cell_start[frame, cell + 1]):
                dx = pool_x[base + i] - px
                dy = pool_y[base + i] - py
                rad = pr + pool_r[base + i]
                if dx * dx + dy * dy < rad * rad:
                    return True
    for i in range(cell_start[frame, ncells], cell_start[frame, ncells + 1]):
        dx = pool_x[base + i] - px
        dy = pool_y[base + i] - py
        rad = pr + pool_r[base + i]
        if dx * dx + dy * dy < rad * rad:
            return True
    return False


class WorldTimeline:
    """Lazily simulated, frame-indexed world history for one script."""

    def __init__(self, script: Script, cfg: SimConfig | None = None):
        self.cfg = cfg = cfg or SimConfig()
        self.cs: CompiledScript = compile_script(script, cfg.screen_width, cfg.screen_height)
        self.end_frame = self.cs.boss_health
        self.ncells = cfg.grid_cols * cfg.grid_rows

        n_spawners = len(self.cs.sids)
        s_cap = cfg.max_live_spawners * (cfg.max_spawn_batch + 1) + 4 * max(
            1, len(self.cs.action_kind)
        )
        self._st = np.zeros(5, dtype=np.int64)
        self._st[ST_HEALTH] = self.cs.boss_health
        self._sp_int = np.zeros((s_cap, 5), dtype=np.int64)
        self._sp_f = np.zeros((s_cap, 4), dtype=np.float64)
        self._sp_sam = np.zeros((s_cap, 7, 7), dtype=np.float64)
        self._bl = np.zeros((cfg.max_live_bullets, 5), dtype=np.float64)
        self._bl_c = np.zeros(cfg.max_live_bullets, dtype=np.int64)
        self._pending = np.ones(len(self.cs.event_trigger), dtype=np.int64)
        if n_spawners == 0:
            raise ValueError("script has no spawners")

        frames = self.end_frame + 1
        self.frame_offset = np.zeros(frames + 1, dtype=np.int64)
        self.cell_start = np.zeros((frames, self.ncells + 2), dtype=np.int64)
        self.grid = np.zeros((frames, self.ncells), dtype=np.int64)
        self.nbhd = np.zeros((frames, self.ncells), dtype=np.int64)
        self.bullet_count = np.zeros(frames, dtype=np.int64)
        self.spawner_count = np.zeros(frames, dtype=np.int64)
        self.overflow = np.zeros(frames, dtype=np.int64)
        self.occupied = np.zeros(frames, dtype=np.int64)
        self.max_radius = np.zeros(frames, dtype=np.float64)

        self.pool_x = np.empty(4096, dtype=np.float64)
        self.pool_y = np.empty(4096, dtype=np.float64)
        self.pool_r = np.empty(4096, dtype=np.float64)
        self.pool_n = 0
        self.base_frame = 0  # snapshots for frames below this were pruned
        self.simulated = 0

        b_cap = cfg.max_live_bullets
        self._chunk_x = np.empty(CHUNK * b_cap, dtype=np.float64)
        self._chunk_y = np.empty(CHUNK * b_cap, dtype=np.float64)
        self._chunk_r = np.empty(CHUNK * b_cap, dtype=np.float64)
        self._chunk_off = np.zeros(CHUNK + 1, dtype=np.int64)
        self._chunk_cell_start = np.zeros((CHUNK, self.ncells + 2), dtype=np.int64)
        self._chunk_grid = np.zeros((CHUNK, self.ncells), dtype=np.int64)
        self._chunk_nbhd = np.zeros((CHUNK, self.ncells), dtype=np.int64)
        self._chunk_info = np.zeros((CHUNK, 4), dtype=np.int64)
        self._chunk_maxr = np.zeros(CHUNK, dtype=np.float64)
        self._scratch_counts = np.zeros(self.ncells + 1, dtype=np.int64)
        self._scratch_fill = np.zeros(self.ncells + 1, dtype=np.int64)
        self._scratch_cell = np.zeros(b_cap, dtype=np.int64)

    def ensure(self, frame: int) -> None:
        """Simulate the world through `frame` (clamped to the level end)."""
        target = min(frame, self.end_frame)
        cfg = self.cfg
        cs = self.cs
        while self.simulated < target:
            n = min(CHUNK, target - self.simulated)
            _sim_chunk(
                self._st,
                self._sp_int,
                self._sp_f,
                self._sp_sam,
                self._bl,
                self._bl_c,
                self._pending,
                cs.pattern_steps,
                cs.pattern_start,
                cs.pattern_len,
                cs.pattern_time,
                cs.pattern_repeat,
                cs.samplers,
                cs.boss_health,
                cs.boss_x,
                cs.boss_y,
                cs.event_trigger,
                cs.event_action_start,
                cs.event_action_len,
                cs.action_kind,
                cs.action_ref,
                cs.action_speed,
                cs.action_angle,
                float(cfg.screen_width),
                float(cfg.screen_height),
                cfg.max_live_spawners,
                cfg.max_spawn_batch,
                cfg.max_live_bullets,
                cs.default_bullet_radius,
                cfg.grid_cols,
                cfg.grid_rows,
                cfg.cell_width,
                cfg.cell_height,
                n,
                self._chunk_x,
                self._chunk_y,
                self._chunk_r,
                self._chunk_off,
                self._chunk_cell_start,
                self._chunk_grid,
                self._chunk_nbhd,
                self._chunk_info,
                self._chunk_maxr,
                self._scratch_counts,
                self._scratch_fill,
                self._scratch_cell,
            )
            lo = self.simulated + 1
            hi = self.simulated + n
            total = int(self._chunk_off[n])
            self._grow_pools(self.pool_n + total)
            self.pool_x[self.pool_n : self.pool_n + total] = self._chunk_x[:total]
            self.pool_y[self.pool_n : self.pool_n + total] = self._chunk_y[:total]
            self.pool_r[self.pool_n : self.pool_n + total] = self._chunk_r[:total]
            self.frame_offset[lo : hi + 2] = self.pool_n + self._chunk_off[: n + 1]
            self.pool_n += total
            self.cell_start[lo : hi + 1] = self._chunk_cell_start[:n]
            self.grid[lo : hi + 1] = self._chunk_grid[:n]
            self.nbhd[lo : hi + 1] = self._chunk_nbhd[:n]
            self.bullet_count[lo : hi + 1] = self._chunk_info[:n, 0]
            self.spawner_count[lo : hi + 1] = self._chunk_info[:n, 1]
            self.overflow[lo : hi + 1] = self._chunk_info[:n, 2]
            self.occupied[lo : hi + 1] = self._chunk_info[:n, 3]
            self.max_radius[lo : hi + 1] = self._chunk_maxr[:n]
            self.simulated = hi

    def release(self, frame: int) -> None:
        """Snapshots below `frame` are no longer needed; prune if large."""
        frame = min(frame, self.simulated)
        if frame <= self.base_frame:
            return
        cut = int(self.frame_offset[frame])
        if cut < PRUNE_ENTRIES:
            return
        keep = self.pool_n - cut
        self.pool_x[:keep] = self.pool_x[cut : self.pool_n]
        self.pool_y[:keep] = self.pool_y[cut : self.pool_n]
        self.pool_r[:keep] = self.pool_r[cut : self.pool_n]
        self.pool_n = keep
        self.frame_offset[frame : self.simulated + 2] -= cut
        self.frame_offset[:frame] = 0
        self.base_frame = frame

    def _grow_pools(self, need: int) -> None:
        cap = len(self.pool_x)
        if need <= cap:
            return
        while cap < need:
            cap *= 2
        for name in ("pool_x", "pool_y", "pool_r"):
            old = getattr(self, name)
            new = np.empty(cap, dtype=np.float64)
            new[: self.pool_n] = old[: self.pool_n]
            setattr(self, name, new)

    def collides(self, frame: int, px: float, py: float) -> bool:
        """Player circle vs the frame's bullet snapshot."""
        if frame < self.base_frame or frame > self.simulated:
            raise ValueError("frame outside the simulated window")
        return bool(
            _collides(
                self.pool_x,
                self.pool_y,
                self.pool_r,
                self.frame_offset,
                self.cell_start,
                self.max_radius,
                frame,
                px,
                py,
                self.cfg.player_radius,
                self.cfg.cell_width,
                self.cfg.cell_height,
                self.cfg.grid_cols,
                self.cfg.grid_rows,
            )
        )

    def bullets_at(self, frame: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Cell-sorted bullet snapshot (x, y, radius) for equivalence tests."""
        if frame < self.base_frame or frame > self.simulated:
            raise ValueError("frame outside the simulated window")
        lo = self.frame_offset[frame]
        hi = self.frame_offset[frame + 1]
        return self.pool_x[lo:hi], self.pool_y[lo:hi], self.pool_r[lo:hi]

    def grid_at(self, frame: int) -> np.ndarray:
        return self.grid[frame].reshape(self.cfg.grid_rows, self.cfg.grid_cols)

    def window_empty(self, lo: int, hi: int) -> bool:
        """True when no bullets exist on frames lo..hi (clamped to the end)."""
        lo = max(lo, 0)
        hi = min(hi, self.end_frame)
        if lo > hi:
            return True
        return not self.bullet_count[lo : hi + 1].any()
