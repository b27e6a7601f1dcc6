"""Archive mechanics, generation loop, and persistence."""
from __future__ import annotations

import hashlib
import json
import random
from types import SimpleNamespace

import pytest

from talakat.agent import AgentConfig, make_evaluator
from talakat.genotype import Chromosome, random_chromosome
from talakat.qd import (
    Archive,
    ArchiveConfig,
    Cell,
    Member,
    archive_hash,
    check_constraints,
    fitness,
    init_archive,
    load_archive,
    run_generation,
    save_archive,
)
from talakat.sim import SimConfig


def fake_result(bins, fit, feasible, seed=0):
    return SimpleNamespace(
        bins=tuple(bins),
        fitness=fit,
        feasible=feasible,
        trace=SimpleNamespace(agent={"seed": seed}),
    )


def hash_evaluator(chromosome, seed):
    """Deterministic pure stand-in for the real agent evaluation."""
    h = hashlib.sha256(chromosome.to_text().encode()).digest()
    return fake_result(
        (h[0] % 11, h[1] % 11, h[2] % 11),
        h[3] / 255.0,
        h[4] % 4 == 0,
        seed,
    )


def fake_trace(survived, remaining, ten_plus, any_bullet, max_spawners=1):
    return SimpleNamespace(
        frames_survived=survived,
        remaining_boss_health=remaining,
        frames_with_ten_plus_bullets=ten_plus,
        frames_with_any_bullet=any_bullet,
        max_live_spawners_seen=max_spawners,
    )


def member(fit, feasible, chromosome=None):
    c = chromosome or random_chromosome(random.Random(0))
    return Member(c, fit, feasible, 0)


class TestConstraints:
    def test_zero_survival_infeasible(self):
        assert not check_constraints(fake_trace(0, 100, 0, 0))

    def test_overflow_infeasible_regardless_of_bullets(self):
        trace = fake_trace(100, 0, 100, 100, max_spawners=101)
        assert not check_constraints(trace)

    def test_dense_majority_feasible(self):
        assert check_constraints(fake_trace(100, 0, 60, 80))
        assert not check_constraints(fake_trace(100, 0, 50, 80))  # strict >

    def test_full_survival_fitness_one(self):
        trace = fake_trace(3000, 0, 2000, 2500)
        assert fitness(trace, True) == 1.0

    def test_infeasible_scaling(self):
        trace = fake_trace(500, 500, 100, 200)
        assert fitness(trace, False) == pytest.approx(0.5 * 0.4)
        assert fitness(trace, True) == pytest.approx(0.5)

    def test_ten_plus_variant(self):
        trace = fake_trace(500, 500, 100, 200)
        assert fitness(trace, False, use_ten_plus=True) == pytest.approx(0.5 * 0.2)

    def test_dead_at_frame_zero(self):
        trace = fake_trace(0, 1000, 0, 0)
        assert fitness(trace, True) == 0.0
        assert fitness(trace, False) == 0.0


class TestPlace:
    def test_first_placement_creates_cell(self):
        archive = Archive()
        c = random_chromosome(random.Random(1))
        placement = archive.place(c, fake_result((8, 2, 5), 0.4, True, seed=7))
        assert placement.key == (8, 2, 5)
        assert placement.cell_total == 1
        assert list(archive.cells) == [(8, 2, 5)]
        stored = archive.cells[(8, 2, 5)].feasible[0]
        assert stored.chromosome == c and stored.seed == 7

    def test_same_bins_share_cell_sorted(self):
        archive = Archive()
        rng = random.Random(2)
        for fit in (0.3, 0.9, 0.6):
            archive.place(random_chromosome(rng), fake_result((1, 1, 1), fit, True))
        fits = [m.fitness for m in archive.cells[(1, 1, 1)].feasible]
        assert fits == [0.9, 0.6, 0.3]

    def test_equal_fitness_keeps_arrival_order(self):
        archive = Archive()
        a = random_chromosome(random.Random(3))
        b = random_chromosome(random.Random(4))
        archive.place(a, fake_result((0, 0, 0), 0.5, False))
        archive.place(b, fake_result((0, 0, 0), 0.5, False))
        cell = archive.cells[(0, 0, 0)]
        assert [m.chromosome for m in cell.infeasible] == [a, b]

    def test_bad_bins_rejected(self):
        archive = Archive()
        c = random_chromosome(random.Random(5))
        with pytest.raises(ValueError):
            archive.place(c, fake_result((11, 0, 0), 0.1, True))


class TestSelectParent:
    def test_single_member(self):
        archive = Archive()
        c = random_chromosome(random.Random(1))
        archive.place(c, fake_result((5, 5, 5), 0.5, True))
        rng = random.Random(9)
        assert all(archive.select_parent(rng) == c for _ in range(20))

    def test_two_member_rank_weights(self):
        archive = Archive()
        best = random_chromosome(random.Random(1))
        worst = random_chromosome(random.Random(2))
        archive.place(best, fake_result((0, 0, 0), 0.9, True))
        archive.place(worst, fake_result((0, 0, 0), 0.1, True))
        rng = random.Random(33)
        hits = sum(archive.select_parent(rng) == best for _ in range(10_000))
        assert abs(hits / 10_000 - 2 / 3) < 0.03

    def test_three_member_rank_weights(self):
        archive = Archive()
        rng_mk = random.Random(6)
        members = [random_chromosome(rng_mk) for _ in range(3)]
        for c, fit in zip(members, (0.9, 0.5, 0.1)):
            archive.place(c, fake_result((2, 2, 2), fit, True))
        rng = random.Random(44)
        counts = {0: 0, 1: 0, 2: 0}
        for _ in range(10_000):
            counts[members.index(archive.select_parent(rng))] += 1
        for idx, expect in ((0, 3 / 6), (1, 2 / 6), (2, 1 / 6)):
            assert abs(counts[idx] / 10_000 - expect) < 0.03

    def test_feasible_outranks_fitter_infeasible(self):
        archive = Archive()
        feas = random_chromosome(random.Random(1))
        infeas = random_chromosome(random.Random(2))
        archive.place(feas, fake_result((3, 3, 3), 0.2, True))
        archive.place(infeas, fake_result((3, 3, 3), 0.9, False))
        rng = random.Random(55)
        hits = sum(archive.select_parent(rng) == feas for _ in range(10_000))
        assert abs(hits / 10_000 - 2 / 3) < 0.03

    def test_cells_drawn_uniformly(self):
        archive = Archive()
        lone = random_chromosome(random.Random(1))
        archive.place(lone, fake_result((0, 0, 0), 0.5, True))
        rng_mk = random.Random(7)
        for fit in (0.9, 0.5, 0.1):
            archive.place(random_chromosome(rng_mk), fake_result((9, 9, 9), fit, True))
        rng = random.Random(66)
        hits = sum(archive.select_parent(rng) == lone for _ in range(10_000))
        assert abs(hits / 10_000 - 0.5) < 0.03

    def test_empty_archive_raises(self):
        with pytest.raises(ValueError):
            Archive().select_parent(random.Random(0))


class TestEliteCount:
    def test_empty(self):
        assert Archive().elite_count() == 0

    def test_counts_only_feasible_perfect_best(self):
        archive = Archive()
        rng = random.Random(8)
        archive.place(random_chromosome(rng), fake_result((1, 1, 1), 1.0, True))
        archive.place(random_chromosome(rng), fake_result((2, 2, 2), 1.0, False))
        archive.place(random_chromosome(rng), fake_result((3, 3, 3), 0.99, True))
        assert archive.elite_count() == 1

    def test_matches_full_scan(self):
        archive = Archive()
        rng = random.Random(101)
        for _ in range(300):
            fit = rng.choice([0.25, 0.5, 1.0])
            bins = (rng.randrange(11), rng.randrange(11), rng.randrange(11))
            archive.place(random_chromosome(rng), fake_result(bins, fit, rng.random() < 0.5))
        expected = 0
        for cell in archive.cells.values():
            best = max((m.fitness for m in cell.feasible), default=0.0)
            expected += best == 1.0
        assert archive.elite_count() == expected


class TestTrim:
    def fill(self, n_feasible, n_infeasible):
        archive = Archive()
        rng = random.Random(11)
        for i in range(n_feasible):
            archive.place(random_chromosome(rng), fake_result((4, 4, 4), 1 - i / 100, True))
        for i in range(n_infeasible):
            archive.place(random_chromosome(rng), fake_result((4, 4, 4), 1 - i / 100, False))
        return archive

    def test_infeasible_drained_first(self):
        archive = self.fill(30, 25)
        archive.trim()
        cell = archive.cells[(4, 4, 4)]
        assert len(cell.feasible) == 30 and len(cell.infeasible) == 20

    def test_feasible_trimmed_only_after(self):
        archive = self.fill(60, 5)
        archive.trim()
        cell = archive.cells[(4, 4, 4)]
        assert len(cell.infeasible) == 0 and len(cell.feasible) == 50
        # worst went first: survivors are the 50 best
        assert min(m.fitness for m in cell.feasible) == pytest.approx(1 - 49 / 100)


class TestRunGeneration:
    def small_config(self, **kw):
        base = dict(matings_per_generation=20, initial_population=10)
        base.update(kw)
        return ArchiveConfig(**base)

    def test_rejects_empty_archive(self):
        archive = Archive()
        with pytest.raises(ValueError):
            run_generation(archive, hash_evaluator, random.Random(0))

    def test_two_runs_identical(self):
        def once():
            rng = random.Random(77)
            archive = init_archive(hash_evaluator, rng, self.small_config())
            for _ in range(3):
                run_generation(archive, hash_evaluator, rng)
            return archive_hash(archive)

        assert once() == once()

    def test_seed_schedule(self):
        seeds = []

        def recorder(chromosome, seed):
            seeds.append(seed)
            return hash_evaluator(chromosome, seed)

        rng = random.Random(5)
        archive = init_archive(recorder, rng, self.small_config())
        run_generation(archive, recorder, rng)
        run_generation(archive, recorder, rng)
        assert seeds[:10] == list(range(10))
        assert seeds[10:30] == [100_000 + e for e in range(20)]
        assert seeds[30:] == [200_000 + e for e in range(20)]

    def test_elitism_when_children_are_worse(self):
        archive = Archive(config=self.small_config(capacity=50))
        rng_mk = random.Random(30)
        for i in range(50):
            archive.place(
                random_chromosome(rng_mk), fake_result((6, 6, 6), 0.9 - i / 1000, True)
            )
        before = [(m.chromosome, m.fitness) for m in archive.cells[(6, 6, 6)].feasible]

        def weak(chromosome, seed):
            return fake_result((6, 6, 6), 0.1, False, seed)

        run_generation(archive, weak, random.Random(1))
        cell = archive.cells[(6, 6, 6)]
        assert [(m.chromosome, m.fitness) for m in cell.feasible] == before
        assert cell.infeasible == []

    def test_rollback_on_evaluator_failure(self):
        rng = random.Random(13)
        archive = init_archive(hash_evaluator, rng, self.small_config())
        generation_before = archive.generation
        hash_before = archive_hash(archive)
        calls = {"n": 0}

        def flaky(chromosome, seed):
            calls["n"] += 1
            if calls["n"] == 7:
                raise RuntimeError("evaluation died")
            return hash_evaluator(chromosome, seed)

        with pytest.raises(RuntimeError):
            run_generation(archive, flaky, rng)
        assert archive.generation == generation_before
        assert archive_hash(archive) == hash_before

    def test_parents_retained_and_report(self):
        rng = random.Random(21)
        archive = init_archive(hash_evaluator, rng, self.small_config())
        before = {
            (key, m.chromosome)
            for key, cell in archive.cells.items()
            for m in cell.ranked()
        }
        report = run_generation(archive, hash_evaluator, rng)
        after = {
            (key, m.chromosome)
            for key, cell in archive.cells.items()
            for m in cell.ranked()
        }
        assert before <= after  # capacity never binds at these sizes
        assert report.generation == 1
        assert report.children_evaluated == 20
        assert report.total_members == archive.total_members() == 30
        assert report.elite_count == archive.elite_count()
        assert report.cell_sizes == archive.cell_sizes()
        assert 0 <= report.feasible_children <= 20

    def test_new_elites_counted(self):
        archive = Archive(config=self.small_config())
        rng_mk = random.Random(3)
        archive.place(random_chromosome(rng_mk), fake_result((5, 5, 5), 0.5, True))

        def perfect(chromosome, seed):
            h = hashlib.sha256(chromosome.to_text().encode()).digest()
            return fake_result((h[0] % 11, h[1] % 11, h[2] % 11), 1.0, True, seed)

        report = run_generation(archive, perfect, random.Random(2))
        assert report.elite_count == archive.elite_count()
        assert report.new_elites == report.elite_count  # none existed before
        assert report.elite_count >= 1


class TestInitArchive:
    def test_population_conserved(self):
        rng = random.Random(50)
        archive = init_archive(hash_evaluator, rng, ArchiveConfig(initial_population=100))
        assert archive.total_members() == 100
        assert archive.generation == 0

    def test_deterministic(self):
        cfg = ArchiveConfig(initial_population=40)
        a = init_archive(hash_evaluator, random.Random(9), cfg)
        b = init_archive(hash_evaluator, random.Random(9), cfg)
        assert archive_hash(a) == archive_hash(b)

    def test_zero_initial_rejected_later(self):
        archive = init_archive(hash_evaluator, random.Random(1), n=0)
        assert archive.total_members() == 0
        with pytest.raises(ValueError):
            run_generation(archive, hash_evaluator, random.Random(2))


class TestStore:
    def build(self):
        rng = random.Random(17)
        archive = init_archive(
            hash_evaluator, rng, ArchiveConfig(initial_population=30)
        )
        run_generation(archive, hash_evaluator, rng)
        return archive, rng

    def test_round_trip(self, tmp_path):
        archive, rng = self.build()
        save_archive(archive, tmp_path, rng_state=rng.getstate())
        loaded, state = load_archive(tmp_path)
        assert archive_hash(loaded) == archive_hash(archive)
        assert loaded.generation == archive.generation
        assert loaded.config == archive.config
        fresh = random.Random()
        fresh.setstate(state)
        assert fresh.random() == rng.random()

    def test_resumed_run_matches_uninterrupted(self, tmp_path):
        archive, rng = self.build()
        save_archive(archive, tmp_path, rng_state=rng.getstate())
        run_generation(archive, hash_evaluator, rng)
        straight = archive_hash(archive)

        loaded, state = load_archive(tmp_path)
        resumed_rng = random.Random()
        resumed_rng.setstate(state)
        run_generation(loaded, hash_evaluator, resumed_rng)
        assert archive_hash(loaded) == straight

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_archive(tmp_path / "nope")

    def test_version_check(self, tmp_path):
        archive, _ = self.build()
        save_archive(archive, tmp_path)
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        manifest["version"] = 99
        (tmp_path / "manifest.json").write_text(json.dumps(manifest))
        with pytest.raises(ValueError):
            load_archive(tmp_path)

    def test_save_clears_stale_cells(self, tmp_path):
        archive, _ = self.build()
        save_archive(archive, tmp_path)
        small = Archive(config=archive.config)
        small.place(
            random_chromosome(random.Random(4)), fake_result((0, 0, 0), 0.5, True)
        )
        save_archive(small, tmp_path)
        loaded, _ = load_archive(tmp_path)
        assert archive_hash(loaded) == archive_hash(small)


class TestRealPipeline:
    def test_small_run_deterministic_and_sound(self):
        sim_cfg = SimConfig()
        agent_cfg = AgentConfig.named(strategy="low", dexterity="low")
        evaluator = make_evaluator(agent_cfg, sim_cfg)
        cfg = ArchiveConfig(matings_per_generation=12, initial_population=8)

        def once():
            rng = random.Random(3)
            archive = init_archive(evaluator, rng, cfg)
            run_generation(archive, evaluator, rng)
            return archive

        archive = once()
        assert archive.total_members() == 20
        assert archive_hash(once()) == archive_hash(archive)

        key, cell = next(iter(sorted(archive.cells.items())))
        probe = cell.ranked()[0]
        again = evaluator(probe.chromosome, probe.seed)
        assert tuple(again.bins) == key
        assert again.fitness == probe.fitness
        assert again.feasible == probe.feasible
