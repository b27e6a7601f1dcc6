"""Generation loop: seeded mating events over the archive.

The evaluator is a callable `(chromosome, seed) -> EvaluationResult`; the
archive layer never imports the agent, so simulation wiring stays with the
caller.  Every evaluation seed is derived from the event index, which makes
whole runs reproducible and lets the events run concurrently if wanted.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from ..genotype import crossover, mutate, random_chromosome
from .archive import Archive, ArchiveConfig, CellKey

# seed block per generation; matings per generation stays far below this
SEED_STRIDE = 100_000


@dataclass(frozen=True)
class GenerationReport:
    generation: int
    elite_count: int
    new_elites: int
    children_evaluated: int
    feasible_children: int
    total_members: int
    cell_sizes: dict[CellKey, tuple[int, int]]

    def to_dict(self) -> dict:
        return {
            "generation": self.generation,
            "eliteCount": self.elite_count,
            "newElites": self.new_elites,
            "childrenEvaluated": self.children_evaluated,
            "feasibleChildren": self.feasible_children,
            "totalMembers": self.total_members,
            "cellSizes": {",".join(map(str, k)): list(v) for k, v in self.cell_sizes.items()},
        }


def init_archive(evaluator, rng: random.Random, config: ArchiveConfig | None = None,
                 n: int | None = None) -> Archive:
    """Seed the archive with uniformly random chromosomes."""
    config = config or ArchiveConfig()
    count = config.initial_population if n is None else n
    archive = Archive(config=config)
    for i in range(count):
        chromosome = random_chromosome(rng)
        archive.place(chromosome, evaluator(chromosome, i))
    return archive


def run_generation(archive: Archive, evaluator, rng: random.Random) -> GenerationReport:
    """Run one generation of mating events, then trim cells to capacity.

    Parents are only read, never removed, so every survivor of trimming is
    carried over unchanged.  If the evaluator raises, the archive rolls back
    to its state before the generation started.
    """
    if archive.total_members() == 0:
        raise ValueError("archive is empty; initialize it first")
    snap = archive.snapshot()
    elites_before = archive.elite_count()
    feasible_children = 0
    cfg = archive.config
    try:
        for event in range(cfg.matings_per_generation):
            if rng.random() < cfg.crossover_prob:
                child = crossover(
                    archive.select_parent(rng), archive.select_parent(rng), rng
                )
            else:
                child = mutate(archive.select_parent(rng), rng)
            seed = (archive.generation + 1) * SEED_STRIDE + event
            result = evaluator(child, seed)
            archive.place(child, result)
            feasible_children += bool(result.feasible)
    except Exception:
        archive.restore(snap)
        raise
    archive.trim()
    archive.generation += 1
    elites_after = archive.elite_count()
    return GenerationReport(
        generation=archive.generation,
        elite_count=elites_after,
        new_elites=elites_after - elites_before,
        children_evaluated=cfg.matings_per_generation,
        feasible_children=feasible_children,
        total_members=archive.total_members(),
        cell_sizes=archive.cell_sizes(),
    )
