"""Constrained MAP-Elites archive.

The archive is an 11x11x11 map over (entropy, risk, distribution) bins.
Each cell keeps two populations, feasible and infeasible, sharing one
capacity.  Placement never evicts; trimming happens once per generation,
dropping the worst members and draining the infeasible side first.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from ..genotype import Chromosome

BINS_PER_AXIS = 11
CELL_CAPACITY = 50

CellKey = tuple[int, int, int]


@dataclass(frozen=True)
class ArchiveConfig:
    capacity: int = CELL_CAPACITY
    crossover_prob: float = 0.7
    mutation_prob: float = 0.3
    matings_per_generation: int = 100
    initial_population: int = 100
    use_ten_plus_fitness: bool = False

    def __post_init__(self) -> None:
        if self.capacity < 1:
            raise ValueError("capacity must be positive")
        if abs(self.crossover_prob + self.mutation_prob - 1.0) > 1e-9:
            raise ValueError("crossover and mutation probabilities must sum to 1")
        if self.matings_per_generation < 1 or self.initial_population < 0:
            raise ValueError("bad generation sizing")

    def to_dict(self) -> dict:
        return {
            "capacity": self.capacity,
            "crossoverProb": self.crossover_prob,
            "mutationProb": self.mutation_prob,
            "matingsPerGeneration": self.matings_per_generation,
            "initialPopulation": self.initial_population,
            "useTenPlusFitness": self.use_ten_plus_fitness,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ArchiveConfig":
        return cls(
            capacity=int(data.get("capacity", CELL_CAPACITY)),
            crossover_prob=float(data.get("crossoverProb", 0.7)),
            mutation_prob=float(data.get("mutationProb", 0.3)),
            matings_per_generation=int(data.get("matingsPerGeneration", 100)),
            initial_population=int(data.get("initialPopulation", 100)),
            use_ten_plus_fitness=bool(data.get("useTenPlusFitness", False)),
        )


@dataclass
class Member:
    chromosome: Chromosome
    fitness: float
    feasible: bool
    seed: int


@dataclass
class Cell:
    feasible: list[Member] = field(default_factory=list)
    infeasible: list[Member] = field(default_factory=list)

    def total(self) -> int:
        return len(self.feasible) + len(self.infeasible)

    def ranked(self) -> list[Member]:
        """Best to worst: feasible members outrank every infeasible one."""
        return self.feasible + self.infeasible

    def insert(self, member: Member) -> None:
        items = self.feasible if member.feasible else self.infeasible
        i = 0
        while i < len(items) and items[i].fitness >= member.fitness:
            i += 1
        items.insert(i, member)

    def copy(self) -> "Cell":
        return Cell(
            [replace(m) for m in self.feasible],
            [replace(m) for m in self.infeasible],
        )


@dataclass(frozen=True)
class Placement:
    key: CellKey
    feasible: bool
    cell_total: int


@dataclass
class Archive:
    config: ArchiveConfig = field(default_factory=ArchiveConfig)
    rng_seed: int = 0
    generation: int = 0
    cells: dict[CellKey, Cell] = field(default_factory=dict)

    def total_members(self) -> int:
        return sum(c.total() for c in self.cells.values())

    def place(self, chromosome: Chromosome, result) -> Placement:
        """File an evaluated chromosome under its metric bins; no eviction."""
        key = tuple(result.bins)
        if len(key) != 3 or not all(0 <= b < BINS_PER_AXIS for b in key):
            raise ValueError(f"bins {key} outside the archive")
        agent = getattr(result.trace, "agent", None) or {}
        member = Member(chromosome, result.fitness, result.feasible, int(agent.get("seed", 0)))
        cell = self.cells.setdefault(key, Cell())
        cell.insert(member)
        return Placement(key=key, feasible=result.feasible, cell_total=cell.total())

    def select_parent(self, rng: random.Random) -> Chromosome:
        """Uniform non-empty cell, then linear rank inside it.

        Members are ranked best to worst with feasible above infeasible;
        the worst gets rank 1 and pick probability grows linearly with rank.
        """
        keys = sorted(k for k, c in self.cells.items() if c.total() > 0)
        if not keys:
            raise ValueError("archive is empty")
        members = self.cells[keys[rng.randrange(len(keys))]].ranked()
        m = len(members)
        r = rng.randrange(m * (m + 1) // 2)
        acc = 0
        for j, member in enumerate(members):
            acc += m - j
            if r < acc:
                return member.chromosome
        return members[-1].chromosome

    def elite_count(self) -> int:
        """Cells whose best feasible member fully drained the boss."""
        return sum(
            1
            for c in self.cells.values()
            if c.feasible and c.feasible[0].fitness == 1.0
        )

    def trim(self) -> None:
        for cell in self.cells.values():
            while cell.total() > self.config.capacity:
                if cell.infeasible:
                    cell.infeasible.pop()
                else:
                    cell.feasible.pop()

    def cell_sizes(self) -> dict[CellKey, tuple[int, int]]:
        return {
            k: (len(c.feasible), len(c.infeasible))
            for k, c in sorted(self.cells.items())
            if c.total() > 0
        }

    def snapshot(self) -> dict[CellKey, Cell]:
        return {k: c.copy() for k, c in self.cells.items()}

    def restore(self, snap: dict[CellKey, Cell]) -> None:
        self.cells = snap
