"""One-call level evaluation: play, measure, judge."""
from __future__ import annotations

from dataclasses import dataclass, replace

from ..genotype import Chromosome, decode
from ..lang.types import Script
from ..qd.constraints import check_constraints, fitness
from ..sim.config import SimConfig
from ..sim.trace import PlayTrace
from .config import AgentConfig
from .metrics import entropy_metric, metric_bins
from .play import play


@dataclass
class EvaluationResult:
    entropy: float
    risk: float
    distribution: float
    bins: tuple[int, int, int]
    feasible: bool
    fitness: float
    trace: PlayTrace

    def to_dict(self) -> dict:
        return {
            "entropy": self.entropy,
            "risk": self.risk,
            "distribution": self.distribution,
            "bins": list(self.bins),
            "feasible": self.feasible,
            "fitness": self.fitness,
            "trace": self.trace.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvaluationResult":
        return cls(
            entropy=float(data["entropy"]),
            risk=float(data["risk"]),
            distribution=float(data["distribution"]),
            bins=tuple(int(b) for b in data["bins"]),
            feasible=bool(data["feasible"]),
            fitness=float(data["fitness"]),
            trace=PlayTrace.from_dict(data["trace"]),
        )


def evaluate(
    script: Script,
    agent_cfg: AgentConfig | None = None,
    sim_cfg: SimConfig | None = None,
    use_ten_plus_fitness: bool = False,
) -> EvaluationResult:
    agent_cfg = agent_cfg or AgentConfig()
    sim_cfg = sim_cfg or SimConfig()
    trace = play(script, agent_cfg, sim_cfg)
    entropy = entropy_metric(trace.actions)
    n = trace.frames_survived
    risk = sum(trace.per_frame_risk) / n if n else 0.0
    distribution = sum(trace.per_frame_distribution) / n if n else 0.0
    feasible = check_constraints(trace, sim_cfg)
    return EvaluationResult(
        entropy=entropy,
        risk=risk,
        distribution=distribution,
        bins=metric_bins(entropy, risk, distribution),
        feasible=feasible,
        fitness=fitness(trace, feasible, use_ten_plus_fitness),
        trace=trace,
    )


def make_evaluator(
    agent_cfg: AgentConfig | None = None,
    sim_cfg: SimConfig | None = None,
    use_ten_plus_fitness: bool = False,
):
    """Archive-facing evaluator: decode a chromosome, play it with a
    per-event seed, return the evaluation."""
    agent_cfg = agent_cfg or AgentConfig()
    sim_cfg = sim_cfg or SimConfig()

    def evaluator(chromosome: Chromosome, seed: int) -> EvaluationResult:
        cfg = replace(agent_cfg, seed=seed)
        return evaluate(decode(chromosome), cfg, sim_cfg, use_ten_plus_fitness)

    return evaluator
