"""Agent error-model configuration.

Two knobs shape how human-like the agent is: dexterity (how long it is
forced to repeat a chosen action) and strategy (how many search nodes it
may expand per decision).  Named levels map to the canonical values; the
strategy levels are deterministic node budgets standing in for wall-clock
decision deadlines.
"""
from __future__ import annotations

from dataclasses import dataclass

STRATEGY_BUDGETS = {"low": 400, "medium": 600, "high": 800}
DEXTERITY_SIGMAS = {"low": 10.0, "medium": 6.0, "high": 2.0}


@dataclass(frozen=True)
class AgentConfig:
    dexterity_sigma: float = 6.0
    strategy_budget: int = 600
    seed: int = 0

    def __post_init__(self) -> None:
        if self.dexterity_sigma < 0:
            raise ValueError("dexterity sigma must be non-negative")
        if self.strategy_budget < 1:
            raise ValueError("strategy budget must be at least 1")

    @classmethod
    def named(cls, dexterity: str = "medium", strategy: str = "medium", seed: int = 0):
        try:
            sigma = DEXTERITY_SIGMAS[dexterity]
            budget = STRATEGY_BUDGETS[strategy]
        except KeyError as e:
            raise ValueError(f"unknown agent level {e.args[0]!r}") from None
        return cls(dexterity_sigma=sigma, strategy_budget=budget, seed=seed)

    def to_dict(self) -> dict:
        return {
            "dexteritySigma": self.dexterity_sigma,
            "strategyBudget": self.strategy_budget,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AgentConfig":
        return cls(
            dexterity_sigma=float(data.get("dexteritySigma", 6.0)),
            strategy_budget=int(data.get("strategyBudget", 600)),
            seed=int(data.get("seed", 0)),
        )
