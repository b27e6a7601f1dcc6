"""Search-based playing agent, error models, and behavior metrics."""
from .config import DEXTERITY_SIGMAS, STRATEGY_BUDGETS, AgentConfig
from .evaluate import EvaluationResult, evaluate, make_evaluator
from .heuristic import SAFETY_CAP, future_term, heuristic, safety_frames
from .metrics import (
    distribution_metric,
    entropy_metric,
    metric_bins,
    risk_from_grid,
    risk_metric,
)
from .play import MAX_REPEAT, draw_repeat, play
from .search import HORIZON, decide, decide_fast

__all__ = [
    "AgentConfig",
    "DEXTERITY_SIGMAS",
    "STRATEGY_BUDGETS",
    "EvaluationResult",
    "evaluate",
    "make_evaluator",
    "SAFETY_CAP",
    "future_term",
    "heuristic",
    "safety_frames",
    "distribution_metric",
    "entropy_metric",
    "metric_bins",
    "risk_from_grid",
    "risk_metric",
    "MAX_REPEAT",
    "draw_repeat",
    "play",
    "HORIZON",
    "decide",
    "decide_fast",
]
