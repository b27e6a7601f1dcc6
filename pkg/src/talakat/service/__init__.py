"""HTTP service: FastAPI app plus the in-process generation stream."""
from .app import app, archive_stats, create_app, generation_stream
from .schemas import (
    AgentParams,
    EvaluateRequest,
    EvaluateResponse,
    GenerateRequest,
    RenderRequest,
    RenderResponse,
    StatsResponse,
    ValidateRequest,
    ValidateResponse,
)

__all__ = [
    "AgentParams",
    "EvaluateRequest",
    "EvaluateResponse",
    "GenerateRequest",
    "RenderRequest",
    "RenderResponse",
    "StatsResponse",
    "ValidateRequest",
    "ValidateResponse",
    "app",
    "archive_stats",
    "create_app",
    "generation_stream",
]
