"""Request and response models for the HTTP surface.

Field names follow the camelCase used by the on-disk documents (traces,
archive manifests) so clients see one naming convention everywhere.
"""
from __future__ import annotations

from pydantic import BaseModel, Field

AGENT_LEVELS = ("low", "medium", "high")


class HealthResponse(BaseModel):
    status: str
    version: str


class ValidateRequest(BaseModel):
    script: str


class ValidateResponse(BaseModel):
    valid: bool
    diagnostics: list[str] = Field(default_factory=list)


class AgentParams(BaseModel):
    dexterity: str = "medium"
    strategy: str = "medium"
    seed: int = 0


class EvaluateRequest(BaseModel):
    script: str
    agent: AgentParams = Field(default_factory=AgentParams)
    useTenPlusFitness: bool = False
    includeTrace: bool = False


class EvaluateResponse(BaseModel):
    entropy: float
    risk: float
    distribution: float
    bins: list[int]
    feasible: bool
    fitness: float
    framesSurvived: int
    died: bool
    remainingBossHealth: int
    maxLiveSpawnersSeen: int
    agent: dict
    trace: dict | None = None


class GenerateRequest(BaseModel):
    out: str
    seed: int = 0
    generations: int = 20
    dexterity: str = "low"
    strategy: str = "low"
    matingsPerGeneration: int = 100
    initialPopulation: int = 100
    useTenPlusFitness: bool = False
    resume: bool = True
    simCfg: dict = Field(default_factory=dict)


class StatsResponse(BaseModel):
    elites: int
    generation: int
    totalMembers: int
    entropy: list[float]
    risk: list[float]
    distribution: list[float]
    warning: str | None = None


class RenderRequest(BaseModel):
    script: str
    trace: dict
    frames: list[int]


class RenderedFrame(BaseModel):
    frame: int
    ppmBase64: str


class RenderResponse(BaseModel):
    frames: list[RenderedFrame]
