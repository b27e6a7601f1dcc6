"""HTTP service around the core package.

The CLI is a thin client of this app: every subcommand maps onto one
endpoint.  Long-running generation streams newline-delimited JSON records
(one per generation, then a summary), and the stream's body is also exposed
as a plain generator so in-process callers can consume progress lines as
they are produced instead of waiting for a buffered response.
"""
from __future__ import annotations

import base64
import json
import random
from pathlib import Path
from typing import Iterator

from fastapi import FastAPI, HTTPException
from fastapi.responses import StreamingResponse

from .. import __version__
from ..agent.config import AgentConfig
from ..agent.evaluate import evaluate, make_evaluator
from ..lang.parser import ScriptError, parse_script
from ..qd.archive import Archive, ArchiveConfig
from ..qd.evolution import init_archive, run_generation
from ..qd.store import archive_hash, load_archive, save_archive
from ..render import RenderError, render_frames
from ..sim.config import SimConfig
from ..sim.trace import PlayTrace
from .schemas import (
    AGENT_LEVELS,
    AgentParams,
    EvaluateRequest,
    EvaluateResponse,
    GenerateRequest,
    HealthResponse,
    RenderedFrame,
    RenderRequest,
    RenderResponse,
    StatsResponse,
    ValidateRequest,
    ValidateResponse,
)

N_BINS = 11


def _agent_config(params: AgentParams) -> AgentConfig:
    if params.dexterity not in AGENT_LEVELS or params.strategy not in AGENT_LEVELS:
        raise HTTPException(
            status_code=400,
            detail=f"agent levels must be one of {', '.join(AGENT_LEVELS)}",
        )
    return AgentConfig.named(params.dexterity, params.strategy, params.seed)


def _parse_or_400(text: str):
    try:
        return parse_script(text)
    except ScriptError as e:
        raise HTTPException(status_code=400, detail={"diagnostics": e.diagnostics})


def validate_script(req: ValidateRequest) -> ValidateResponse:
    try:
        parse_script(req.script)
    except ScriptError as e:
        return ValidateResponse(valid=False, diagnostics=e.diagnostics)
    return ValidateResponse(valid=True)


def evaluate_script(req: EvaluateRequest) -> EvaluateResponse:
    script = _parse_or_400(req.script)
    cfg = _agent_config(req.agent)
    result = evaluate(script, cfg, use_ten_plus_fitness=req.useTenPlusFitness)
    tr = result.trace
    return EvaluateResponse(
        entropy=result.entropy,
        risk=result.risk,
        distribution=result.distribution,
        bins=list(result.bins),
        feasible=result.feasible,
        fitness=result.fitness,
        framesSurvived=tr.frames_survived,
        died=tr.died,
        remainingBossHealth=tr.remaining_boss_health,
        maxLiveSpawnersSeen=tr.max_live_spawners_seen,
        agent=cfg.to_dict(),
        trace=tr.to_dict() if req.includeTrace else None,
    )


def _occupied(archive: Archive) -> int:
    return sum(1 for cell in archive.cells.values() if cell.total() > 0)


def _best_fitness(archive: Archive) -> float:
    best = 0.0
    for cell in archive.cells.values():
        for member in cell.ranked():
            if member.fitness > best:
                best = member.fitness
    return best


def _generation_line(archive: Archive, **extra) -> str:
    record = {
        "generation": archive.generation,
        "eliteCount": archive.elite_count(),
        "cellsOccupied": _occupied(archive),
        "bestFitness": _best_fitness(archive),
        "totalMembers": archive.total_members(),
    }
    record.update(extra)
    return json.dumps(record) + "\n"


def _request_config(req: GenerateRequest) -> ArchiveConfig:
    return ArchiveConfig(
        matings_per_generation=req.matingsPerGeneration,
        initial_population=req.initialPopulation,
        use_ten_plus_fitness=req.useTenPlusFitness,
    )


def generation_stream(req: GenerateRequest) -> Iterator[str]:
    """Run (or resume) a generation loop, yielding one JSON line per
    generation and a final summary line.

    The archive directory is rewritten after every generation together with
    the mating RNG state, so an interrupted run resumed from disk replays
    the exact event sequence an uninterrupted run would have produced.
    """
    if req.dexterity not in AGENT_LEVELS or req.strategy not in AGENT_LEVELS:
        raise ValueError(f"agent levels must be one of {', '.join(AGENT_LEVELS)}")
    if req.generations < 0:
        raise ValueError("generations must be non-negative")
    out = Path(req.out)
    config = _request_config(req)
    evaluator = make_evaluator(
        AgentConfig.named(req.dexterity, req.strategy),
        SimConfig.from_dict(req.simCfg) if req.simCfg else None,
        use_ten_plus_fitness=req.useTenPlusFitness,
    )
    rng = random.Random(req.seed)

    archive = None
    if req.resume and (out / "manifest.json").exists():
        archive, rng_state = load_archive(out)
        if archive.config != config or archive.rng_seed != req.seed:
            raise ValueError(
                f"archive at {out} was built with a different configuration; "
                "disable resume (or remove the directory) to overwrite it"
            )
        if rng_state is None:
            raise ValueError(f"archive at {out} lacks the rng state needed to resume")
        rng.setstate(rng_state)

    if archive is None:
        archive = init_archive(evaluator, rng, config)
        archive.rng_seed = req.seed
        save_archive(archive, out, rng_state=rng.getstate())

    while archive.generation < req.generations:
        report = run_generation(archive, evaluator, rng)
        save_archive(archive, out, rng_state=rng.getstate())
        yield _generation_line(
            archive,
            newElites=report.new_elites,
            feasibleChildren=report.feasible_children,
        )

    yield json.dumps({
        "done": True,
        "out": str(out),
        "generation": archive.generation,
        "eliteCount": archive.elite_count(),
        "cellsOccupied": _occupied(archive),
        "totalMembers": archive.total_members(),
        "archiveHash": archive_hash(archive),
    }) + "\n"


def archive_stats(path: str) -> StatsResponse:
    """Per-dimension bin histograms over the archive's perfect elites.

    An elite is a cell whose best feasible member has fitness 1.0; each
    contributes one count at its cell's bin on every dimension, and counts
    are normalized so each dimension's frequencies sum to 1.
    """
    archive, _ = load_archive(path)
    counts = [[0] * N_BINS for _ in range(3)]
    elites = 0
    for key, cell in archive.cells.items():
        if cell.feasible and cell.feasible[0].fitness == 1.0:
            elites += 1
            for dim in range(3):
                counts[dim][key[dim]] += 1
    if elites == 0:
        return StatsResponse(
            elites=0,
            generation=archive.generation,
            totalMembers=archive.total_members(),
            entropy=[],
            risk=[],
            distribution=[],
            warning="archive has no fitness-1.0 elites; histograms are empty",
        )
    freqs = [[c / elites for c in row] for row in counts]
    return StatsResponse(
        elites=elites,
        generation=archive.generation,
        totalMembers=archive.total_members(),
        entropy=freqs[0],
        risk=freqs[1],
        distribution=freqs[2],
    )


def render_script(req: RenderRequest) -> RenderResponse:
    script = _parse_or_400(req.script)
    try:
        trace = PlayTrace.from_dict(req.trace)
    except (KeyError, TypeError, ValueError) as e:
        raise HTTPException(status_code=400, detail=f"malformed trace document: {e}")
    try:
        images = render_frames(
            script, trace.actions, req.frames, script_hash=trace.script_hash
        )
    except RenderError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return RenderResponse(frames=[
        RenderedFrame(frame=i, ppmBase64=base64.b64encode(ppm).decode("ascii"))
        for i, ppm in images
    ])


def create_app() -> FastAPI:
    app = FastAPI(title="talakat", version=__version__)

    @app.get("/api/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/api/validate", response_model=ValidateResponse)
    def validate(req: ValidateRequest) -> ValidateResponse:
        return validate_script(req)

    @app.post("/api/evaluate", response_model=EvaluateResponse)
    def evaluate_endpoint(req: EvaluateRequest) -> EvaluateResponse:
        return evaluate_script(req)

    @app.post("/api/generate")
    def generate(req: GenerateRequest) -> StreamingResponse:
        try:
            lines = generation_stream(req)
            # run init (and config checks) eagerly so errors surface as
            # status codes instead of a broken stream
            first = next(lines)
        except (ValueError, OSError) as e:
            raise HTTPException(status_code=400, detail=str(e))

        def body() -> Iterator[str]:
            yield first
            yield from lines

        return StreamingResponse(body(), media_type="application/x-ndjson")

    @app.get("/api/stats", response_model=StatsResponse)
    def stats(archive: str) -> StatsResponse:
        try:
            return archive_stats(archive)
        except FileNotFoundError as e:
            raise HTTPException(status_code=404, detail=str(e))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @app.post("/api/render", response_model=RenderResponse)
    def render(req: RenderRequest) -> RenderResponse:
        return render_script(req)

    return app


app = create_app()
