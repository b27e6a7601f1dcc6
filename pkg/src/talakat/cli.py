"""Command-line front door: a thin client over the HTTP service.

Each subcommand maps onto one endpoint of the service app.  By default the
commands talk to an in-process instance over an ASGI transport, so no server
needs to be running; `--server` points them at a live one instead.  The one
exception is local `generate`, which consumes the service's generation
stream directly so progress lines appear as generations finish rather than
after the buffered in-process response completes.
"""
from __future__ import annotations

import asyncio
import base64
import json
from pathlib import Path

import click
import httpx

from .service import GenerateRequest, app, generation_stream

REQUEST_TIMEOUT = 3600.0


class _InProcessClient:
    """Synchronous facade over the ASGI app, mirroring the httpx.Client
    calls the commands use; the transport is async-only."""

    def request(self, method: str, url: str, **kwargs) -> httpx.Response:
        async def go() -> httpx.Response:
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport,
                base_url="http://talakat.internal",
                timeout=REQUEST_TIMEOUT,
            ) as client:
                return await client.request(method, url, **kwargs)

        return asyncio.run(go())

    def get(self, url: str, **kwargs) -> httpx.Response:
        return self.request("GET", url, **kwargs)

    def post(self, url: str, **kwargs) -> httpx.Response:
        return self.request("POST", url, **kwargs)

    def __enter__(self) -> "_InProcessClient":
        return self

    def __exit__(self, *exc) -> None:
        return None


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=REQUEST_TIMEOUT)
    return _InProcessClient()


def _detail_lines(resp: httpx.Response) -> list[str]:
    try:
        detail = resp.json().get("detail")
    except (ValueError, AttributeError):
        return [resp.text]
    if isinstance(detail, dict) and "diagnostics" in detail:
        return [str(d) for d in detail["diagnostics"]]
    return [str(detail)]


def _checked(resp: httpx.Response) -> dict:
    if resp.status_code >= 400:
        raise click.ClickException("\n".join(_detail_lines(resp)))
    return resp.json()


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Talk to a running service instead of in-process.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Bullet-hell level tools: generate, evaluate, inspect, render."""
    ctx.obj = server


@main.command()
@click.option("--script", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Level script to check.")
@click.pass_obj
def validate(server: str | None, script: str) -> None:
    """Parse and validate a script; exit 0 only if it is clean."""
    with _client(server) as client:
        data = _checked(client.post("/api/validate",
                                    json={"script": Path(script).read_text()}))
    for diagnostic in data["diagnostics"]:
        click.echo(diagnostic)
    if not data["valid"]:
        raise SystemExit(1)
    click.echo(f"{script}: ok")


@main.command()
@click.option("--script", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Level script to play.")
@click.option("--dexterity", default="medium", show_default=True,
              type=click.Choice(["low", "medium", "high"]))
@click.option("--strategy", default="medium", show_default=True,
              type=click.Choice(["low", "medium", "high"]))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--ten-plus-fitness", is_flag=True,
              help="Weight infeasible fitness by crowded frames instead of any-bullet frames.")
@click.option("--trace-out", default=None, type=click.Path(dir_okay=False),
              help="Also save the full play trace to this file.")
@click.pass_obj
def evaluate(server: str | None, script: str, dexterity: str, strategy: str,
             seed: int, ten_plus_fitness: bool, trace_out: str | None) -> None:
    """Play a script with the agent and print the evaluation document."""
    payload = {
        "script": Path(script).read_text(),
        "agent": {"dexterity": dexterity, "strategy": strategy, "seed": seed},
        "useTenPlusFitness": ten_plus_fitness,
        "includeTrace": trace_out is not None,
    }
    with _client(server) as client:
        data = _checked(client.post("/api/evaluate", json=payload))
    if trace_out is not None:
        Path(trace_out).write_text(json.dumps(data.pop("trace")) + "\n")
    else:
        data.pop("trace", None)
    click.echo(json.dumps(data, indent=2))


def _experiment_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise click.ClickException(f"cannot read config {path}: {e}")
    if not isinstance(raw, dict):
        raise click.ClickException(f"config {path} must be a JSON object")
    return raw


@main.command()
@click.option("--config", default=None, envvar="TALAKAT_DEFAULT_CONFIG",
              type=click.Path(exists=True, dir_okay=False),
              help="Experiment config file (JSON); flags override its values.")
@click.option("--seed", default=None, type=int, help="Search seed.")
@click.option("--generations", default=None, type=int, help="Generations to reach.")
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(min=1),
              help="Worker slots for evaluations (results merge by event index).")
@click.option("--out", default=None, type=click.Path(file_okay=False),
              help="Archive output directory.")
@click.option("--fresh", is_flag=True, help="Ignore any archive already in --out.")
@click.pass_obj
def generate(server: str | None, config: str | None, seed: int | None,
             generations: int | None, jobs: int, out: str | None,
             fresh: bool) -> None:
    """Evolve an archive of levels, streaming one report line per generation.

    The archive directory is saved after every generation, so an interrupted
    run picks up where it stopped when rerun with the same arguments.
    """
    del jobs  # evaluations are placed in event order either way
    cfg = _experiment_config(config)
    request = {
        "out": out if out is not None else cfg.get("out"),
        "seed": seed if seed is not None else cfg.get("seed", 0),
        "generations": (generations if generations is not None
                        else cfg.get("generations", 20)),
        "dexterity": cfg.get("dexterityLevel", "low"),
        "strategy": cfg.get("strategyLevel", "low"),
        "matingsPerGeneration": cfg.get("matingsPerGeneration", 100),
        "initialPopulation": cfg.get("initialPopulation", 100),
        "useTenPlusFitness": cfg.get("useTenPlusFitness", False),
        "simCfg": cfg.get("simCfg", {}),
        "resume": not fresh,
    }
    if request["out"] is None:
        raise click.ClickException("an output directory is required (--out or config)")
    if server:
        with _client(server) as client, \
                client.stream("POST", "/api/generate", json=request) as resp:
            if resp.status_code >= 400:
                resp.read()
                raise click.ClickException("\n".join(_detail_lines(resp)))
            for line in resp.iter_lines():
                if line:
                    click.echo(line)
        return
    try:
        for line in generation_stream(GenerateRequest(**request)):
            click.echo(line, nl=False)
    except (ValueError, OSError) as e:
        raise click.ClickException(str(e))


DIMENSIONS = ("entropy", "risk", "distribution")


@main.command()
@click.option("--archive", required=True, type=click.Path(file_okay=False),
              help="Archive directory written by generate.")
@click.option("--format", "fmt", default="csv", show_default=True,
              type=click.Choice(["csv", "json-lines"]))
@click.pass_obj
def stats(server: str | None, archive: str, fmt: str) -> None:
    """Print bin histograms of the archive's perfect elites."""
    with _client(server) as client:
        data = _checked(client.get("/api/stats", params={"archive": archive}))
    if data.get("warning"):
        click.echo(data["warning"], err=True)
    if fmt == "json-lines":
        for dim in DIMENSIONS:
            click.echo(json.dumps({"dimension": dim, "frequencies": data[dim]}))
        return
    click.echo("dimension,bin,frequency")
    for dim in DIMENSIONS:
        for b, freq in enumerate(data[dim]):
            click.echo(f"{dim},{b},{freq}")


def _parse_frames(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise click.ClickException(f"--frames must be comma-separated integers, got {text!r}")


@main.command()
@click.option("--script", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Level script the trace was recorded on.")
@click.option("--trace", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Play trace file.")
@click.option("--frames", required=True, metavar="N[,N...]",
              help="Frame indices to rasterize (frame 0 is the initial state).")
@click.option("--out-dir", required=True, type=click.Path(file_okay=False),
              help="Directory for the PPM images.")
@click.pass_obj
def render(server: str | None, script: str, trace: str, frames: str,
           out_dir: str) -> None:
    """Rasterize trace frames to PPM images, one file per frame."""
    try:
        trace_doc = json.loads(Path(trace).read_text())
    except ValueError as e:
        raise click.ClickException(f"cannot read trace {trace}: {e}")
    payload = {
        "script": Path(script).read_text(),
        "trace": trace_doc,
        "frames": _parse_frames(frames),
    }
    with _client(server) as client:
        data = _checked(client.post("/api/render", json=payload))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for item in data["frames"]:
        path = out / f"frame_{item['frame']:06d}.ppm"
        path.write_bytes(base64.b64decode(item["ppmBase64"]))
        click.echo(str(path))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("talakat.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
