"""Archive persistence: a manifest plus one JSON file per non-empty cell.

The directory can be reloaded to resume a run; storing the caller's rng
state alongside keeps a resumed run byte-identical to an uninterrupted one.
The content hash covers config, generation counter and every member in
order, so two deterministic runs can be compared with a single string.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from ..genotype import Chromosome
from .archive import Archive, ArchiveConfig, Cell, CellKey, Member

FORMAT_VERSION = 1
MANIFEST_NAME = "manifest.json"
CELLS_DIR = "cells"


def _member_payload(member: Member) -> dict:
    return {
        "chromosome": member.chromosome.to_text(),
        "fitness": member.fitness,
        "feasible": member.feasible,
        "seed": member.seed,
    }


def _member_from_payload(data: dict) -> Member:
    return Member(
        chromosome=Chromosome.from_text(data["chromosome"]),
        fitness=float(data["fitness"]),
        feasible=bool(data["feasible"]),
        seed=int(data["seed"]),
    )


def _cell_payload(key: CellKey, cell: Cell) -> dict:
    return {
        "key": list(key),
        "feasible": [_member_payload(m) for m in cell.feasible],
        "infeasible": [_member_payload(m) for m in cell.infeasible],
    }


def _canonical(archive: Archive) -> str:
    body = {
        "version": FORMAT_VERSION,
        "config": archive.config.to_dict(),
        "rngSeed": archive.rng_seed,
        "generation": archive.generation,
        "cells": [
            _cell_payload(k, archive.cells[k])
            for k in sorted(archive.cells)
            if archive.cells[k].total() > 0
        ],
    }
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def archive_hash(archive: Archive) -> str:
    return hashlib.sha256(_canonical(archive).encode()).hexdigest()


def save_archive(archive: Archive, path: str | Path, rng_state=None) -> Path:
    root = Path(path)
    cells_dir = root / CELLS_DIR
    cells_dir.mkdir(parents=True, exist_ok=True)
    for old in cells_dir.glob("cell_*.json"):
        old.unlink()
    names = []
    for key in sorted(archive.cells):
        cell = archive.cells[key]
        if cell.total() == 0:
            continue
        name = "cell_{}_{}_{}.json".format(*key)
        (cells_dir / name).write_text(json.dumps(_cell_payload(key, cell), indent=1))
        names.append(name)
    manifest = {
        "version": FORMAT_VERSION,
        "config": archive.config.to_dict(),
        "rngSeed": archive.rng_seed,
        "generation": archive.generation,
        "cells": names,
        "contentHash": archive_hash(archive),
    }
    if rng_state is not None:
        manifest["rngState"] = [rng_state[0], list(rng_state[1]), rng_state[2]]
    (root / MANIFEST_NAME).write_text(json.dumps(manifest, indent=1))
    return root


def load_archive(path: str | Path) -> tuple[Archive, tuple | None]:
    root = Path(path)
    manifest_path = root / MANIFEST_NAME
    if not manifest_path.exists():
        raise FileNotFoundError(f"no archive manifest at {manifest_path}")
    manifest = json.loads(manifest_path.read_text())
    if manifest.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported archive format {manifest.get('version')!r}")
    archive = Archive(
        config=ArchiveConfig.from_dict(manifest["config"]),
        rng_seed=int(manifest.get("rngSeed", 0)),
        generation=int(manifest.get("generation", 0)),
    )
    for name in manifest["cells"]:
        data = json.loads((root / CELLS_DIR / name).read_text())
        key = tuple(int(b) for b in data["key"])
        cell = Cell(
            feasible=[_member_from_payload(m) for m in data["feasible"]],
            infeasible=[_member_from_payload(m) for m in data["infeasible"]],
        )
        archive.cells[key] = cell
    rng_state = None
    if "rngState" in manifest:
        raw = manifest["rngState"]
        rng_state = (raw[0], tuple(raw[1]), raw[2])
    return archive, rng_state
