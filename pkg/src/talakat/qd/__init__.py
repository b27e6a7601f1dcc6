"""Constrained MAP-Elites archive search."""
from .archive import Archive, ArchiveConfig, Cell, CellKey, Member, Placement
from .constraints import check_constraints, fitness
from .evolution import GenerationReport, init_archive, run_generation
from .store import archive_hash, load_archive, save_archive

__all__ = [
    "Archive",
    "ArchiveConfig",
    "Cell",
    "CellKey",
    "Member",
    "Placement",
    "GenerationReport",
    "check_constraints",
    "fitness",
    "init_archive",
    "run_generation",
    "archive_hash",
    "load_archive",
    "save_archive",
]
