from .parser import ScriptError, build_script, parse_script
from .sampler import SamplerError, ValueSampler, Wrap, constant, parse_sampler, sampler_step
from .types import BossDef, BossEvent, EventAction, Script, SpawnerDef
from .writer import serialize

__all__ = [
    "BossDef",
    "BossEvent",
    "EventAction",
    "SamplerError",
    "Script",
    "ScriptError",
    "SpawnerDef",
    "ValueSampler",
    "Wrap",
    "build_script",
    "constant",
    "parse_sampler",
    "parse_script",
    "sampler_step",
    "serialize",
]
