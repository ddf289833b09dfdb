"""Experiment configuration: agent kinds, defaults, JSON config files.

Every field is optional in the config file; omitted fields take the
defaults below. CLI flags override file values.
"""

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from .agent import AgentHyperparams
from .network import ArchitectureConfig
from .pendulum import PhysicsParams
from .replay import DEFAULT_CAPACITY

AGENT_KINDS = ("fixed_small", "fixed_medium", "fixed_large", "random_nas", "nas_dqn")

FIXED_CONFIGS = {
    "fixed_small": ArchitectureConfig(2, 32, "relu"),
    "fixed_medium": ArchitectureConfig(3, 64, "relu"),
    "fixed_large": ArchitectureConfig(4, 128, "relu"),
}

DEFAULT_EPISODES = 2_000
DEFAULT_UPDATE_INTERVAL = 200  # episodes between architecture updates
DEFAULT_SEEDS = (1, 2, 3)


@dataclass(frozen=True)
class ControllerSettings:
    capacity: int = 5
    epsilon_start: float = 1.0
    epsilon_decay: float = 0.95
    epsilon_min: float = 0.1
    temperature: float = 1.5
    stability_eps: float = 1e-8


@dataclass(frozen=True)
class ExperimentConfig:
    agent: str = "nas_dqn"
    episodes: int = DEFAULT_EPISODES
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    update_interval: int = DEFAULT_UPDATE_INTERVAL
    buffer_capacity: int = DEFAULT_CAPACITY
    physics: PhysicsParams = field(default_factory=PhysicsParams)
    hyper: AgentHyperparams = field(default_factory=AgentHyperparams)
    controller: ControllerSettings = field(default_factory=ControllerSettings)

    def __post_init__(self):
        if self.agent not in AGENT_KINDS:
            raise ValueError(f"agent must be one of {AGENT_KINDS}, got {self.agent!r}")
        if self.episodes < 1:
            raise ValueError("episodes must be >= 1")
        if self.update_interval < 1:
            raise ValueError("update_interval must be >= 1")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if self.buffer_capacity < self.hyper.batch_size:
            raise ValueError("buffer_capacity must be >= batch_size")

    def uses_controller(self) -> bool:
        return self.agent in ("random_nas", "nas_dqn")

    def controller_mode(self) -> str:
        return "random" if self.agent == "random_nas" else "learned"

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "agent": self.agent,
            "episodes": self.episodes,
            "seeds": list(self.seeds),
            "update_interval": self.update_interval,
            "buffer_capacity": self.buffer_capacity,
            "physics": dataclasses.asdict(self.physics),
            "hyper": dataclasses.asdict(self.hyper),
            "controller": dataclasses.asdict(self.controller),
        }


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Build a config from a (possibly partial) plain dict."""
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(raw)
    if "seeds" in kwargs:
        kwargs["seeds"] = tuple(int(s) for s in kwargs["seeds"])
    if "physics" in kwargs and isinstance(kwargs["physics"], dict):
        kwargs["physics"] = PhysicsParams(**kwargs["physics"])
    if "hyper" in kwargs and isinstance(kwargs["hyper"], dict):
        kwargs["hyper"] = AgentHyperparams(**kwargs["hyper"])
    if "controller" in kwargs and isinstance(kwargs["controller"], dict):
        kwargs["controller"] = ControllerSettings(**kwargs["controller"])
    return ExperimentConfig(**kwargs)


def load_config(path) -> ExperimentConfig:
    """Read a JSON config file; missing fields keep their defaults."""
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValueError(f"config file {path} must hold a JSON object")
    return config_from_dict(raw)
