"""Online architecture search inside a Double DQN loop on pendulum swing-up.

Everything is deterministic given (config, seed): environment, weight
initialization, exploration, minibatch sampling, and the architecture
controller each draw from their own child stream of one master RNG.
"""

__version__ = "0.1.0"

from .rng import Rng
from .pendulum import PhysicsParams, PendulumState, PendulumEnv
from .network import (
    ArchitectureConfig,
    NetworkParams,
    GradientSet,
    SEARCH_SPACE,
    init_network,
    forward,
    backward,
    huber_loss,
    apply_update,
    transfer_weights,
)
from .replay import Transition, ReplayMemory
from .agent import AgentHyperparams, DqnAgent
from .controller import NasController
from .config import ExperimentConfig, AGENT_KINDS, FIXED_CONFIGS, load_config
from .metrics import MetricsReport, compute_metrics
from .harness import RunRecord, ControllerEvent, run_trial, compare

__all__ = [
    "__version__",
    "Rng",
    "PhysicsParams",
    "PendulumState",
    "PendulumEnv",
    "ArchitectureConfig",
    "NetworkParams",
    "GradientSet",
    "SEARCH_SPACE",
    "init_network",
    "forward",
    "backward",
    "huber_loss",
    "apply_update",
    "transfer_weights",
    "Transition",
    "ReplayMemory",
    "AgentHyperparams",
    "DqnAgent",
    "NasController",
    "ExperimentConfig",
    "AGENT_KINDS",
    "FIXED_CONFIGS",
    "load_config",
    "MetricsReport",
    "compute_metrics",
    "RunRecord",
    "ControllerEvent",
    "run_trial",
    "compare",
]
