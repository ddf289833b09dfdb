import pytest

from nasdqn.agent import AgentHyperparams
from nasdqn.config import ExperimentConfig
from nasdqn.pendulum import PhysicsParams


@pytest.fixture
def small_config():
    """Fast trial config: short horizon, early updates, tiny warmup."""
    return ExperimentConfig(
        agent="nas_dqn",
        episodes=30,
        seeds=(1, 2),
        update_interval=10,
        buffer_capacity=2_000,
        physics=PhysicsParams(horizon=50),
        hyper=AgentHyperparams(warmup=100, batch_size=16, target_sync_interval=50),
    )
