"""Double DQN learner bound to a swappable architecture.

Acting is epsilon-greedy over the online net. Targets select the argmax
action with the online net and evaluate it with the target net; terminal
transitions bootstrap nothing. One gradient update runs per environment
step once the replay buffer passes warmup, and the target net is synced
to the online net on a fixed step interval.
"""

from dataclasses import dataclass

import numpy as np

from .network import (
    ArchitectureConfig,
    NonFiniteError,
    apply_update,
    backward,
    forward,
    huber_loss,
    init_network,
    transfer_weights,
)
from .pendulum import N_ACTIONS
from .replay import PRUNE_KEEP_FRACTION, ReplayMemory

GRAD_CLIP = 1.0


@dataclass(frozen=True)
class AgentHyperparams:
    """Learner knobs; all recorded in run outputs."""

    discount: float = 0.99
    learning_rate: float = 1e-3
    batch_size: int = 64
    target_sync_interval: int = 200  # environment steps
    epsilon_start: float = 1.0
    epsilon_decay: float = 0.995  # multiplicative, per episode
    epsilon_min: float = 0.01
    warmup: int = 1_000  # min buffer size before updates

    def __post_init__(self):
        if not 0 < self.discount <= 1:
            raise ValueError(f"discount must be in (0, 1], got {self.discount}")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.target_sync_interval < 1:
            raise ValueError("target_sync_interval must be >= 1")
        if self.warmup < self.batch_size:
            raise ValueError("warmup must be >= batch_size")
        if not 0 <= self.epsilon_min <= self.epsilon_start <= 1:
            raise ValueError("need 0 <= epsilon_min <= epsilon_start <= 1")
        if not 0 < self.epsilon_decay <= 1:
            raise ValueError("epsilon_decay must be in (0, 1]")


class DqnAgent:
    """Online/target network pair plus the policy epsilon schedule."""

    def __init__(self, config: ArchitectureConfig, hyper: AgentHyperparams, rng):
        self.config = config
        self.hyper = hyper
        self.params = init_network(config, rng)
        self.target_params = self.params.copy()
        self.epsilon = hyper.epsilon_start
        self.steps = 0  # environment steps seen (== train_step calls)

    def select_action(self, obs, rng) -> int:
        """Epsilon-greedy; greedy ties break toward the lowest index."""
        if rng.uniform(0.0, 1.0) < self.epsilon:
            return rng.integer(N_ACTIONS)
        q, _ = forward(self.params, obs)
        return int(np.argmax(q))

    def decay_epsilon(self) -> None:
        """Per-episode multiplicative decay, floored at epsilon_min."""
        self.epsilon = max(self.hyper.epsilon_min, self.epsilon * self.hyper.epsilon_decay)

    def compute_targets(self, batch) -> np.ndarray:
        """Double DQN targets; terminal transitions get y = r."""
        s_next = np.stack([t.s_next for t in batch])
        rewards = np.fromiter((t.reward for t in batch), dtype=np.float64, count=len(batch))
        done = np.fromiter((t.done for t in batch), dtype=np.bool_, count=len(batch))
        q_online, _ = forward(self.params, s_next)
        best = np.argmax(q_online, axis=1)
        q_target, _ = forward(self.target_params, s_next)
        bootstrap = q_target[np.arange(len(batch)), best]
        return rewards + np.where(done, 0.0, self.hyper.discount * bootstrap)

    def train_step(self, mem: ReplayMemory, rng):
        """One environment step's worth of learning.

        Counts the step, runs a minibatch update once the buffer passes
        warmup, and syncs the target net on the configured interval.
        Returns the mean Huber loss, or None while warming up.
        """
        self.steps += 1
        loss = None
        if len(mem) >= self.hyper.warmup:
            batch = mem.sample(self.hyper.batch_size, rng)
            targets = self.compute_targets(batch)
            s = np.stack([t.s for t in batch])
            actions = np.fromiter((t.action for t in batch), dtype=np.int64, count=len(batch))
            q, cache = forward(self.params, s)
            td = targets - q[np.arange(len(batch)), actions]
            loss = float(np.mean(huber_loss(td)))
            if not np.isfinite(loss):
                raise NonFiniteError(f"non-finite loss at step {self.steps}")
            grads = backward(self.params, cache, actions, td)
            apply_update(self.params, grads, self.hyper.learning_rate, GRAD_CLIP)
        if self.steps % self.hyper.target_sync_interval == 0:
            self.sync_target()
        return loss

    def sync_target(self) -> None:
        """Target net becomes a deep copy of the online net."""
        self.target_params = self.params.copy()

    def rebuild_with_architecture(
        self, new_config: ArchitectureConfig, rng, mem: ReplayMemory
    ) -> None:
        """Switch architectures: transfer weights, copy to target, prune replay.

        A no-op when the config is unchanged. Step counters and the policy
        epsilon carry over.
        """
        if new_config == self.config:
            return
        self.params = transfer_weights(self.params, new_config, rng)
        self.target_params = self.params.copy()
        self.config = new_config
        mem.prune_to_fraction(PRUNE_KEEP_FRACTION)
