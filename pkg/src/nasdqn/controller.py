"""Architecture-search controller: top-K score buffer + softmax sampling.

In learned mode the controller keeps the K best (architecture, interval
score) pairs. Sampling explores uniformly over the whole search space
with a decaying probability, and otherwise draws from a softmax over the
buffer's z-score-normalized scores, so selection is invariant to the
location (and, up to the stability constant, the scale) of raw scores.

In random mode the buffer is never consulted or updated: every draw is
uniform over the search space.
"""

import numpy as np

from .network import SEARCH_SPACE, ArchitectureConfig, in_search_space

MODES = ("learned", "random")

BRANCH_RANDOM_MODE = "random-mode"
BRANCH_EMPTY_BUFFER = "empty-buffer"
BRANCH_EXPLORE = "explore"
BRANCH_EXPLOIT = "exploit"


class NasController:
    def __init__(
        self,
        mode: str = "learned",
        capacity: int = 5,
        epsilon_start: float = 1.0,
        epsilon_decay: float = 0.95,
        epsilon_min: float = 0.1,
        temperature: float = 1.5,
        stability_eps: float = 1e-8,
        search_space: tuple[ArchitectureConfig, ...] = SEARCH_SPACE,
    ):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        if temperature <= 0:
            raise ValueError("temperature must be positive")
        self.mode = mode
        self.capacity = capacity
        self.epsilon = epsilon_start
        self.epsilon_decay = epsilon_decay
        self.epsilon_min = epsilon_min
        self.temperature = temperature
        self.stability_eps = stability_eps
        self.search_space = tuple(search_space)
        # insertion-ordered (config, score) pairs, configs unique
        self.entries: list[tuple[ArchitectureConfig, float]] = []
        self.last_branch: str | None = None

    def update_score(self, config: ArchitectureConfig, score: float) -> None:
        """Record an interval score; replaces on revisit, evicts the worst.

        No-op in random mode (scores never guide random sampling).
        """
        if not in_search_space(config):
            raise ValueError(f"{config} is not in the search space")
        if self.mode == "random":
            return
        for i, (c, _) in enumerate(self.entries):
            if c == config:
                self.entries[i] = (config, score)
                return
        self.entries.append((config, score))
        if len(self.entries) > self.capacity:
            # evict the lowest score; ties evict the oldest entry
            worst = min(range(len(self.entries)), key=lambda i: (self.entries[i][1], -i))
            del self.entries[worst]

    def normalized_scores(self) -> np.ndarray:
        """Z-scores of the buffered raw scores (population std)."""
        if not self.entries:
            raise ValueError("score buffer is empty")
        scores = np.array([s for _, s in self.entries], dtype=np.float64)
        mu = scores.mean()
        sigma = scores.std()  # population: well-defined for a single entry
        return (scores - mu) / (sigma + self.stability_eps)

    def selection_probabilities(self) -> np.ndarray:
        """Softmax over normalized scores at the selection temperature."""
        z = self.normalized_scores() / self.temperature
        e = np.exp(z - z.max())
        return e / e.sum()

    def sample_architecture(self, rng) -> ArchitectureConfig:
        """Draw the next architecture; records which branch fired."""
        if self.mode == "random":
            self.last_branch = BRANCH_RANDOM_MODE
            return self.search_space[rng.integer(len(self.search_space))]
        if not self.entries:
            self.last_branch = BRANCH_EMPTY_BUFFER
            return self.search_space[rng.integer(len(self.search_space))]
        if rng.uniform(0.0, 1.0) < self.epsilon:
            # exploration covers the whole space, including buffered configs
            self.last_branch = BRANCH_EXPLORE
            return self.search_space[rng.integer(len(self.search_space))]
        self.last_branch = BRANCH_EXPLOIT
        probs = self.selection_probabilities()
        return self.entries[rng.choice(probs)][0]

    def decay_exploration(self) -> None:
        """epsilon <- max(epsilon_min, epsilon * decay), once per update step."""
        self.epsilon = max(self.epsilon_min, self.epsilon * self.epsilon_decay)
