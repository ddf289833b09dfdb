"""Bounded FIFO experience store with uniform sampling and pruning."""

from typing import NamedTuple

import numpy as np

DEFAULT_CAPACITY = 50_000
PRUNE_KEEP_FRACTION = 0.25


class Transition(NamedTuple):
    s: np.ndarray
    action: int
    reward: float
    s_next: np.ndarray
    done: bool


class ReplayMemory:
    """Ring buffer; oldest transitions are evicted first when full."""

    def __init__(self, capacity: int = DEFAULT_CAPACITY):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self._data: list[Transition] = []
        self._next = 0  # overwrite cursor once full
        self.insertions = 0

    def __len__(self) -> int:
        return len(self._data)

    def push(self, transition: Transition) -> None:
        if len(self._data) < self.capacity:
            self._data.append(transition)
        else:
            self._data[self._next] = transition
            self._next = (self._next + 1) % self.capacity
        self.insertions += 1

    def transitions(self) -> list[Transition]:
        """Contents in insertion order, oldest first."""
        if len(self._data) < self.capacity:
            return list(self._data)
        return self._data[self._next:] + self._data[: self._next]

    def sample(self, n: int, rng) -> list[Transition]:
        """Draw n transitions uniformly without replacement."""
        size = len(self._data)
        if n > size:
            raise ValueError(f"cannot sample {n} from buffer of size {size}")
        if n > size // 2:
            # near-exhaustive draw: partial Fisher-Yates avoids rejection stalls
            pool = list(range(size))
            picked = []
            for i in range(n):
                j = i + rng.integer(size - i)
                pool[i], pool[j] = pool[j], pool[i]
                picked.append(pool[i])
        else:
            seen = set()
            picked = []
            while len(picked) < n:
                idx = rng.integer(size)
                if idx not in seen:
                    seen.add(idx)
                    picked.append(idx)
        return [self._data[i] for i in picked]

    def prune_to_fraction(self, keep: float = PRUNE_KEEP_FRACTION) -> None:
        """Retain exactly floor(keep * size) most recent transitions."""
        if not 0 <= keep <= 1:
            raise ValueError(f"keep fraction must be in [0, 1], got {keep}")
        ordered = self.transitions()
        n_keep = int(np.floor(keep * len(ordered)))
        self._data = ordered[len(ordered) - n_keep:] if n_keep else []
        self._next = 0  # kept block is back in plain insertion order
