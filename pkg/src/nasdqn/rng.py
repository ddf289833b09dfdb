"""Deterministic seedable random source shared by every subsystem.

The generator is xorshift64* (shifts 12/25/27, multiplier
0x2545F4914F6CDD1D), seeded by passing the 64-bit seed through one round
of splitmix64. It is small enough to reimplement in any language, so a
(seed, config) pair pins down an entire run.

Child streams are derived from (master seed, subsystem label): the label
is hashed with 64-bit FNV-1a and XORed into the master seed before the
splitmix64 round. Each subsystem (environment resets, policy
exploration, minibatch sampling, weight init, controller sampling) owns
one child, so e.g. an architecture change never perturbs the
environment's random sequence.

Not cryptographic, and float streams are only bit-reproducible on
matching FP hardware.
"""

import math

_MASK64 = (1 << 64) - 1

# splitmix64 constants
_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MIX1 = 0xBF58476D1E3E5B49
_SM_MIX2 = 0x94D049BB133111EB

# xorshift64* output multiplier
_XS_MULT = 0x2545F4914F6CDD1D

# FNV-1a 64-bit
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def _splitmix64(x: int) -> int:
    x = (x + _SM_GAMMA) & _MASK64
    x = ((x ^ (x >> 30)) * _SM_MIX1) & _MASK64
    x = ((x ^ (x >> 27)) * _SM_MIX2) & _MASK64
    return x ^ (x >> 31)


def _fnv1a64(label: str) -> int:
    h = _FNV_OFFSET
    for byte in label.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


class Rng:
    """xorshift64* stream owned by a single run/thread; never share one."""

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        # xorshift64* state must be nonzero
        self._state = _splitmix64(self.seed) or _SM_GAMMA

    def next_u64(self) -> int:
        """Advance the state and return the next 64-bit output."""
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self._state = x
        return (x * _XS_MULT) & _MASK64

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform float in [lo, hi)."""
        if not lo < hi:
            raise ValueError(f"uniform requires lo < hi, got [{lo}, {hi})")
        v = lo + (hi - lo) * self.random()
        if v >= hi:  # guard the rounding edge when hi - lo straddles a power of 2
            v = math.nextafter(hi, lo)
        return v

    def normal(self, mean: float = 0.0, stddev: float = 1.0) -> float:
        """Sample N(mean, stddev^2) via the Box-Muller transform."""
        if stddev < 0:
            raise ValueError(f"stddev must be >= 0, got {stddev}")
        if stddev == 0:
            return mean
        u1 = 1.0 - self.random()  # (0, 1], keeps log finite
        u2 = self.random()
        z = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
        return mean + stddev * z

    def integer(self, bound: int) -> int:
        """Uniform integer in [0, bound), exact via rejection sampling."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        if bound == 1:
            return 0
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound

    def choice(self, weights) -> int:
        """Return index i with probability weights[i] / sum(weights)."""
        if len(weights) == 0:
            raise ValueError("choice requires a non-empty weight list")
        total = 0.0
        for w in weights:
            if w < 0:
                raise ValueError(f"negative weight {w}")
            total += w
        if total <= 0:
            raise ValueError("choice requires a positive total weight")
        u = self.random() * total
        cum = 0.0
        last_positive = -1
        for i, w in enumerate(weights):
            if w > 0:
                cum += w
                last_positive = i
                if u < cum:
                    return i
        return last_positive  # float accumulation left u >= cum; never a zero weight

    def child(self, label: str) -> "Rng":
        """Independent stream derived from (master seed, label)."""
        return Rng(self.seed ^ _fnv1a64(label))

    def getstate(self) -> tuple:
        return (self.seed, self._state)

    def setstate(self, state: tuple) -> None:
        self.seed, self._state = state
