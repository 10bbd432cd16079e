"""SplitMix64: a small, portable, seeded 64-bit generator.

Used for every random draw in the package so that results are reproducible
independently of the interpreter's ``random`` module.
"""

from __future__ import annotations

from typing import List

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def int_vector(self, n: int, bound: int) -> List[int]:
        return [self.randint(-bound, bound) for _ in range(n)]

    def nonzero_int_vector(self, n: int, bound: int) -> List[int]:
        while True:
            v = self.int_vector(n, bound)
            if any(v):
                return v

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def spawn(self, index: int) -> "SplitMix64":
        """Independent stream for sub-task ``index`` (the index-th output of this seed)."""
        return SplitMix64(trial_seed(self.state, index))


def trial_seed(seed: int, index: int) -> int:
    """Seed of trial ``index``: the (index+1)-th SplitMix64 output of ``seed``."""
    return mix64((seed + (index + 1) * GAMMA) & MASK64)
