"""Deterministic 64-bit generators.

Two pieces, both bit-exact on every platform:

* ``splitmix64`` for seeding and for counter-indexed draws.  A draw for
  item ``i`` of a stream depends only on ``(key, i)``, so edge decisions
  do not depend on iteration order.
* ``Xorshift64Star`` for sequential use (shuffles, colorings).

Counter draws feed the splitmix output through one xorshift64* round,
so both paths share the same output scrambler.
"""

from __future__ import annotations

import zlib

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_XS_MULT = 0x2545F4914F6CDD1D
_TWO_M53 = 1.0 / (1 << 53)


def splitmix64(x: int) -> int:
    z = (x + GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def _xorshift_array(x: np.ndarray) -> np.ndarray:
    x = x ^ (x >> np.uint64(12))
    x = x ^ (x << np.uint64(25))
    x = x ^ (x >> np.uint64(27))
    return x * np.uint64(_XS_MULT)


def stream_key(seed: int, stream: str) -> int:
    """Key for a named stream; different names give unrelated streams."""
    tag = zlib.crc32(stream.encode("ascii"))
    return splitmix64((seed & MASK64) ^ splitmix64(tag))


def split_seed(seed: int, index: int) -> int:
    """Per-trial seed: splitmix64(seed xor index)."""
    return splitmix64((seed ^ index) & MASK64)


def counter_u64(key: int, index) -> np.ndarray:
    idx = np.asarray(index, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = np.uint64(key) + (idx + np.uint64(1)) * np.uint64(GAMMA)
        return _xorshift_array(_mix_array(state))


def counter_uniform(key: int, index) -> np.ndarray:
    """Uniform doubles in [0, 1) for counter positions ``index``."""
    bits = counter_u64(key, index) >> np.uint64(11)
    return bits.astype(np.float64) * _TWO_M53


class Xorshift64Star:
    """Sequential xorshift64* generator seeded through splitmix64."""

    def __init__(self, seed: int):
        state = splitmix64(seed & MASK64)
        self.state = state or GAMMA

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * _XS_MULT) & MASK64

    def random(self) -> float:
        return (self.next_u64() >> 11) * _TWO_M53

    def randbelow(self, k: int) -> int:
        """Unbiased integer in [0, k) by rejection."""
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, n: int) -> np.ndarray:
        order = list(range(n))
        self.shuffle(order)
        return np.asarray(order, dtype=np.int64)

    def sample(self, n: int, k: int) -> list[int]:
        """k distinct values from range(n), in draw order."""
        order = list(range(n))
        for i in range(k):
            j = i + self.randbelow(n - i)
            order[i], order[j] = order[j], order[i]
        return order[:k]

    def uniforms(self, size: int) -> np.ndarray:
        return np.array([self.random() for _ in range(size)], dtype=np.float64)
