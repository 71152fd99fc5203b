"""Implementation-independent PRNG and shuffle for reproducible mixing.

The shuffle must produce byte-identical corpora across runs, platforms
and languages, so the generator and algorithm are pinned here instead of
relying on any runtime's default RNG:

- xoshiro256** 1.0, state seeded with four successive splitmix64 outputs
  of the 64-bit seed;
- Fisher-Yates, iterating i from n-1 down to 1 with j = next_u64() % (i+1).
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


def _splitmix64_stream(seed: int):
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield (z ^ (z >> 31)) & _MASK64


class Xoshiro256StarStar:
    def __init__(self, seed: int):
        sm = _splitmix64_stream(seed)
        self._s = [next(sm) for _ in range(4)]

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s[1] << 17) & _MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n


def shuffle_in_place(items: list, seed: int) -> None:
    """Deterministic Fisher-Yates shuffle under the pinned generator."""
    rng = Xoshiro256StarStar(seed)
    for i in range(len(items) - 1, 0, -1):
        j = rng.randbelow(i + 1)
        items[i], items[j] = items[j], items[i]
