"""Deterministic, replayable randomness.

Every coin flip in a simulation is derived counter-style from
(master seed, domain, round index, slot index), so any single round or any
single station can be replayed in isolation and results are bit-identical
across platforms.  Probabilities are compared as 64-bit fixed-point
thresholds against raw Philox output; no floating point enters the decision.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

# Domain separators for independent streams.
DOMAIN_STATIONS = 1
DOMAIN_ADVERSARY = 2
DOMAIN_VERIFY = 3

_TWO64 = 1 << 64


def threshold_of(prob: Fraction | float) -> int:
    """64-bit fixed-point acceptance threshold for a probability in [0, 1]."""
    if prob <= 0:
        return 0
    if prob >= 1:
        return _TWO64
    if isinstance(prob, Fraction):
        return (prob.numerator * _TWO64) // prob.denominator
    return int(prob * _TWO64)


class CoinSource:
    """Counter-based uniform 64-bit words keyed by (seed, domain, round)."""

    def __init__(self, seed: int, domain: int):
        self.seed = int(seed) & (_TWO64 - 1)
        self.domain = int(domain)

    def raw(self, round_index: int, n: int) -> np.ndarray:
        """n uniform uint64 words for the given round."""
        bits = np.random.Philox(
            counter=[0, 0, 0, round_index], key=[self.seed, self.domain]
        )
        return bits.random_raw(n)

    def flips(self, round_index: int, prob: Fraction | float, n: int) -> np.ndarray:
        """Boolean array: slot i succeeds with the given probability."""
        thr = threshold_of(prob)
        if thr >= _TWO64:
            return np.ones(n, dtype=bool)
        return self.raw(round_index, n) < np.uint64(thr)

    def uniform_index(self, round_index: int, n: int, slot: int = 0) -> int:
        """One index uniform in [0, n), drawn from the given slot."""
        word = int(self.raw(round_index, slot + 1)[slot])
        return word % n
