"""Seed derivation for independently seeded, reproducible random streams.

Every random draw in this package flows through a numpy Generator seeded by
``derive_seed``.  The mixer is SplitMix64; its constants are part of the
reproducibility contract documented in the README, so two runs with the same
base seed produce identical realizations regardless of execution order.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MUL_1 = 0xBF58476D1CE4E5B9
MIX_MUL_2 = 0x94D049BB133111EB


def splitmix64(x: int) -> int:
    """One SplitMix64 output step on a 64-bit state."""
    z = (x + GOLDEN_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * MIX_MUL_1) & _MASK64
    z = ((z ^ (z >> 27)) * MIX_MUL_2) & _MASK64
    return z ^ (z >> 31)


def derive_seed(*parts: int) -> int:
    """Mix integer parts into one 64-bit seed; order of parts matters."""
    state = 0
    for part in parts:
        state = splitmix64(state ^ (int(part) & _MASK64))
    return state


def generator(*parts: int) -> np.random.Generator:
    """A PCG64 generator seeded from the mixed parts."""
    return np.random.default_rng(derive_seed(*parts))
