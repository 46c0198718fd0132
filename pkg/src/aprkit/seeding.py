"""Deterministic seed derivation.

Every randomized operation in the toolkit takes an explicit 64-bit seed and
derives per-item child seeds with :func:`child_seed`, a splitmix64-style
mixer.  Because a child seed depends only on the parent seed and the item's
index path, work can be sharded across workers in any order and still
reproduce the serial result bit for bit.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

# splitmix64 constants (Steele, Lea, Flood 2014)
SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX_MULT_A = 0xBF58476D1CE4E5B9
SPLITMIX_MULT_B = 0x94D049BB133111EB


def _splitmix64(z: int) -> int:
    z = (z + SPLITMIX_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * SPLITMIX_MULT_A) & MASK64
    z = ((z ^ (z >> 27)) * SPLITMIX_MULT_B) & MASK64
    return (z ^ (z >> 31)) & MASK64


def child_seed(seed: int, *indices: int) -> int:
    """Fold ``indices`` into ``seed``, returning a new 64-bit seed.

    ``child_seed(s, a, b) == child_seed(child_seed(s, a), b)`` by
    construction, so nested derivations compose.
    """
    z = seed & MASK64
    for ix in indices:
        # scramble the parent before folding so (seed, index) enters
        # asymmetrically; a plain xor would make the two interchangeable
        z = _splitmix64(_splitmix64(z) ^ (ix & MASK64))
    return z


def rng_from(seed: int, *indices: int) -> np.random.Generator:
    """A fresh PCG64 generator keyed by ``child_seed(seed, *indices)``."""
    return np.random.Generator(np.random.PCG64(child_seed(seed, *indices)))


# Index tags keeping independent random decisions on disjoint streams.
TAG_APPLY = 0x41505059        # per-sample apply/skip draw
TAG_CHAIN_A = 0x4348_4E41     # phase-view transform chain
TAG_CHAIN_B = 0x4348_4E42     # amplitude-view transform chain
TAG_PERMUTATION = 0x5045524D  # minibatch pairing permutation
TAG_STAGE_S = 0x53           # single-image stage of combined mode
TAG_STAGE_P = 0x50           # pairing stage of combined mode
TAG_SIGN = 0x5349474E         # perturbation sign draws
TAG_BATCH = 0x42415443        # per-batch seeds in dataset runs
