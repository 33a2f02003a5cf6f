"""Seeding contract: (master seed, trial index) -> independent stream.

The generator family is pinned and recorded in every verdict so runs
stay reproducible across machines with the same numpy line.
"""

from __future__ import annotations

import numpy as np

RNG_FAMILY = "numpy-pcg64"


def rng_descriptor() -> str:
    return f"{RNG_FAMILY}/numpy-{np.__version__}"


def generator(master_seed: int, *key: int) -> np.random.Generator:
    """Stream derived from the master seed and an optional index path."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(key))
    return np.random.Generator(np.random.PCG64(ss))
