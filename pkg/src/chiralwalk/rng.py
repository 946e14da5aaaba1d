"""Seedable, splittable random streams for reproducible ensembles."""

from __future__ import annotations

import numpy as np


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Return a counter-based generator for the given (seed, index path).

    Identical ``(master_seed, key)`` always yields the same stream, independent
    of how many other streams exist or the order in which they are consumed.
    This is what makes trajectory ensembles deterministic regardless of worker
    count: trajectory ``j`` of a run always draws from ``substream(seed, j)``.
    """
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=key)
    return np.random.Generator(np.random.Philox(ss))
