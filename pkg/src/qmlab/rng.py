"""Deterministic random streams.

All stochastic sampling in the workbench goes through `generator`, a
counter-based 64-bit-seeded Philox stream: the same seed always yields the
same sequence, and distinct seeds give independent streams (safe to fan out
over seed ranges in parallel).
"""

import numpy as np


def generator(seed: int) -> np.random.Generator:
    """Independent deterministic stream for a 64-bit integer seed."""
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))
