"""Deterministic counter-based random streams.

Every stochastic draw in the package comes from a Philox generator keyed by
(master_seed, purpose tag, index), so results never depend on draw order,
worker count, or scheduling.
"""

import numpy as np

REALIZATION_TAG = 0x7265616C  # ascii "real"
DISORDER_TAG = 0x646973       # ascii "dis"


def stream(master_seed, tag, index):
    """Independent Generator for (master_seed, tag, index)."""
    ss = np.random.SeedSequence(entropy=int(master_seed) & (2**64 - 1),
                                spawn_key=(int(tag), int(index)))
    return np.random.Generator(np.random.Philox(ss))


def derived_seed(master_seed, tag, index):
    """64-bit child seed, usable as the master seed of a nested level."""
    ss = np.random.SeedSequence(entropy=int(master_seed) & (2**64 - 1),
                                spawn_key=(int(tag), int(index)))
    words = ss.generate_state(2, dtype=np.uint32)
    return (int(words[0]) << 32) | int(words[1])
