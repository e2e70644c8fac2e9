"""
Seeded random streams.

Stream ``j`` of seed ``s`` is ``SeedSequence(s, spawn_key=(j,))``, so any single step of a run can
be replayed without generating the ones before it, and workers never share generator state.
"""

import numpy as np


def stream(seed: int, index: int) -> np.random.Generator:
    """
    Independent generator for one step (or one sampled record) of a seeded run.

    Args:
        seed: The run seed (64-bit)
        index: Step or record index

    Returns:
        A numpy Generator
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def record_seed(seed: int, index: int) -> int:
    """
    64-bit seed identifying record ``index`` of a sampling run on its own.
    """
    state = np.random.SeedSequence(seed, spawn_key=(index,)).generate_state(1, np.uint64)
    return int(state[0])
