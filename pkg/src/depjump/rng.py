"""Deterministic, counter-based random streams.

Every random draw in the library flows through a Philox generator keyed by
(seed, *path), so results are reproducible bit-for-bit and independent of
execution order or thread count.  There is no global RNG state anywhere.
"""

from __future__ import annotations

import numpy as np

_MAX_SEED = 2**64


def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)):
        raise ValueError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= seed < _MAX_SEED:
        raise ValueError(f"seed must be in [0, 2^64), got {seed}")
    return int(seed)


def stream(seed: int, *path: int) -> np.random.Generator:
    """Generator for the sub-stream identified by (seed, *path)."""
    seq = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=tuple(path))
    return np.random.Generator(np.random.Philox(seq))


def trial_seed(master_seed: int, trial_index: int) -> int:
    """Derived 64-bit seed for one trial; independent of how trials are scheduled."""
    seq = np.random.SeedSequence(entropy=check_seed(master_seed), spawn_key=(trial_index,))
    return int(seq.generate_state(1, np.uint64)[0])
