"""Counter-based RNG derivation.

All randomness in the package flows from a single user seed plus integer
counters, so results are reproducible and independent of execution order.
"""

import numpy as np


def _entropy(keys):
    ent = [int(k) for k in keys]
    if not ent:
        raise ValueError("at least one seed key is required")
    if any(k < 0 for k in ent):
        raise ValueError("seed keys must be non-negative integers")
    return ent


def derive_rng(*keys: int) -> np.random.Generator:
    """Return a generator keyed by (seed, counter, ...)."""
    return np.random.default_rng(np.random.SeedSequence(_entropy(keys)))


def derive_int(*keys: int) -> int:
    """Collapse (seed, counter, ...) into a single non-negative integer seed."""
    return int(np.random.SeedSequence(_entropy(keys)).generate_state(1, np.uint64)[0])
