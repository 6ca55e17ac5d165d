"""Counter-based seed derivation.

A 64-bit master seed is expanded with :class:`numpy.random.SeedSequence`
spawn keys: trial ``t`` gets key ``(t,)`` and round ``i`` of a run gets key
``(i,)`` below the run's own seed.  Any stream can therefore be regenerated
without replaying the streams before it.
"""

from __future__ import annotations

import numpy as np


def derive_seed(seed: int, *key: int) -> int:
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(hi) << 32 | int(lo)


def derive_rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key)))
