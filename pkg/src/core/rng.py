"""Seeded random streams.

All randomness derives from a run seed through numpy's ``SeedSequence``:
the generator is PCG64 and each consumer gets its own spawn key, so a
stream's draws never depend on how much another stream consumed.

Spawn keys are ``(STREAM, *extra)``; per-agent streams append the agent id.
"""

from typing import Sequence

import numpy as np

# Stream identifiers (part of the reproducibility contract, never renumber).
SAMPLING = 1
BITS = 2
ELECTION = 3
STRINGS = 4
DIAMETER = 5
STEP2 = 6
SEC = 7


def make_rng(seed: int, stream: int, *extra: int) -> np.random.Generator:
    """Return an independent PCG64 generator for ``(seed, stream, *extra)``."""
    key: Sequence[int] = (int(stream),) + tuple(int(e) for e in extra)
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=key)
    return np.random.Generator(np.random.PCG64(ss))
