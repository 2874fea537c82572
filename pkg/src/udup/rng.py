"""Named, independently derivable random streams.

Every pipeline stage draws from its own stream derived from one master seed,
so varying one experiment axis (e.g. the perception error rate) never shifts
the randomness consumed by another (e.g. fold assignment or masking).
"""

from __future__ import annotations

import numpy as np

# Stable stream ids; appending is fine, renumbering breaks reproducibility.
_STREAMS = {
    "init": 0,
    "synthesis": 1,
    "inject": 2,
    "masking": 3,
    "folds": 4,
    "resample": 5,
    "bench": 6,
    "recognize": 7,
}


def stream_rng(seed: int, stream: str, *index: int) -> np.random.Generator:
    """Generator for the named stream, optionally sub-indexed (e.g. per trace)."""
    key = (_STREAMS[stream],) + tuple(int(i) for i in index)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def stream_seed(seed: int, stream: str, *index: int) -> int:
    """A fresh integer seed derived from the named stream."""
    return int(stream_rng(seed, stream, *index).integers(0, 2**63 - 1))
