"""Counter-based uniforms: each draw is a pure hash of (seed, replicate, draw).

There is no generator state, so any partition of replicates across workers
sees exactly the same numbers. The mixer is the SplitMix64 finalizer applied
in two keyed rounds.
"""

from __future__ import annotations

import numpy as np

__all__ = ["stream_key", "uniforms"]

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_DRAW_STEP = np.uint64(0xD1B54A32D192ED03)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def stream_key(seed: int) -> np.uint64:
    """Scramble a user seed (any int, reduced mod 2**64) into a stream key."""
    with np.errstate(over="ignore"):
        return _mix(np.array([seed & _MASK64], dtype=np.uint64) + _GOLDEN)[0]


def uniforms(seed: int, replicates: np.ndarray, draw: int) -> np.ndarray:
    """Uniforms on the open interval (0, 1), one per replicate index, for draw number ``draw``."""
    key = stream_key(seed)
    reps = np.asarray(replicates, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = _mix(key ^ ((reps + np.uint64(1)) * _GOLDEN))
        z = _mix(z + np.uint64((draw + 1) & _MASK64) * _DRAW_STEP)
    # 53 high bits, offset by half an ulp so neither 0 nor 1 can occur.
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * (1.0 / 9007199254740992.0)
