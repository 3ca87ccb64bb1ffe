"""Pure-Python (numpy) spectrum-hash kernel.

Evaluates each block directly as ``bits @ table`` instead of walking it, so
it doubles as an independent check on the compiled Gray-code walk.
"""
from __future__ import annotations

import numpy as np

SALT = np.uint64(0x9E3779B97F4A7C15)
M1 = np.uint64(0xBF58476D1CE4E5B9)
M2 = np.uint64(0x94D049BB133111EB)
CHUNK_BITS = 16


def mix(lam: np.ndarray) -> np.ndarray:
    z = lam.astype(np.int64).view(np.uint64) + SALT
    z = (z ^ (z >> np.uint64(30))) * M1
    z = (z ^ (z >> np.uint64(27))) * M2
    return z ^ (z >> np.uint64(31))


def spectrum_hashes(table: np.ndarray, weights: np.ndarray, base_mask: int, low_bits: int) -> np.ndarray:
    """Hash of the spectrum of ``base_mask | g`` for every ``g < 2**low_bits``."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.int64).view(np.uint64)
    bits, _ = table.shape
    size = 1 << low_bits
    if low_bits > bits or base_mask >> bits or base_mask & (size - 1):
        raise ValueError("block does not fit the divisor bitmask")
    shifts = np.arange(bits, dtype=np.int64)
    out = np.empty(size, dtype=np.uint64)
    step = 1 << min(low_bits, CHUNK_BITS)
    for start in range(0, size, step):
        masks = base_mask | np.arange(start, start + step, dtype=np.int64)
        member = (masks[:, None] >> shifts) & 1
        lam = member @ table
        out[start:start + step] = (mix(lam) * weights).sum(axis=1, dtype=np.uint64)
    return out
