"""Backend selection for the subset-hashing kernel.

The compiled extension is used when it imports; otherwise, or when
``ICG_KERNEL=python`` is set, the numpy implementation takes over. Both
return identical arrays.
"""
from __future__ import annotations

import logging
import os

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNELS = {"python": _pykernels.spectrum_hashes}
if _ckernels is not None:
    KERNELS["cython"] = _ckernels.spectrum_hashes


def _default_backend() -> str:
    wanted = os.environ.get("ICG_KERNEL", "").strip().lower()
    if wanted:
        if wanted not in KERNELS:
            log.warning("ICG_KERNEL=%s unavailable, using %s", wanted, "cython" if _ckernels else "python")
        else:
            return wanted
    return "cython" if "cython" in KERNELS else "python"


BACKEND = _default_backend()


def spectrum_hashes(table, weights, base_mask: int, low_bits: int, backend: str | None = None):
    return KERNELS[backend or BACKEND](table, weights, base_mask, low_bits)
