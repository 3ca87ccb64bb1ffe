"""Floating-point cross-checks built directly on roots of unity.

Nothing on the exact path imports this module. It exists so that tests and
``icgspec selfcheck`` can compare the closed-form machinery against the
definition of a circulant eigenvalue.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, gcd, pi, sin
from typing import Iterable

import numpy as np

from .errors import DomainError, OracleInconsistency
from .icg import DivisorSet, Spectrum, connection_set

ORACLE_MAX_N = 10**4
RESIDUAL_TOL = 1e-9
INTEGRAL_TOL = 1e-6


@dataclass(frozen=True)
class FloatSpectrumSample:
    n: int
    values: tuple[float, ...]  # values[k-1] is the eigenvalue at k = 1..n
    residual: float

    def at(self, k: int) -> float:
        return self.values[k - 1]

    def integrality_gap(self) -> float:
        return max(abs(v - round(v)) for v in self.values)


def _check_connection_set(n: int, S: frozenset[int]) -> None:
    if not 1 <= n <= ORACLE_MAX_N:
        raise DomainError(f"oracle n must lie in 1..{ORACLE_MAX_N}, got {n}")
    if any(not 1 <= s < n for s in S):
        raise DomainError(f"connection set must lie in 1..{n - 1}")
    if any(n - s not in S for s in S):
        raise DomainError("connection set is not symmetric")


def dft_eigenvalues(n: int, S: Iterable[int]) -> FloatSpectrumSample:
    """Evaluate sum of exp(2 pi i k g / n) over g in S for every k in 1..n."""
    S = frozenset(S)
    _check_connection_set(n, S)
    g = np.array(sorted(S), dtype=np.float64)
    k = np.arange(1, n + 1, dtype=np.float64)[:, None]
    angle = 2 * np.pi * ((k * g) % n) / n
    re = np.cos(angle).sum(axis=1) if len(S) else np.zeros(n)
    im = np.sin(angle).sum(axis=1) if len(S) else np.zeros(n)
    residual = float(np.abs(im).max()) if n else 0.0
    return FloatSpectrumSample(n, tuple(float(v) for v in re), residual)


def rounded_spectrum(sample: FloatSpectrumSample) -> Spectrum:
    """Round an integral sample to a canonical ``Spectrum``.

    Raises if any value sits further than ``INTEGRAL_TOL`` from an integer.
    """
    if sample.residual >= RESIDUAL_TOL:
        raise OracleInconsistency(f"imaginary residual {sample.residual:.3g} for n={sample.n}")
    gap = sample.integrality_gap()
    if gap >= INTEGRAL_TOL:
        raise OracleInconsistency(f"eigenvalue {gap:.3g} away from an integer for n={sample.n}")
    return Spectrum.from_weighted((int(round(v)), 1) for v in sample.values)


def dft_spectrum(D: DivisorSet) -> Spectrum:
    return rounded_spectrum(dft_eigenvalues(D.n, connection_set(D)))


def dft_values_all_subsets(n: int, orbit_masks: np.ndarray, orbits: list[list[int]]) -> tuple[np.ndarray, float]:
    """DFT eigenvalues for many divisor subsets of ``n`` at once.

    ``orbit_masks`` has one row per subset and one 0/1 column per orbit in
    ``orbits``. Returns ``(values, residual)`` with ``values[s, k-1]`` the
    eigenvalue of subset ``s`` at ``k``.
    """
    k = np.arange(1, n + 1)[:, None]
    re_cols, im_cols = [], []
    for orbit in orbits:
        g = np.array(orbit, dtype=np.int64)[None, :]
        angle = 2 * np.pi * ((k * g) % n) / n
        re_cols.append(np.cos(angle).sum(axis=1) if orbit else np.zeros(n))
        im_cols.append(np.sin(angle).sum(axis=1) if orbit else np.zeros(n))
    re = np.array(re_cols).reshape(len(orbits), n)
    im = np.array(im_cols).reshape(len(orbits), n)
    M = orbit_masks.astype(np.float64)
    values = M @ re
    residual = float(np.abs(M @ im).max()) if M.size else 0.0
    return values, residual


def ramanujan_sum_root_oracle(x: int, y: int) -> int:
    """R_x(y) summed over primitive x-th roots of unity, then rounded."""
    if not 1 <= x <= ORACLE_MAX_N:
        raise DomainError(f"oracle x must lie in 1..{ORACLE_MAX_N}, got {x}")
    if y < 1:
        raise DomainError(f"y must be positive, got {y}")
    re = im = 0.0
    for g in range(1, x + 1):
        if gcd(g, x) == 1:
            t = 2 * pi * ((y * g) % x) / x
            re += cos(t)
            im += sin(t)
    if abs(im) >= RESIDUAL_TOL:
        raise OracleInconsistency(f"R_{x}({y}) has imaginary residual {im:.3g}")
    r = round(re)
    if abs(re - r) >= INTEGRAL_TOL:
        raise OracleInconsistency(f"R_{x}({y}) = {re!r} is not near an integer")
    return int(r)
