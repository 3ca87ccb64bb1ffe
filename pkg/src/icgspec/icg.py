"""Integral circulant graphs ICG(n, D) and their exact spectra.

A graph is described by the set ``D`` of proper divisors of ``n``; its
connection set is the union of the gcd-orbits ``G_n(d)``. Eigenvalues are
constant on each class ``{k : gcd(k, n) = e}``, so a spectrum is assembled
from one eigenvalue per divisor ``e`` with multiplicity ``phi(n/e)``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Iterator

import numpy as np

from .errors import DomainError
from .numtheory import divisors, gcd_orbit, ramanujan_sum, totient


@dataclass(frozen=True)
class DivisorSet:
    """Subset of the proper divisors of ``n`` stored as a bitmask.

    Bit ``i`` stands for ``divisors(n)[i]``; the bit for ``n`` itself is
    never set.
    """

    n: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> (len(divisors(self.n)) - 1):
            raise DomainError(f"mask {self.mask:#x} is not a subset of the proper divisors of {self.n}")

    @classmethod
    def from_divisors(cls, n: int, ds: Iterable[int]) -> DivisorSet:
        index = {d: i for i, d in enumerate(divisors(n))}
        mask = 0
        for d in ds:
            if d == n:
                raise DomainError(f"divisor n excluded: {d} is n itself")
            if d not in index:
                raise DomainError(f"{d} is not a divisor of {n}")
            mask |= 1 << index[d]
        return cls(n, mask)

    @cached_property
    def divisors(self) -> tuple[int, ...]:
        ds = divisors(self.n)
        return tuple(d for i, d in enumerate(ds) if self.mask >> i & 1)

    def __contains__(self, d: int) -> bool:
        return d in self.divisors

    def __iter__(self) -> Iterator[int]:
        return iter(self.divisors)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __repr__(self) -> str:
        return f"DivisorSet({self.n}, {set(self.divisors) or '{}'})"

    def to_json(self) -> list[int]:
        return list(self.divisors)


@dataclass(frozen=True)
class Spectrum:
    """Canonical spectrum: distinct eigenvalues, descending, with multiplicities."""

    entries: tuple[tuple[int, int], ...]

    @classmethod
    def from_weighted(cls, pairs: Iterable[tuple[int, int]]) -> Spectrum:
        """Merge ``(eigenvalue, multiplicity)`` pairs that share an eigenvalue."""
        acc: dict[int, int] = defaultdict(int)
        for value, mult in pairs:
            acc[value] += mult
        return cls(tuple(sorted(((v, m) for v, m in acc.items() if m), reverse=True)))

    @classmethod
    def from_json(cls, data) -> Spectrum:
        return cls(tuple((int(v), int(m)) for v, m in data))

    @property
    def order(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def largest(self) -> int:
        return self.entries[0][0]

    def multiplicity(self, value: int) -> int:
        return dict(self.entries).get(value, 0)

    def to_json(self) -> list[list[int]]:
        return [[v, m] for v, m in self.entries]

    def __str__(self) -> str:
        return " ".join(f"{v}^{m}" for v, m in self.entries)


@dataclass(frozen=True, eq=False)
class RamanujanTable:
    """``rows[i][j] = R_{n/d_i}(d_j)`` over the sorted divisors ``d`` of ``n``."""

    n: int
    divisors: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    @cached_property
    def weights(self) -> tuple[int, ...]:
        """Size of each eigenvalue class: ``phi(n/e)``."""
        return tuple(totient(self.n // e) for e in self.divisors)

    @cached_property
    def index(self) -> dict[int, int]:
        return {d: i for i, d in enumerate(self.divisors)}

    def entry(self, d: int, e: int) -> int:
        return self.rows[self.index[d]][self.index[e]]

    def array(self) -> np.ndarray:
        """Proper-divisor rows as an int64 matrix, shape ``(tau-1, tau)``."""
        return np.array(self.rows[:-1], dtype=np.int64).reshape(len(self.divisors) - 1, len(self.divisors))


@lru_cache(maxsize=256)
def ramanujan_table(n: int) -> RamanujanTable:
    ds = divisors(n)
    rows = tuple(tuple(ramanujan_sum(n // d, e) for e in ds) for d in ds)
    return RamanujanTable(n, ds, rows)


def _table_for(D: DivisorSet, table: RamanujanTable | None) -> RamanujanTable:
    if table is None:
        return ramanujan_table(D.n)
    if table.n != D.n:
        raise DomainError(f"table is for n={table.n}, divisor set for n={D.n}")
    return table


def connection_set(D: DivisorSet) -> frozenset[int]:
    """Residues of the connection set: the union of ``G_n(d)`` for ``d`` in ``D``."""
    out: set[int] = set()
    for d in D:
        out |= gcd_orbit(D.n, d)
    return frozenset(out)


def degree(D: DivisorSet) -> int:
    return sum(totient(D.n // d) for d in D)


def eigenvalue_at_divisor(table: RamanujanTable, D: DivisorSet, e: int) -> int:
    """Eigenvalue shared by every ``k`` with ``gcd(k, n) == e``."""
    if table.n != D.n:
        raise DomainError(f"table is for n={table.n}, divisor set for n={D.n}")
    if e not in table.index:
        raise DomainError(f"{e} does not divide {table.n}")
    j = table.index[e]
    return sum(table.rows[i][j] for i in range(len(table.divisors)) if D.mask >> i & 1)


def class_eigenvalues(D: DivisorSet, table: RamanujanTable | None = None) -> list[int]:
    """Eigenvalue of every divisor class, in divisor order."""
    table = _table_for(D, table)
    acc = [0] * len(table.divisors)
    for i, row in enumerate(table.rows):
        if D.mask >> i & 1:
            for j, r in enumerate(row):
                acc[j] += r
    return acc


def spectrum(D: DivisorSet, table: RamanujanTable | None = None) -> Spectrum:
    table = _table_for(D, table)
    return Spectrum.from_weighted(zip(class_eigenvalues(D, table), table.weights))


def spectra_equal(a: Spectrum, b: Spectrum) -> bool:
    return a.entries == b.entries


def complement(D: DivisorSet) -> DivisorSet:
    full = (1 << (len(divisors(D.n)) - 1)) - 1
    return DivisorSet(D.n, full & ~D.mask)


def level_set(D: DivisorSet, value: int, table: RamanujanTable | None = None) -> frozenset[int]:
    """Divisor classes ``e`` whose eigenvalue equals ``value``."""
    table = _table_for(D, table)
    lam = class_eigenvalues(D, table)
    return frozenset(e for e, v in zip(table.divisors, lam) if v == value)


def is_integral_connection_set(n: int, S: Iterable[int]) -> tuple[bool, DivisorSet | None]:
    """Decide whether ``S`` is a union of gcd-orbits, and recover ``D`` if so.

    ``S`` must be a symmetric subset of ``1..n-1``.
    """
    S = frozenset(S)
    bad = [s for s in S if not 1 <= s < n]
    if bad:
        raise DomainError(f"residues {sorted(bad)} are outside 1..{n - 1}")
    asym = sorted(s for s in S if n - s not in S)
    if asym:
        raise DomainError(f"connection set is not symmetric: missing negatives of {asym}")
    found = {gcd(s, n) for s in S}
    D = DivisorSet.from_divisors(n, found)
    if connection_set(D) == S:
        return True, D
    return False, None
