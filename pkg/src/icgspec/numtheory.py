"""Exact integer number theory for circulant-graph spectra.

Everything here works on Python ints, so nothing overflows; the bound on
``n`` exists to keep trial division and divisor enumeration desk-sized.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

from .errors import DomainError

MAX_N = 2**32


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def _check(n: int, bound: int | None = MAX_N) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"expected an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if bound is not None and n > bound:
        raise DomainError(f"n={n} exceeds the configured bound {bound}")


@lru_cache(maxsize=4096)
def factorize(n: int, bound: int | None = MAX_N) -> Factorization:
    """Prime-power decomposition of ``n`` by trial division.

    ``bound=None`` lifts the size limit; only sensible when ``n`` is known
    to have small prime factors.

    >>> factorize(24).factors
    ((2, 3), (3, 1))
    """
    _check(n, bound)
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of ``n`` in ascending order."""
    _check(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return tuple(small + large[::-1])


def tau(n: int) -> int:
    """Number of divisors."""
    return prod(e + 1 for _, e in factorize(n).factors)


@lru_cache(maxsize=65536)
def totient(n: int) -> int:
    _check(n, None)
    result = n
    for p, _ in factorize(n, None).factors:
        result -= result // p
    return result


def mobius(n: int) -> int:
    _check(n, None)
    f = factorize(n, None).factors
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def gcd_orbit(n: int, d: int) -> frozenset[int]:
    """Residues ``j`` in ``1..n`` with ``gcd(j, n) == d``; ``n`` stands for 0."""
    _check(n)
    if d < 1 or n % d:
        raise DomainError(f"{d} does not divide {n}")
    m = n // d
    return frozenset(d * k for k in range(1, m + 1) if gcd(k, m) == 1)


def ramanujan_sum(x: int, y: int) -> int:
    """R_x(y) from the closed form phi(x) * mu(x/g) / phi(x/g), g = gcd(x, y)."""
    _check(x)
    _check(y, None)
    m = x // gcd(x, y)
    mu = mobius(m)
    if mu == 0:
        return 0
    q, r = divmod(totient(x), totient(m))
    assert r == 0, (x, y)
    return mu * q


def ramanujan_sum_divisor_oracle(x: int, y: int) -> int:
    """R_x(y) as the sum of d * mu(x/d) over the common divisors d of x and y."""
    _check(x)
    _check(y, None)
    g = gcd(x, y)
    return sum(d * mobius(x // d) for d in divisors(g))
