"""Structural facts about ICG spectra turned into checkable predicates.

Three groups live here:

* super-sequence arithmetic (unique bounded-coefficient representations and
  the totient grid that makes degrees determine divisor sets),
* necessary conditions for two divisor sets to be isospectral, reported as
  per-filter verdicts,
* a classifier naming which proven family an order ``n`` belongs to.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod
from typing import Sequence

from .errors import DomainError
from .icg import DivisorSet, RamanujanTable, degree, eigenvalue_at_divisor, ramanujan_table
from .numtheory import Factorization, factorize, totient

Number = int | Fraction


def is_c_super(x: Sequence[Number], c: Number) -> bool:
    """True iff every term exceeds ``c`` times the sum of the terms before it."""
    if not x:
        raise DomainError("sequence must be nonempty")
    running = Fraction(0)
    for t, xt in enumerate(x):
        if t and not Fraction(xt) > Fraction(c) * running:
            return False
        running += Fraction(xt)
    return True


def greedy_coefficients(x: Sequence[Number], c: int, target: Number) -> list[int] | None:
    """Coefficients ``a_j`` in ``0..c`` with ``sum(a_j * x_j) == target``.

    ``x`` must be a ``c``-super sequence, which makes the answer unique when
    it exists. Descends from the largest term taking as many copies as fit.
    """
    if isinstance(target, int) and all(isinstance(v, int) for v in x):
        return _greedy_int(x, c, target)
    rest = Fraction(target)
    if rest < 0:
        return None
    coeffs = [0] * len(x)
    for j in range(len(x) - 1, -1, -1):
        a = min(c, int(rest // Fraction(x[j])))
        coeffs[j] = a
        rest -= a * Fraction(x[j])
    return coeffs if rest == 0 else None


def _greedy_int(x: Sequence[int], c: int, rest: int) -> list[int] | None:
    if rest < 0:
        return None
    coeffs = [0] * len(x)
    for j in range(len(x) - 1, -1, -1):
        a = min(c, rest // x[j])
        coeffs[j] = a
        rest -= a * x[j]
    return coeffs if rest == 0 else None


@dataclass(frozen=True)
class SuperSequenceSystem:
    """Rows ``f[i][j] = phi(p_i ** j)`` and the partial grid sums ``per[r]``."""

    factorization: Factorization
    f: tuple[tuple[int, ...], ...]
    per: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.f)

    def row_is_super(self, r: int) -> bool:
        """Row ``r`` (1-based) is a ``per[r-1]``-super sequence."""
        return is_c_super(self.f[r - 1], self.per[r - 1])


def grid_sum(f: Sequence[Sequence[int]], r: int) -> int:
    """Sum over the index grid ``{0..J_1} x ... x {0..J_r}`` of ``prod f[i][tau_i]``."""
    if r == 0:
        return 1
    return sum(prod(f[i][t] for i, t in enumerate(tau)) for tau in product(*(range(len(row)) for row in f[:r])))


def tower_failure(fact: Factorization) -> int | None:
    """First ``r`` with ``p_1^J_1 ... p_r^J_r >= p_{r+1}``, or ``None``."""
    acc = 1
    for r, (p, e) in enumerate(fact.factors[:-1], start=1):
        acc *= p**e
        if acc >= fact.factors[r][0]:
            return r
    return None


def is_odd_tower(n: int) -> bool:
    if n % 2 == 0:
        return False
    fact = factorize(n)
    return len(fact) >= 2 and tower_failure(fact) is None


def build_phi_system(fact: Factorization | int, require_tower: bool = True) -> SuperSequenceSystem:
    """Totient rows for an odd ``n`` with at least two prime factors.

    The grid sum ``per[s]`` equals ``n`` for any such ``n``; the rows are
    only guaranteed super sequences under the tower condition, which is
    enforced unless ``require_tower`` is false.
    """
    if isinstance(fact, int):
        fact = factorize(fact)
    if fact.n % 2 == 0:
        raise DomainError(f"n={fact.n} must be odd")
    if len(fact) < 2:
        raise DomainError(f"n={fact.n} needs at least two distinct prime factors")
    r = tower_failure(fact)
    if r is not None and require_tower:
        head = prod(p**e for p, e in fact.factors[:r])
        raise DomainError(
            f"n={fact.n}: prefix r={r} has product {head} >= next prime {fact.factors[r][0]}"
        )
    f = tuple(tuple(totient(p**j) for j in range(e + 1)) for p, e in fact.factors)
    per = tuple(grid_sum(f, r) for r in range(len(f) + 1))
    return SuperSequenceSystem(fact, f, per)


def _decompose(f, per, level: int, target: int) -> list[tuple[int, ...]] | None:
    # Returns the grid points (over rows 0..level-1) whose products sum to target.
    row = f[level - 1]
    coeffs = greedy_coefficients(row, per[level - 1], target)
    if coeffs is None:
        return None
    if level == 1:
        return [(j,) for j, a in enumerate(coeffs) if a]
    points = []
    for j, a in enumerate(coeffs):
        if a == 0:
            continue
        sub = _decompose(f, per, level - 1, a)
        if sub is None:
            return None
        points.extend(tau + (j,) for tau in sub)
    return points


def recover_divisor_set_odd(n: int, weighted_sum: int) -> DivisorSet | None:
    """The unique ``D`` with ``sum(phi(n/d) for d in D) == weighted_sum``."""
    if not is_odd_tower(n):
        raise DomainError(f"n={n} is not an odd integer satisfying the tower condition")
    system = build_phi_system(n)
    points = _decompose(system.f, system.per, system.s, weighted_sum)
    if points is None:
        return None
    exps = system.factorization.factors
    ds = [prod(p ** (e - t) for (p, e), t in zip(exps, tau)) for tau in points]
    if n in ds:
        return None
    return DivisorSet.from_divisors(n, ds)


def odd_even_split(D: DivisorSet) -> tuple[int, int]:
    """Degree contributions of the odd and the even members of ``D``."""
    if D.n % 2:
        raise DomainError(f"n={D.n} must be even")
    odd = even = 0
    for d in D:
        w = totient(D.n // d)
        if d % 2:
            odd += w
        else:
            even += w
    return odd, even


class Verdict(str, enum.Enum):
    EXCLUDES = "EXCLUDES"
    PASSES = "PASSES"


@dataclass(frozen=True)
class FilterVerdict:
    name: str
    verdict: Verdict
    detail: str = ""

    @property
    def excludes(self) -> bool:
        return self.verdict is Verdict.EXCLUDES


FILTER_NAMES = ("degree", "half_divisor", "odd_prime_cofactor", "unit_divisor", "half_eigenvalue")


def unit_filter_applies(n: int) -> bool:
    """The ``1`` divisor can be pinned when the unit orbit holds half the group."""
    return 2 * totient(n) >= n


def odd_prime_cofactors(n: int) -> list[int]:
    return [n // p for p in factorize(n).primes if p % 2 and n // p != n]


def exclusion_filter(D1: DivisorSet, D2: DivisorSet, table: RamanujanTable | None = None) -> list[FilterVerdict]:
    """Run every applicable isospectrality necessary condition on a pair.

    ``EXCLUDES`` means the pair provably has different spectra; ``PASSES``
    means only that this particular test found nothing.
    """
    if D1.n != D2.n:
        raise DomainError(f"divisor sets for different orders {D1.n} and {D2.n}")
    n = D1.n
    delta = set(D1.divisors) ^ set(D2.divisors)
    out = []

    def verdict(name: str, excluded: bool, detail: str = "") -> None:
        out.append(FilterVerdict(name, Verdict.EXCLUDES if excluded else Verdict.PASSES, detail))

    d1, d2 = degree(D1), degree(D2)
    verdict("degree", d1 != d2, f"{d1} vs {d2}")
    if n % 2 == 0:
        verdict("half_divisor", n // 2 in delta, f"n/2={n // 2}")
    cof = [c for c in odd_prime_cofactors(n)]
    if cof:
        hit = sorted(delta.intersection(cof))
        verdict("odd_prime_cofactor", bool(hit), f"in difference: {hit}" if hit else "")
    if n > 1 and unit_filter_applies(n):
        verdict("unit_divisor", 1 in delta)
    if n % 2 == 0:
        table = table or ramanujan_table(n)
        h1 = eigenvalue_at_divisor(table, D1, n // 2)
        h2 = eigenvalue_at_divisor(table, D2, n // 2)
        verdict("half_eigenvalue", h1 != h2, f"{h1} vs {h2}")
    return out


class Case(str, enum.Enum):
    A_ODD_TOWER = "A_ODD_TOWER"
    B_EVEN_TOWER = "B_EVEN_TOWER"
    C_P3Q = "C_P3Q"
    D_P2Q2 = "D_P2Q2"
    UNCOVERED = "UNCOVERED"


@dataclass(frozen=True)
class CaseLabel:
    label: Case
    witness: dict = field(default_factory=dict)

    def __str__(self) -> str:
        if not self.witness:
            return self.label.value
        w = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.label.value} ({w})"


def classify(n: int) -> CaseLabel:
    """Which of the four proven families, if any, contains ``n``."""
    fact = factorize(n)
    if n % 2 and is_odd_tower(n):
        return CaseLabel(Case.A_ODD_TOWER, {"primes": list(fact.primes), "exponents": list(fact.exponents)})
    if n % 4 == 2 and n > 2 and is_odd_tower(n // 2):
        odd = factorize(n // 2)
        return CaseLabel(Case.B_EVEN_TOWER, {"primes": list(odd.primes), "exponents": list(odd.exponents)})
    if fact.exponents == (3, 1):
        p, q = fact.primes
        return CaseLabel(Case.C_P3Q, {"p": p, "q": q})
    if fact.exponents == (2, 2):
        p, q = fact.primes
        return CaseLabel(Case.D_P2Q2, {"p": p, "q": q})
    return CaseLabel(Case.UNCOVERED)
