"""Property sweeps run by ``icgspec selfcheck``."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

import numpy as np

from .icg import DivisorSet, Spectrum, ramanujan_table, spectrum
from .lemmas import build_phi_system, greedy_coefficients, is_odd_tower
from .numtheory import divisors, gcd_orbit, ramanujan_sum, ramanujan_sum_divisor_oracle, totient
from .oracle import INTEGRAL_TOL, RESIDUAL_TOL, dft_values_all_subsets, ramanujan_sum_root_oracle


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str

    def __str__(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}: {self.detail}"


def totient_divisor_sum(nmax: int) -> CheckResult:
    bad = [n for n in range(1, nmax + 1) if sum(totient(d) for d in divisors(n)) != n]
    return CheckResult("totient divisor sum", not bad, f"n <= {nmax}" + (f", fails at {bad[:5]}" if bad else ""))


def ramanujan_three_way(xmax: int) -> CheckResult:
    bad = []
    for x in range(1, xmax + 1):
        for y in range(1, xmax + 1):
            a = ramanujan_sum(x, y)
            if a != ramanujan_sum_divisor_oracle(x, y) or a != ramanujan_sum_root_oracle(x, y):
                bad.append((x, y))
    return CheckResult("Ramanujan sums, three routes", not bad, f"x, y <= {xmax}" + (f", fails at {bad[:5]}" if bad else ""))


def dft_vs_exact(n: int) -> tuple[int, float, float, list[int]]:
    """Compare DFT eigenvalues to exact spectra for every divisor subset of ``n``.

    Returns ``(subsets, max_integer_gap, residual, failing_masks)``.
    """
    table = ramanujan_table(n)
    ds = table.divisors
    bits = len(ds) - 1
    masks = np.arange(1 << bits, dtype=np.int64)
    member = (masks[:, None] >> np.arange(bits, dtype=np.int64)) & 1
    orbits = [sorted(gcd_orbit(n, d)) for d in ds[:-1]]
    values, residual = dft_values_all_subsets(n, member, orbits)
    rounded = np.rint(values).astype(np.int64)
    gap = float(np.abs(values - rounded).max()) if values.size else 0.0
    failing = []
    for m in range(1 << bits):
        counts: dict[int, int] = {}
        for v in rounded[m].tolist():
            counts[v] = counts.get(v, 0) + 1
        if Spectrum.from_weighted(counts.items()) != spectrum(DivisorSet(n, m), table):
            failing.append(m)
    return 1 << bits, gap, residual, failing


def dft_sweep(nmax: int) -> CheckResult:
    total, worst_gap, worst_res, bad = 0, 0.0, 0.0, []
    for n in range(1, nmax + 1):
        count, gap, res, failing = dft_vs_exact(n)
        total += count
        worst_gap, worst_res = max(worst_gap, gap), max(worst_res, res)
        bad += [(n, m) for m in failing]
    ok = not bad and worst_gap < INTEGRAL_TOL and worst_res < RESIDUAL_TOL
    return CheckResult(
        "DFT spectra vs exact",
        ok,
        f"{total} subsets over n <= {nmax}, max gap {worst_gap:.2e}, residual {worst_res:.2e}"
        + (f", mismatches {bad[:5]}" if bad else ""),
    )


def orbit_invariance(n: int) -> bool:
    """Eigenvalue at k depends only on gcd(k, n) (checked on the DFT values)."""
    table = ramanujan_table(n)
    bits = len(table.divisors) - 1
    masks = np.arange(1 << bits, dtype=np.int64)
    member = (masks[:, None] >> np.arange(bits, dtype=np.int64)) & 1
    orbits = [sorted(gcd_orbit(n, d)) for d in table.divisors[:-1]]
    values, _ = dft_values_all_subsets(n, member, orbits)
    cls = member @ table.array()
    col = [table.index[gcd(k, n)] for k in range(1, n + 1)]
    return bool(np.abs(values - cls[:, col]).max(initial=0.0) < INTEGRAL_TOL)


def per_sweep(nmax: int) -> CheckResult:
    checked, bad = 0, []
    for n in range(3, nmax + 1, 2):
        if not is_odd_tower(n):
            continue
        system = build_phi_system(n)
        checked += 1
        if system.per[-1] != n or not all(system.row_is_super(r) for r in range(1, system.s + 1)):
            bad.append(n)
    return CheckResult(
        "totient grid sums",
        not bad,
        f"{checked} odd tower orders <= {nmax}" + (f", fails at {bad[:5]}" if bad else ""),
    )


def greedy_bijection(nmax: int, jmax: int = 6) -> CheckResult:
    """Greedy recovery inverts every coefficient vector in ``0..c`` for each row.

    Rows come from the totient systems of odd tower orders up to ``nmax``
    with at most ``jmax`` nonzero exponents; ``c`` is the preceding grid sum.
    """
    pairs = set()
    for n in range(3, nmax + 1, 2):
        if not is_odd_tower(n):
            continue
        system = build_phi_system(n)
        for r in range(1, system.s + 1):
            row = system.f[r - 1]
            if len(row) - 1 <= jmax:
                pairs.add((system.per[r - 1], row))
    vectors, bad = 0, []
    for c, row in sorted(pairs):
        for coeffs in product(range(c + 1), repeat=len(row)):
            vectors += 1
            target = sum(a * x for a, x in zip(coeffs, row))
            if greedy_coefficients(row, c, target) != list(coeffs):
                bad.append((c, row, coeffs))
                break
    return CheckResult(
        "greedy coefficient recovery",
        not bad,
        f"{vectors} vectors over {len(pairs)} rows (n <= {nmax}, J <= {jmax})" + (f", fails at {bad[:3]}" if bad else ""),
    )


def run_all(nmax: int) -> list[CheckResult]:
    return [
        totient_divisor_sum(nmax),
        ramanujan_three_way(nmax),
        dft_sweep(nmax),
        per_sweep(nmax),
        greedy_bijection(nmax),
    ]
