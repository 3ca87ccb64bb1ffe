"""Exhaustive search for isospectral ICG pairs.

For an order ``n`` every subset of the proper divisors is hashed by its
spectrum; subsets sharing a hash are compared exactly, so a hash collision
alone never produces a reported counterexample.
"""
from __future__ import annotations

import json
import logging
import os
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from . import kernels
from .errors import BudgetExceeded, DomainError
from .icg import DivisorSet, RamanujanTable, Spectrum, ramanujan_table, spectrum
from .lemmas import odd_prime_cofactors, unit_filter_applies
from .numtheory import tau

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2**24


def subset_budget() -> int:
    raw = os.environ.get("ICG_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"ICG_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError("ICG_BUDGET must be positive")
    return value


def check_budget(n: int, budget: int | None = None) -> int:
    """Number of subsets for ``n``; raises ``BudgetExceeded`` past the budget."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    budget = subset_budget() if budget is None else budget
    bits = tau(n) - 1
    if bits >= 63 or 1 << bits > budget:
        raise BudgetExceeded(n, 1 << bits, budget)
    return 1 << bits


@dataclass(frozen=True)
class Collision:
    first: DivisorSet
    second: DivisorSet
    spectrum: Spectrum

    def to_record(self) -> dict:
        return {"a": self.first.to_json(), "b": self.second.to_json(), "spectrum": self.spectrum.to_json()}

    @classmethod
    def from_record(cls, n: int, rec: dict) -> Collision:
        return cls(
            DivisorSet.from_divisors(n, rec["a"]),
            DivisorSet.from_divisors(n, rec["b"]),
            Spectrum.from_json(rec["spectrum"]),
        )


@dataclass
class VerificationReport:
    n: int
    tau: int
    subset_count: int
    distinct_spectra: int | None
    collisions: list[Collision] = field(default_factory=list)
    filter_stats: dict[str, int] = field(default_factory=dict)
    elapsed_ms: int = 0
    error: str | None = None

    @property
    def holds(self) -> bool:
        """No two distinct divisor sets share a spectrum."""
        return self.error is None and not self.collisions and self.distinct_spectra == self.subset_count

    def to_record(self, timing: bool = True) -> dict:
        rec = {
            "n": self.n,
            "tau": self.tau,
            "subsets": self.subset_count,
            "distinct": self.distinct_spectra,
            "collisions": [c.to_record() for c in self.collisions],
            "filters": dict(self.filter_stats),
        }
        if timing:
            rec["ms"] = self.elapsed_ms
        if self.error is not None:
            rec["error"] = self.error
        return rec

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_record(timing), separators=(",", ":"))

    def canonical(self) -> str:
        """Serialization without wall time; equal for equal results."""
        return self.to_json(timing=False)

    @classmethod
    def from_record(cls, rec: dict) -> VerificationReport:
        n = rec["n"]
        return cls(
            n=n,
            tau=rec["tau"],
            subset_count=rec["subsets"],
            distinct_spectra=rec["distinct"],
            collisions=[Collision.from_record(n, c) for c in rec["collisions"]],
            filter_stats=dict(rec["filters"]),
            elapsed_ms=rec.get("ms", 0),
            error=rec.get("error"),
        )


def shard_plan(bits: int, total: int) -> tuple[int, list[tuple[int, int]]]:
    """Split ``2**bits`` masks into ``total`` contiguous runs of equal-size blocks.

    Blocks are keyed by the high mask bits. Returns ``(low_bits, ranges)``
    where shard ``i`` owns blocks ``ranges[i][0] <= b < ranges[i][1]`` and
    block ``b`` covers masks ``b << low_bits`` onward.
    """
    if total < 1:
        raise DomainError(f"shard count must be positive, got {total}")
    high = min(bits, (total - 1).bit_length())
    nblocks = 1 << high
    return bits - high, [(i * nblocks // total, (i + 1) * nblocks // total) for i in range(total)]


def run_shard(n: int, index: int, total: int, backend: str | None = None) -> np.ndarray:
    """Spectrum hashes for the masks owned by shard ``index`` of ``total``, ascending."""
    table = ramanujan_table(n)
    bits = len(table.divisors) - 1
    low, ranges = shard_plan(bits, total)
    if not 0 <= index < total:
        raise DomainError(f"shard index {index} outside 0..{total - 1}")
    arr = table.array()
    weights = np.array(table.weights, dtype=np.int64)
    lo, hi = ranges[index]
    parts = [kernels.spectrum_hashes(arr, weights, b << low, low, backend) for b in range(lo, hi)]
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.uint64)


def _shard_task(args):
    return run_shard(*args)


def _member_matrix(bits: int) -> np.ndarray:
    masks = np.arange(1 << bits, dtype=np.int64)
    return (masks[:, None] >> np.arange(bits, dtype=np.int64)) & 1


def _unequal_pairs(values: np.ndarray) -> int:
    _, counts = np.unique(values, return_counts=True)
    return comb(len(values), 2) - sum(comb(int(c), 2) for c in counts)


def _bits_differ_pairs(total_bits: int, k: int) -> int:
    # Pairs of masks that differ somewhere on a fixed set of k bit positions.
    n_masks = 1 << total_bits
    return comb(n_masks, 2) - (1 << k) * comb(n_masks >> k, 2)


def filter_statistics(n: int, table: RamanujanTable | None = None) -> dict[str, int]:
    """For each applicable filter, how many subset pairs it excludes."""
    table = table or ramanujan_table(n)
    ds = table.divisors
    bits = len(ds) - 1
    member = _member_matrix(bits)
    proper_weights = np.array(table.weights[:-1], dtype=np.int64)
    stats = {"degree": _unequal_pairs(member @ proper_weights)}
    idx = table.index
    if n % 2 == 0:
        stats["half_divisor"] = _bits_differ_pairs(bits, 1)
    cof = odd_prime_cofactors(n)
    if cof:
        stats["odd_prime_cofactor"] = _bits_differ_pairs(bits, len(cof))
    if n > 1 and unit_filter_applies(n):
        stats["unit_divisor"] = _bits_differ_pairs(bits, 1)
    if n % 2 == 0:
        column = table.array()[:, idx[n // 2]]
        stats["half_eigenvalue"] = _unequal_pairs(member @ column)
    return stats


def _confirm(n: int, masks: Iterable[int], table: RamanujanTable) -> tuple[int, list[Collision]]:
    # Exact comparison of subsets that share a hash: number of distinct
    # spectra among them, and every isospectral pair.
    groups: dict[Spectrum, list[DivisorSet]] = defaultdict(list)
    for m in masks:
        D = DivisorSet(n, int(m))
        groups[spectrum(D, table)].append(D)
    found = []
    for spec, members in groups.items():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                found.append(Collision(a, b, spec))
    return len(groups), found


def merge_hashes(n: int, hashes: np.ndarray, table: RamanujanTable | None = None) -> tuple[int, list[Collision]]:
    """Distinct-spectrum count and confirmed collisions from a full hash array."""
    table = table or ramanujan_table(n)
    order = np.argsort(hashes, kind="stable")
    ordered = hashes[order]
    starts = np.flatnonzero(np.r_[True, ordered[1:] != ordered[:-1]])
    distinct = len(starts)
    collisions: list[Collision] = []
    bounds = np.r_[starts, len(ordered)]
    for s, e in zip(bounds[:-1], bounds[1:]):
        if e - s < 2:
            continue
        groups, found = _confirm(n, order[s:e], table)
        if groups > 1:
            log.debug("n=%d: hash shared by %d non-isospectral subsets", n, groups)
        distinct += groups - 1
        collisions.extend(found)
    collisions.sort(key=lambda c: (c.first.mask, c.second.mask))
    return distinct, collisions


def verify_order(
    n: int,
    collect_filter_stats: bool = False,
    shards: int = 1,
    jobs: int = 1,
    budget: int | None = None,
    backend: str | None = None,
) -> VerificationReport:
    """Check every pair of divisor subsets of ``n`` for equal spectra.

    The subset space is cut into ``shards`` pieces, optionally run on ``jobs``
    processes, and merged in mask order; the result does not depend on
    either setting.
    """
    started = time.perf_counter()
    count = check_budget(n, budget)
    table = ramanujan_table(n)
    tasks = [(n, i, shards, backend) for i in range(shards)]
    if jobs > 1 and shards > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_shard_task, tasks))
    else:
        parts = [_shard_task(t) for t in tasks]
    hashes = np.concatenate(parts)
    assert len(hashes) == count
    distinct, collisions = merge_hashes(n, hashes, table)
    stats = filter_statistics(n, table) if collect_filter_stats else {}
    return VerificationReport(
        n=n,
        tau=len(table.divisors),
        subset_count=count,
        distinct_spectra=distinct,
        collisions=collisions,
        filter_stats=stats,
        elapsed_ms=int((time.perf_counter() - started) * 1000),
    )


def _range_task(args) -> VerificationReport:
    n, stats, budget, backend = args
    try:
        return verify_order(n, collect_filter_stats=stats, budget=budget, backend=backend)
    except BudgetExceeded as exc:
        return VerificationReport(n=n, tau=tau(n), subset_count=exc.required, distinct_spectra=None, error="budget")


def load_completed(path: Path) -> dict[int, VerificationReport]:
    """Reports already written to a JSONL results file, keyed by ``n``."""
    done: dict[int, VerificationReport] = {}
    if not path.exists():
        return done
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                log.warning("skipping unreadable line in %s", path)
                continue
            if "n" in rec and rec.get("error") is None:
                done[rec["n"]] = VerificationReport.from_record(rec)
    return done


def summary_record(lo: int, hi: int, reports: list[VerificationReport]) -> dict:
    return {"range": [lo, hi], "all_hold": all(r.holds for r in reports)}


def verify_range(
    lo: int,
    hi: int,
    parallelism: int = 1,
    out: str | Path | None = None,
    collect_filter_stats: bool = False,
    budget: int | None = None,
    backend: str | None = None,
    on_report: Callable[[VerificationReport], None] | None = None,
) -> list[VerificationReport]:
    """Verify every order in ``lo..hi``; reports come back in ascending ``n``.

    With ``out`` set, each new report is appended to that JSONL file and a
    summary line closes the run. Orders already recorded there are reused
    instead of recomputed.
    """
    if lo < 1 or hi < lo:
        raise DomainError(f"invalid range {lo}..{hi}")
    if parallelism < 1:
        raise DomainError("parallelism must be positive")
    path = Path(out) if out is not None else None
    done = load_completed(path) if path else {}
    todo = [n for n in range(lo, hi + 1) if n not in done]
    tasks = [(n, collect_filter_stats, budget, backend) for n in todo]
    fresh: dict[int, VerificationReport] = {}
    fh = path.open("a") if path else None
    try:
        if parallelism > 1 and len(tasks) > 1:
            pool = ProcessPoolExecutor(max_workers=parallelism)
            results = pool.map(_range_task, tasks, chunksize=1)
        else:
            pool = None
            results = map(_range_task, tasks)
        for rep in results:
            fresh[rep.n] = rep
            if fh:
                fh.write(rep.to_json() + "\n")
                fh.flush()
            if on_report:
                on_report(rep)
        if pool:
            pool.shutdown()
        reports = [done.get(n) or fresh[n] for n in range(lo, hi + 1)]
        if fh:
            fh.write(json.dumps(summary_record(lo, hi, reports), separators=(",", ":")) + "\n")
    finally:
        if fh:
            fh.close()
    return reports


def incremental_spectrum_walk(
    n: int,
    visitor: Callable[[DivisorSet, Spectrum], None],
    budget: int | None = None,
) -> int:
    """Visit every divisor subset of ``n`` in Gray-code order.

    Each step flips one divisor and adds or subtracts that divisor's row of
    Ramanujan sums from the running class eigenvalues. Returns the number of
    subsets visited.
    """
    count = check_budget(n, budget)
    table = ramanujan_table(n)
    weights = table.weights
    acc = [0] * len(table.divisors)
    mask = 0
    visitor(DivisorSet(n, 0), Spectrum.from_weighted(zip(acc, weights)))
    for i in range(1, count):
        b = (i & -i).bit_length() - 1
        mask ^= 1 << b
        row = table.rows[b]
        if mask >> b & 1:
            acc = [a + r for a, r in zip(acc, row)]
        else:
            acc = [a - r for a, r in zip(acc, row)]
        visitor(DivisorSet(n, mask), Spectrum.from_weighted(zip(acc, weights)))
    return count


__all__ = [
    "Collision",
    "VerificationReport",
    "check_budget",
    "filter_statistics",
    "incremental_spectrum_walk",
    "merge_hashes",
    "run_shard",
    "shard_plan",
    "subset_budget",
    "verify_order",
    "verify_range",
]
