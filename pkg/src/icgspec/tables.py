"""Recompute published spectra tables and compare them to stored fixtures.

Fixtures live in ``data/tables.json`` and are transcribed by hand; nothing
in this package writes them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import DomainError
from .icg import DivisorSet, Spectrum, ramanujan_table, spectrum
from .numtheory import factorize, ramanujan_sum

TABLE_IDS = ("T_2331A", "T_2331B", "T_RAM_P3Q", "T_2232", "T_3272")


@lru_cache(maxsize=1)
def load_fixtures() -> dict:
    text = resources.files("icgspec").joinpath("data/tables.json").read_text()
    return json.loads(text)


@dataclass
class RowResult:
    key: str
    ok: bool
    diffs: list[str] = field(default_factory=list)

    def to_record(self) -> dict:
        return {"row": self.key, "pass": self.ok, "diffs": self.diffs}


@dataclass
class TableReport:
    table_id: str
    caption: str
    rows: list[RowResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def to_record(self) -> dict:
        return {
            "table": self.table_id,
            "caption": self.caption,
            "pass": self.ok,
            "rows": [r.to_record() for r in self.rows],
        }

    def to_text(self) -> str:
        passed = sum(r.ok for r in self.rows)
        lines = [f"{self.table_id}: {'PASS' if self.ok else 'FAIL'} ({passed}/{len(self.rows)} rows)  [{self.caption}]"]
        for r in self.rows:
            if not r.ok:
                lines.append(f"  row {r.key}: " + "; ".join(r.diffs))
        return "\n".join(lines)


def _fmt_set(ds) -> str:
    return "{" + ",".join(str(d) for d in sorted(ds)) + "}"


def _diff(label: str, expected: Spectrum, got: Spectrum) -> list[str]:
    if expected.entries == got.entries:
        return []
    return [f"{label}: expected {expected} got {got}"]


def _spectra_table(table_id: str, fx: dict) -> TableReport:
    n = fx["n"]
    only_left, only_right, common = set(fx["only_left"]), set(fx["only_right"]), set(fx["common"])
    table = ramanujan_table(n)
    rows = []
    for row in fx["rows"]:
        inter = set(row["intersection"])
        key = "D∩ = " + _fmt_set(inter)
        diffs = []
        if not common <= inter:
            diffs.append(f"intersection lacks the common divisors {_fmt_set(common)}")
        left = DivisorSet.from_divisors(n, inter | only_left)
        right = DivisorSet.from_divisors(n, inter | only_right)
        exp_left = Spectrum.from_json(row["left"])
        exp_right = Spectrum.from_json(row["right"])
        for label, exp in (("left", exp_left), ("right", exp_right)):
            if exp.order != n:
                diffs.append(f"{label} fixture multiplicities sum to {exp.order}, not {n}")
        got_left = spectrum(left, table)
        got_right = spectrum(right, table)
        diffs += _diff("left", exp_left, got_left)
        diffs += _diff("right", exp_right, got_right)
        if got_left.entries == got_right.entries:
            diffs.append("left and right spectra coincide")
        rows.append(RowResult(key, not diffs, diffs))
    return TableReport(table_id, fx["caption"], rows)


def poly_eval(coeffs: list[int], p: int) -> int:
    """Evaluate ``sum(c_i * p**i)``."""
    return sum(c * p**i for i, c in enumerate(coeffs))


def _ramanujan_table(table_id: str, fx: dict, instances=None) -> TableReport:
    rows = []
    for p, q in instances or fx["instances"]:
        if factorize(p).factors != ((p, 1),) or factorize(q).factors != ((q, 1),) or not p < q:
            raise DomainError(f"({p}, {q}) is not a pair of primes p < q")
        n = p**3 * q
        for row in fx["rows"]:
            a, b = row["d"]
            d = p**a * q**b
            key = f"(p,q)=({p},{q}) d=p^{a}q^{b}={d}"
            diffs = []
            for arg, cell in ((p, row["at_p"]), (p * p, row["at_p2"])):
                want = poly_eval(cell["coeffs"], p)
                got = ramanujan_sum(n // d, arg)
                if want != got:
                    diffs.append(f"R_{n // d}({arg}): table {cell['expr']} = {want}, computed {got}")
            rows.append(RowResult(key, not diffs, diffs))
    return TableReport(table_id, fx["caption"], rows)


def reproduce_table(table_id: str) -> TableReport:
    fixtures = load_fixtures()
    if table_id not in fixtures:
        raise DomainError(f"unknown table id {table_id!r}; known: {', '.join(TABLE_IDS)}")
    fx = fixtures[table_id]
    if fx["kind"] == "ramanujan_p3q":
        return _ramanujan_table(table_id, fx)
    return _spectra_table(table_id, fx)


def reproduce_all() -> list[TableReport]:
    return [reproduce_table(t) for t in TABLE_IDS]
