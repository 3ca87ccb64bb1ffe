import pytest

from icgspec.errors import DomainError
from icgspec.icg import DivisorSet, Spectrum, degree, spectrum
from icgspec.numtheory import totient
from icgspec.tables import TABLE_IDS, _ramanujan_table, load_fixtures, poly_eval, reproduce_all, reproduce_table


@pytest.mark.parametrize("table_id", TABLE_IDS)
def test_every_table_reproduces(table_id):
    rep = reproduce_table(table_id)
    assert rep.ok, rep.to_text()
    assert rep.rows


def test_row_counts():
    counts = {r.table_id: len(r.rows) for r in reproduce_all()}
    assert counts == {"T_2331A": 8, "T_2331B": 16, "T_RAM_P3Q": 21, "T_2232": 32, "T_3272": 8}


def test_unknown_id():
    with pytest.raises(DomainError):
        reproduce_table("BOGUS")


def test_first_row_anchor():
    fx = load_fixtures()["T_2331A"]
    row = fx["rows"][0]
    assert row["intersection"] == [8]
    assert row["left"] == [[6, 2], [2, 4], [1, 4], [-1, 8], [-2, 2], [-3, 4]]
    assert row["right"] == [[6, 2], [2, 2], [0, 16], [-4, 4]]
    assert spectrum(DivisorSet.from_divisors(24, [2, 8])).to_json() == row["left"]
    assert spectrum(DivisorSet.from_divisors(24, [4, 6, 8])).to_json() == row["right"]


def test_441_degree_anchor():
    fx = load_fixtures()["T_3272"]
    row = next(r for r in fx["rows"] if r["intersection"] == [1])
    assert row["left"][0] == [336, 1]
    assert 336 == totient(441) + totient(147)
    assert degree(DivisorSet.from_divisors(441, [1, 3])) == 336


def test_ramanujan_anchor():
    fx = load_fixtures()["T_RAM_P3Q"]
    row = next(r for r in fx["rows"] if r["d"] == [1, 0])
    assert poly_eval(row["at_p"]["coeffs"], 3) == 3
    assert poly_eval(row["at_p2"]["coeffs"], 3) == -6


@pytest.mark.parametrize("p, q", [(3, 11), (5, 11), (7, 13), (11, 13)])
def test_ramanujan_rows_hold_beyond_stored_instances(p, q):
    fx = load_fixtures()["T_RAM_P3Q"]
    assert _ramanujan_table("T_RAM_P3Q", fx, instances=[(p, q)]).ok


def test_ramanujan_rejects_non_primes():
    fx = load_fixtures()["T_RAM_P3Q"]
    with pytest.raises(DomainError):
        _ramanujan_table("T_RAM_P3Q", fx, instances=[(4, 7)])


@pytest.mark.parametrize("table_id", ["T_2331A", "T_2331B", "T_2232", "T_3272"])
def test_fixture_structure(table_id):
    fx = load_fixtures()[table_id]
    n = fx["n"]
    left_only, right_only, common = map(set, (fx["only_left"], fx["only_right"], fx["common"]))
    assert not left_only & right_only
    keys = [tuple(r["intersection"]) for r in fx["rows"]]
    assert len(set(keys)) == len(keys)
    for row in fx["rows"]:
        inter = set(row["intersection"])
        assert common <= inter
        assert not inter & (left_only | right_only)
        for side in ("left", "right"):
            assert Spectrum.from_json(row[side]).order == n
        assert row["left"] != row["right"]


def test_corrupted_fixture_is_reported(monkeypatch):
    import copy

    import icgspec.tables as tables

    fixtures = copy.deepcopy(load_fixtures())
    fixtures["T_2331A"]["rows"][0]["left"][0] = [6, 1]
    monkeypatch.setattr(tables, "load_fixtures", lambda: fixtures)
    rep = tables.reproduce_table("T_2331A")
    assert not rep.ok
    bad = [r for r in rep.rows if not r.ok]
    assert len(bad) == 1 and bad[0].key == "D∩ = {8}"
    assert "FAIL" in rep.to_text()
