from collections import defaultdict
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from icgspec.errors import DomainError
from icgspec.icg import (
    DivisorSet,
    Spectrum,
    class_eigenvalues,
    complement,
    connection_set,
    degree,
    eigenvalue_at_divisor,
    is_integral_connection_set,
    level_set,
    ramanujan_table,
    spectra_equal,
    spectrum,
)
from icgspec.numtheory import divisors, totient


def ds(n, *d):
    return DivisorSet.from_divisors(n, d)


def all_subsets(n):
    return [DivisorSet(n, m) for m in range(1 << (len(divisors(n)) - 1))]


class TestDivisorSet:
    def test_roundtrip(self):
        D = ds(24, 8, 2)
        assert D.divisors == (2, 8)
        assert D.to_json() == [2, 8]
        assert DivisorSet.from_divisors(24, D.to_json()) == D

    def test_rejects_n_itself(self):
        with pytest.raises(DomainError, match="divisor n excluded"):
            ds(24, 24)

    def test_rejects_non_divisor(self):
        with pytest.raises(DomainError):
            ds(24, 5)

    def test_rejects_mask_with_n_bit(self):
        with pytest.raises(DomainError):
            DivisorSet(6, 0b1000)

    def test_empty_is_legal(self):
        assert len(DivisorSet(5)) == 0


class TestTable:
    def test_invariants(self):
        for n in (1, 12, 24, 36, 441):
            t = ramanujan_table(n)
            assert t.rows[-1] == (1,) * len(t.divisors)
            for d in t.divisors:
                assert t.entry(d, n) == totient(n // d)

    def test_array_shape(self):
        assert ramanujan_table(24).array().shape == (7, 8)
        assert ramanujan_table(1).array().shape == (0, 1)


@pytest.mark.parametrize(
    "n, D, e, value",
    [(24, (2, 8), 24, 6), (24, (), 1, 0), (12, (6,), 12, 1)],
)
def test_eigenvalue_at_divisor(n, D, e, value):
    assert eigenvalue_at_divisor(ramanujan_table(n), ds(n, *D), e) == value


def test_eigenvalue_at_divisor_mismatch():
    with pytest.raises(DomainError):
        eigenvalue_at_divisor(ramanujan_table(12), ds(24, 2), 1)
    with pytest.raises(DomainError):
        eigenvalue_at_divisor(ramanujan_table(24), ds(24, 2), 5)


@pytest.mark.parametrize(
    "n, D, expected",
    [
        (24, (2, 8), [(6, 2), (2, 4), (1, 4), (-1, 8), (-2, 2), (-3, 4)]),
        (24, (4, 6, 8), [(6, 2), (2, 2), (0, 16), (-4, 4)]),
        (5, (), [(0, 5)]),
        (6, (1, 2, 3), [(5, 1), (-1, 5)]),
    ],
)
def test_spectrum_examples(n, D, expected, brute_spectrum):
    got = spectrum(ds(n, *D))
    assert list(got.entries) == expected
    assert brute_spectrum(n, D) == expected


def test_spectrum_matches_adjacency_matrix(brute_spectrum):
    for n in range(1, 37):
        for D in all_subsets(n):
            assert list(spectrum(D).entries) == brute_spectrum(n, D.divisors), (n, D)


def test_spectrum_invariants():
    for n in range(1, 61):
        for D in all_subsets(n):
            s = spectrum(D)
            values = [v for v, _ in s.entries]
            assert values == sorted(set(values), reverse=True)
            assert s.order == n
            assert s.largest == degree(D) == eigenvalue_at_divisor(ramanujan_table(n), D, n)


def test_spectrum_string():
    assert str(spectrum(ds(24, 2, 8))) == "6^2 2^4 1^4 -1^8 -2^2 -3^4"
    assert Spectrum.from_json(spectrum(ds(24, 2, 8)).to_json()) == spectrum(ds(24, 2, 8))


def test_spectra_equal():
    a, b = spectrum(ds(24, 2, 8)), spectrum(ds(24, 4, 6, 8))
    assert spectra_equal(a, a)
    assert not spectra_equal(a, b)


@pytest.mark.parametrize(
    "n, D, comp",
    [(24, (2, 8), (1, 3, 4, 6, 12)), (24, (), (1, 2, 3, 4, 6, 8, 12)), (5, (1,), ())],
)
def test_complement(n, D, comp):
    assert complement(ds(n, *D)).divisors == comp


@given(st.integers(1, 400), st.data())
def test_complement_involution(n, data):
    bits = len(divisors(n)) - 1
    D = DivisorSet(n, data.draw(st.integers(0, (1 << bits) - 1)))
    assert complement(complement(D)) == D
    assert set(D.divisors).isdisjoint(complement(D).divisors)


def test_complement_eigenvalues_and_isospectrality():
    for n in range(1, 61):
        table = ramanujan_table(n)
        subsets = all_subsets(n)
        for D in subsets:
            lam, lam_c = class_eigenvalues(D, table), class_eigenvalues(complement(D), table)
            for e, a, b in zip(table.divisors, lam, lam_c):
                assert b == (n - 1 - a if e == n else -1 - a)
        # Isospectral pairs are exactly the pairs inside one spectrum group.
        groups = defaultdict(list)
        for D in subsets:
            groups[spectrum(D, table)].append(D)
        for members in groups.values():
            for D1, D2 in combinations(members, 2):
                assert spectra_equal(spectrum(complement(D1), table), spectrum(complement(D2), table))


def test_level_set_examples():
    D = ds(24, 2, 8)
    minus_one = level_set(D, -1)
    assert sum(totient(24 // e) for e in minus_one) == 8
    assert level_set(D, degree(D) + 1) == frozenset()
    assert level_set(DivisorSet(5), 0) == {1, 5}


def test_level_set_multiplicities():
    for n in range(1, 121):
        for D in all_subsets(n)[:64]:
            for value, mult in spectrum(D).entries:
                assert sum(totient(n // e) for e in level_set(D, value)) == mult


@pytest.mark.parametrize(
    "n, S, ok, D",
    [
        (7, {1, 2, 3, 4, 5, 6}, True, (1,)),
        (7, {1, 6}, False, None),
        (12, {4, 8, 6}, True, (4, 6)),
        (9, set(), True, ()),
    ],
)
def test_integrality(n, S, ok, D):
    got, recovered = is_integral_connection_set(n, S)
    assert got is ok
    assert (recovered.divisors if recovered is not None else None) == D


def test_integrality_rejects_asymmetric():
    with pytest.raises(DomainError):
        is_integral_connection_set(7, {1, 2, 6})
    with pytest.raises(DomainError):
        is_integral_connection_set(7, {7})


def test_connection_set_recovers_divisor_set():
    for n in range(1, 50):
        for D in all_subsets(n):
            assert is_integral_connection_set(n, connection_set(D)) == (True, D)
