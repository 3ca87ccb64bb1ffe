import math

import pytest

from icgspec.errors import DomainError, OracleInconsistency
from icgspec.icg import DivisorSet, spectrum
from icgspec.oracle import (
    dft_eigenvalues,
    dft_spectrum,
    ramanujan_sum_root_oracle,
    rounded_spectrum,
)


def test_dft_two_cycle():
    sample = dft_eigenvalues(4, {2})
    assert sample.values == pytest.approx((-1, 1, -1, 1), abs=1e-12)
    assert sample.residual < 1e-9


def test_dft_complete_graph():
    sample = dft_eigenvalues(6, {1, 2, 3, 4, 5})
    assert sample.at(6) == pytest.approx(5)
    assert [sample.at(k) for k in range(1, 6)] == pytest.approx([-1] * 5, abs=1e-12)


def test_dft_seven_cycle_is_not_integral():
    sample = dft_eigenvalues(7, {1, 6})
    assert sample.at(1) == pytest.approx(2 * math.cos(2 * math.pi / 7))
    assert sample.at(1) == pytest.approx(1.2470, abs=1e-4)
    assert max(abs(v - round(v)) for v in sample.values) > 0.1
    with pytest.raises(OracleInconsistency):
        rounded_spectrum(sample)


def test_dft_rejects_asymmetric():
    with pytest.raises(DomainError):
        dft_eigenvalues(7, {1})
    with pytest.raises(DomainError):
        dft_eigenvalues(10**4 + 1, set())


@pytest.mark.parametrize("x, y, r", [(1, 1, 1), (1, 17, 1), (4, 2, -2), (45, 3, 3)])
def test_root_oracle(x, y, r):
    assert ramanujan_sum_root_oracle(x, y) == r


def test_dft_spectrum_matches_exact():
    D = DivisorSet.from_divisors(24, [2, 8])
    assert dft_spectrum(D) == spectrum(D)
