from collections import Counter
from math import gcd

import numpy as np
import pytest


def adjacency_spectrum(n, S):
    """Eigenvalues of the circulant adjacency matrix, rounded, as descending pairs."""
    A = np.zeros((n, n))
    for i in range(n):
        for s in S:
            A[i, (i + s) % n] = 1
    ev = np.linalg.eigvalsh(A)
    rounded = np.rint(ev)
    assert np.abs(ev - rounded).max(initial=0) < 1e-6
    return sorted(Counter(int(v) for v in rounded).items(), reverse=True)


def orbit_union(n, ds):
    return {j for j in range(1, n) if gcd(j, n) in set(ds)}


@pytest.fixture
def brute_spectrum():
    return lambda n, ds: adjacency_spectrum(n, orbit_union(n, ds))
