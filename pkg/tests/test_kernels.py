import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from icgspec import kernels
from icgspec.icg import DivisorSet, ramanujan_table, spectrum

MASK64 = (1 << 64) - 1


def reference_hash(n, mask):
    # Scalar rendition of the signature, in plain integers.
    def mix(v):
        z = (v + 0x9E3779B97F4A7C15) & MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    spec = spectrum(DivisorSet(n, mask))
    return sum(mult * mix(ev & MASK64) for ev, mult in spec.entries) & MASK64


def _inputs(n):
    table = ramanujan_table(n)
    return table.array(), np.array(table.weights, dtype=np.int64)


@pytest.mark.parametrize("backend", sorted(kernels.KERNELS))
@pytest.mark.parametrize("n", [1, 2, 12, 24, 36, 60])
def test_hash_matches_scalar_reference(backend, n):
    arr, w = _inputs(n)
    bits = arr.shape[0]
    got = kernels.spectrum_hashes(arr, w, 0, bits, backend)
    assert [int(h) for h in got] == [reference_hash(n, m) for m in range(1 << bits)]


def test_compiled_backend_available():
    assert "cython" in kernels.KERNELS
    assert kernels.BACKEND in kernels.KERNELS


@pytest.mark.skipif("cython" not in kernels.KERNELS, reason="extension not built")
@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2000), st.data())
def test_backends_agree_on_blocks(n, data):
    arr, w = _inputs(n)
    bits = arr.shape[0]
    low = data.draw(st.integers(0, min(bits, 12)))
    block = data.draw(st.integers(0, (1 << (bits - low)) - 1))
    base = block << low
    a = kernels.spectrum_hashes(arr, w, base, low, "cython")
    b = kernels.spectrum_hashes(arr, w, base, low, "python")
    assert a.dtype == b.dtype == np.uint64
    assert np.array_equal(a, b)


@pytest.mark.parametrize("backend", sorted(kernels.KERNELS))
def test_bad_block_rejected(backend):
    arr, w = _inputs(24)
    with pytest.raises(ValueError):
        kernels.spectrum_hashes(arr, w, 0, 8, backend)
    with pytest.raises(ValueError):
        kernels.spectrum_hashes(arr, w, 1, 2, backend)
    with pytest.raises(ValueError):
        kernels.spectrum_hashes(arr, w, 1 << 7, 0, backend)


def test_no_accidental_hash_collisions_for_24():
    arr, w = _inputs(24)
    h = kernels.spectrum_hashes(arr, w, 0, 7)
    assert len(set(h.tolist())) == 128


def test_environment_forces_fallback():
    import os
    import subprocess
    import sys

    code = "from icgspec import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, ICG_KERNEL="python")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    env["ICG_KERNEL"] = "nonsense"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() in kernels.KERNELS


@pytest.mark.parametrize("n", [60, 180])
def test_reports_independent_of_backend(n):
    from icgspec.search import verify_order

    reports = {verify_order(n, shards=4, backend=b).canonical() for b in kernels.KERNELS}
    assert len(reports) == 1
