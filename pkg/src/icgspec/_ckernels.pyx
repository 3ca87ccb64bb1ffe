# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled spectrum-hash kernel: Gray-code walk over one block of subsets."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

cdef uint64_t SALT = 0x9E3779B97F4A7C15ULL


cdef inline uint64_t mix(int64_t v) nogil:
    cdef uint64_t z = (<uint64_t>v) + SALT
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t spectrum_hash(const int64_t* lam, const int64_t* w, Py_ssize_t tau) nogil:
    cdef uint64_t h = 0
    cdef Py_ssize_t j
    for j in range(tau):
        h += (<uint64_t>w[j]) * mix(lam[j])
    return h


def spectrum_hashes(const int64_t[:, ::1] table, const int64_t[::1] weights,
                    uint64_t base_mask, int low_bits):
    """Hash of the spectrum of ``base_mask | g`` for every ``g < 2**low_bits``."""
    cdef Py_ssize_t bits = table.shape[0]
    cdef Py_ssize_t tau = table.shape[1]
    cdef Py_ssize_t size = (<Py_ssize_t>1) << low_bits
    cdef Py_ssize_t i, j, b
    cdef uint64_t g = 0
    out_arr = np.empty(size, dtype=np.uint64)
    cdef uint64_t[::1] out = out_arr
    acc_arr = np.zeros(tau, dtype=np.int64)
    cdef int64_t[::1] acc = acc_arr

    if low_bits > bits or (base_mask >> bits) != 0 or (base_mask & (size - 1)) != 0:
        raise ValueError("block does not fit the divisor bitmask")

    with nogil:
        for b in range(bits):
            if (base_mask >> b) & 1:
                for j in range(tau):
                    acc[j] += table[b, j]
        out[0] = spectrum_hash(&acc[0], &weights[0], tau)
        for i in range(1, size):
            b = 0
            while not ((i >> b) & 1):
                b += 1
            g ^= (<uint64_t>1) << b
            if (g >> b) & 1:
                for j in range(tau):
                    acc[j] += table[b, j]
            else:
                for j in range(tau):
                    acc[j] -= table[b, j]
            out[g] = spectrum_hash(&acc[0], &weights[0], tau)
    return out_arr
