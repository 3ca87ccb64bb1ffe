"""Compare the compiled and numpy subset-hashing backends.

    python3 benchmarks/bench_kernels.py [--orders 120 180 240 360] [--repeat 3]

For each order, hashes every divisor subset with each available backend,
checks that the outputs agree, and reports the best wall time.
"""
import argparse
import time

import numpy as np

from icgspec import kernels
from icgspec.icg import ramanujan_table
from icgspec.search import check_budget


def best_time(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", type=int, nargs="+", default=[120, 180, 240, 360])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = sorted(kernels.KERNELS)
    print(f"{'n':>6} {'subsets':>9} " + " ".join(f"{b + ' ms':>12}" for b in backends) + f" {'speedup':>8}")
    for n in args.orders:
        check_budget(n)
        table = ramanujan_table(n)
        arr = table.array()
        w = np.array(table.weights, dtype=np.int64)
        bits = arr.shape[0]
        times, outs = {}, {}
        for b in backends:
            times[b], outs[b] = best_time(lambda: kernels.spectrum_hashes(arr, w, 0, bits, b), args.repeat)
        ref = outs[backends[0]]
        if not all(np.array_equal(ref, o) for o in outs.values()):
            raise SystemExit(f"n={n}: backends disagree")
        speed = f"{times['python'] / times['cython']:8.1f}x" if len(backends) > 1 else "       -"
        print(f"{n:>6} {1 << bits:>9} " + " ".join(f"{times[b] * 1e3:12.2f}" for b in backends) + f" {speed}")


if __name__ == "__main__":
    main()
