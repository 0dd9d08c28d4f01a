"""Benchmark the compiled composition-loss kernel against the numpy fallback.

Run with::

    python3 benchmarks/bench_kernels.py [--size N] [--repeats R]

Both backends produce bit-identical output; this script reports throughput so
the compiled extension's value can be judged on speed alone.
"""

import argparse
import time

import numpy as np

from mpdesign import _kernels_py

try:
    from mpdesign import _kernels
except ImportError:
    _kernels = None

BUDGET_AREA = 0.75
AREA = 0.4375
R1 = 5e-5
R2 = 3e-3
G0 = 10.0


def time_backend(fn, counts, repeats):
    fn(counts, BUDGET_AREA, AREA, R1, R2, G0)  # warm up
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(counts, BUDGET_AREA, AREA, R1, R2, G0)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    counts = np.random.default_rng(0).integers(0, 5000, size=args.size)

    py_time = time_backend(_kernels_py.l2_star_batch, counts, args.repeats)
    print(f"python   backend: {py_time * 1e3:8.3f} ms "
          f"({args.size / py_time / 1e6:6.1f} M elems/s)")

    if _kernels is None:
        print("compiled backend: not built")
        return

    c_time = time_backend(_kernels.l2_star_batch, counts, args.repeats)
    print(f"compiled backend: {c_time * 1e3:8.3f} ms "
          f"({args.size / c_time / 1e6:6.1f} M elems/s)")
    print(f"speedup: {py_time / c_time:.2f}x")

    a = _kernels.l2_star_batch(counts, BUDGET_AREA, AREA, R1, R2, G0)
    b = _kernels_py.l2_star_batch(counts, BUDGET_AREA, AREA, R1, R2, G0)
    print(f"bit-identical: {np.array_equal(a, b)}")


if __name__ == "__main__":
    main()
