"""Compare the numba and pure-numpy Jacobi kernels.

    python benchmarks/bench_kernels.py [--repeats 20] [--sizes 4 8 16 32]

Prints one line per (kernel, size): best wall time of each path and the speedup.
The first numba call compiles (or loads the on-disk cache) and is excluded.
"""

import argparse
import time

import numpy as np

from modframe import _jit, _kernels


def _best(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32])
    args = parser.parse_args()

    if not _jit.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    warm = rng.standard_normal((3, 3)) + 0j
    _kernels.eigh_jacobi(warm + warm.T, use_jit=True)
    _kernels.singular_values_jacobi(warm, use_jit=True)

    print(f"{'kernel':<16}{'n':>4}{'numpy [ms]':>14}{'numba [ms]':>14}{'speedup':>10}")
    for n in args.sizes:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = 0.5 * (g + g.conj().T)
        cases = [
            ("eigh", lambda j: _kernels.eigh_jacobi(h, use_jit=j)),
            ("singular_values", lambda j: _kernels.singular_values_jacobi(g, use_jit=j)),
        ]
        for name, run in cases:
            t_np = _best(lambda: run(False), args.repeats)
            t_jit = _best(lambda: run(True), args.repeats)
            print(f"{name:<16}{n:>4}{t_np * 1e3:>14.3f}{t_jit * 1e3:>14.3f}{t_np / t_jit:>9.1f}x")


if __name__ == "__main__":
    main()
