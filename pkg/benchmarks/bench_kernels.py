"""Compare the jitted and pure-Python treewidth/pathwidth kernels.

Run twice to see both paths:

    python benchmarks/bench_kernels.py
    PRODSTRUCT_PURE=1 python benchmarks/bench_kernels.py

The jitted path pays one compilation on first call (excluded below by a
warmup run); results are identical either way.
"""

import time

from prodstruct.exact import treewidth_exact, pathwidth_exact
from prodstruct.exact._kernels import USE_NUMBA
from prodstruct.constructions import grid2, random_regular


def bench(label, fn, g, repeat=3):
    value = fn(g)[0]  # warmup (jit compilation)
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(g)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    print(f"  {label:<12} value={value:<3} best of {repeat}: {best * 1e3:8.1f} ms")


def main():
    print(f"kernel path: {'numba' if USE_NUMBA else 'pure python'}")
    cases = [
        ("grid 4x4", grid2(4, 4)),
        ("random 5-regular n=14", random_regular(14, 5, 7)),
        ("random 7-regular n=16", random_regular(16, 7, 11)),
    ]
    for name, g in cases:
        print(name)
        bench("treewidth", treewidth_exact, g)
        bench("pathwidth", pathwidth_exact, g)


if __name__ == "__main__":
    main()
