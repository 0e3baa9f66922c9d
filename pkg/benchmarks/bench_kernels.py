#!/usr/bin/env python3
"""Benchmark the compiled reduction kernels against the pure-Python twin.

Times the raw HNF/SNF kernels on random matrices of a few shapes, plus one
end-to-end workload (the all-generators-small + center + nonzero-commutator
conjunction over a full enumeration), and prints a speedup table.

Usage:  python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from tau2 import _kernels_py

try:
    from tau2 import _kernels
except ImportError:
    _kernels = None


def make_matrices(rng, count, rows, cols, bound):
    return [
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
        for _ in range(count)
    ]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def time_kernel(kern, op, mats):
    start = time.perf_counter()
    for m in mats:
        rows = len(m)
        cols = len(m[0]) if rows else 0
        a = [r[:] for r in m]
        if op == "hnf":
            kern.hnf_inplace(a, identity(rows))
        else:
            kern.snf_inplace(a, identity(rows), identity(cols))
    return time.perf_counter() - start


def bench_kernels(repeat):
    rng = random.Random(2024)
    shapes = [
        ("hnf", 3, 3, 3, 2000 * repeat),
        ("hnf", 6, 6, 50, 400 * repeat),
        ("hnf", 10, 6, 50, 200 * repeat),
        ("snf", 3, 3, 3, 1000 * repeat),
        ("snf", 6, 6, 50, 200 * repeat),
        ("snf", 6, 3, 50, 400 * repeat),
    ]
    print(f"{'op':>4} {'shape':>8} {'|entry|':>7} {'count':>6} {'python':>9} {'c':>9} {'speedup':>8}")
    for op, rows, cols, bound, count in shapes:
        mats = make_matrices(rng, count, rows, cols, bound)
        t_py = time_kernel(_kernels_py, op, mats)
        if _kernels is None:
            print(f"{op:>4} {rows}x{cols:<5} {bound:>7} {count:>6} {t_py:>8.3f}s {'n/a':>9} {'n/a':>8}")
            continue
        t_c = time_kernel(_kernels, op, mats)
        print(
            f"{op:>4} {rows}x{cols:<5} {bound:>7} {count:>6} "
            f"{t_py:>8.3f}s {t_c:>8.3f}s {t_py / t_c:>7.2f}x"
        )


def bench_end_to_end():
    import os
    import subprocess
    import sys

    code = (
        "from tau2.randmodel import Tau2ModelParams, exact_fraction;"
        "import tau2, time; t=time.perf_counter();"
        "h,t2 = exact_fraction('csmall_conjunction', Tau2ModelParams(3,2,1));"
        "print(f'{tau2.kernel_backend()}: {h}/{t2} in {time.perf_counter()-t:.3f}s')"
    )
    print(
        "\nend-to-end: conjunction fraction over the 729-presentation enumeration",
        flush=True,
    )
    for pure in ("", "1"):
        env = dict(os.environ)
        if pure:
            env["TAU2_PURE_KERNELS"] = pure
        else:
            env.pop("TAU2_PURE_KERNELS", None)
        subprocess.run([sys.executable, "-c", code], env=env, check=True)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=1, help="workload multiplier")
    args = parser.parse_args()
    if _kernels is None:
        print("note: compiled extension not available; timing pure Python only")
    bench_kernels(args.repeat)
    bench_end_to_end()


if __name__ == "__main__":
    main()
