"""Time the numba and numpy kernel backends on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--grid 512]

The first numba call per kernel is reported separately as compile/cache-load
time; the table shows the best of ``--repeat`` warm runs.
"""

import argparse
import time

import numpy as np

from gausslucas import kernels
from gausslucas.poly import RootSet, from_roots
from gausslucas.roots import STEP_TOL_REL, cauchy_bound, initial_guesses
from gausslucas.sampling import random_roots


def workloads(grid: int):
    rng = np.random.default_rng(0)
    polys = []
    for _ in range(200):
        p = from_roots(RootSet.from_points(random_roots(rng, 12)))
        r = cauchy_bound(p)
        polys.append((p.as_array(), initial_guesses(12, r), STEP_TOL_REL * r))

    locs = random_roots(rng, 7)
    mults = np.ones(locs.size, dtype=np.int64)
    xs = np.linspace(-2.5, 2.5, grid)
    ys = np.linspace(-2.5, 2.5, grid)
    zs = rng.uniform(-3, 3, 100_000) + 1j * rng.uniform(-3, 3, 100_000)
    values = kernels.BACKENDS["numpy"].potential_grid(xs, ys, locs, mults, 5.0 / grid)
    level = float(np.nanmedian(values))

    def aberth(k):
        for c, z0, tol in polys:
            k.aberth(c, z0, 200, tol)

    return {
        "aberth x200 (deg 12)": aberth,
        f"potential_grid {grid}^2": lambda k: k.potential_grid(xs, ys, locs, mults, 5.0 / grid),
        "field_points 1e5": lambda k: k.field_points(zs, locs, mults),
        f"march_segments {grid}^2": lambda k: k.march_segments(values, level),
    }


def best_of(fn, backend, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(backend)
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--grid", type=int, default=512)
    args = ap.parse_args()

    names = sorted(kernels.BACKENDS)
    jobs = workloads(args.grid)
    if "numba" in kernels.BACKENDS:
        t = time.perf_counter()
        for fn in jobs.values():
            fn(kernels.BACKENDS["numba"])
        print(f"numba first-call (compile or cache load): {time.perf_counter() - t:.2f}s\n")

    header = f"{'workload':<26}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else "")
    print(header)
    print("-" * len(header))
    for label, fn in jobs.items():
        t = {n: best_of(fn, kernels.BACKENDS[n], args.repeat) for n in names}
        row = f"{label:<26}" + "".join(f"{t[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) == 2:
            row += f"{t['numpy'] / t['numba']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
