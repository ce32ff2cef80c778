"""Timing comparison of the compiled and pure-Python scan backends.

Two views: the raw backward scan on arrays of increasing size, and one
full driver run whose inner loop is dominated by the scans.  The driver
comparison re-invokes this script with LANEFV_PURE_PYTHON=1 so the
fallback is selected exactly the way a user without the extension gets
it.

Usage: python benchmarks/bench_kernels.py [--sizes 1000,10000,100000]
       [--reps 200] [--n-cells 1600] [--eta 0.1]
"""

import argparse
import os
import subprocess
import sys
import time
from dataclasses import replace

import numpy as np

from lanefv import Grid, KernelWeights, backend_name, run, scenario
from lanefv import _scan_py

try:
    from lanefv import _scan
except ImportError:
    _scan = None


def best_of(fn, args, reps):
    best = float("inf")
    for _ in range(reps):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_scans(sizes, reps):
    rng = np.random.default_rng(42)
    print(f"{'n':>8} {'compiled':>12} {'python':>12} {'speedup':>8}")
    for n in sizes:
        grid = Grid(-4.0, 4.0, n)
        weights = KernelWeights.make(grid.dx, 0.1)
        rho = rng.uniform(0.0, 1.0, n)
        args = (rho, weights.q, weights.w, rho[-1])
        py = best_of(_scan_py.scan_cells, args, reps)
        if _scan is None:
            print(f"{n:>8} {'absent':>12} {py * 1e6:>10.1f} us {'':>8}")
            continue
        cy = best_of(_scan.scan_cells, args, reps)
        print(f"{n:>8} {cy * 1e6:>10.1f} us {py * 1e6:>10.1f} us {py / cy:>7.1f}x")


def timed_run(n_cells, eta):
    scn = replace(scenario("fig1_t1", n_cells=n_cells), out_times=(1.0,))
    start = time.perf_counter()
    run(scn, eta)
    return time.perf_counter() - start


def bench_driver(n_cells, eta):
    mine = timed_run(n_cells, eta)
    label = backend_name()
    print(f"driver run (fig1_t1, n={n_cells}, eta={eta}) [{label}]: {mine:.3f} s")
    if label != "compiled":
        print("compiled extension unavailable; nothing to compare against")
        return
    child = subprocess.run(
        [sys.executable, __file__, "--driver-child", "--n-cells", str(n_cells),
         "--eta", str(eta)],
        capture_output=True,
        text=True,
        env={**os.environ, "LANEFV_PURE_PYTHON": "1"},
        check=True,
    )
    fallback = float(child.stdout.strip())
    print(f"driver run (fig1_t1, n={n_cells}, eta={eta}) [python]:   {fallback:.3f} s")
    print(f"full-run speedup from the extension: {fallback / mine:.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="1000,10000,100000")
    parser.add_argument("--reps", type=int, default=200)
    parser.add_argument("--n-cells", type=int, default=1600)
    parser.add_argument("--eta", type=float, default=0.1)
    parser.add_argument("--driver-child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.driver_child:
        print(f"{timed_run(args.n_cells, args.eta):.6f}")
        return

    print(f"active backend: {backend_name()}")
    bench_scans([int(s) for s in args.sizes.split(",") if s], args.reps)
    bench_driver(args.n_cells, args.eta)


if __name__ == "__main__":
    main()
