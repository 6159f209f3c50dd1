"""Compare the compiled kernel backend against the plain-numpy fallback.

Kernel microbenchmarks import both implementations side by side; the
full-mission comparison spawns one subprocess per backend because the
backend is fixed at import time through PACNAV_BACKEND.

Usage:
    python benchmarks/backend_bench.py [--repeats N] [--grids N] [--skip-mission]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from pacnav.kernels import numpy_impl

EPS = 1e-9

_MISSION_CHILD = """
import time
from pacnav.kernels import BACKEND
from pacnav.presets import preset_config
from pacnav.simulation import run_mission

config = preset_config("1a")
run_mission(config)  # warm pass: compilation, caches
t0 = time.perf_counter()
log = run_mission(config)
elapsed = time.perf_counter() - t0
print(f"{BACKEND} {elapsed:.3f} {log.n_records}")
"""


def _best_of(repeats, fn):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _astar_workload(rng, n_grids):
    w = h = 20
    grids = []
    for _ in range(n_grids):
        occ = (rng.random(w * h) < rng.uniform(0.1, 0.4)).astype(np.uint8)
        goal = int(rng.integers(w * h))
        occ[goal] = 0
        grids.append((occ, int(rng.integers(w * h)), goal))
    return w, h, grids


def bench_astar(impls, repeats, n_grids):
    rng = np.random.default_rng(1)
    w, h, grids = _astar_workload(rng, n_grids)

    def run(impl):
        def fn():
            for occ, start, goal in grids:
                impl.astar_grid(occ, w, h, start, goal)
        return fn

    return {name: _best_of(repeats, run(impl)) for name, impl in impls.items()}


def bench_metrics(impls, repeats):
    rng = np.random.default_rng(2)
    stacks = [
        (
            rng.normal(size=(m, 6, 2)),
            rng.integers(3, 7, size=m).astype(np.int64),
        )
        for m in rng.integers(2, 6, size=500)
    ]
    vels = [rng.normal(size=(n, 2)) for n in rng.integers(3, 7, size=500)]

    def run(impl):
        def fn():
            for stack, lengths in stacks:
                impl.target_scores(stack, lengths, EPS)
            for vel in vels:
                impl.order_metric(vel, EPS)
        return fn

    return {name: _best_of(repeats, run(impl)) for name, impl in impls.items()}


def bench_los(impls, repeats):
    rng = np.random.default_rng(3)
    scenes = [
        (rng.uniform(-25, 25, (6, 2)), rng.uniform(-25, 25, 104), rng.uniform(-25, 25, 104))
        for _ in range(200)
    ]

    def run(impl):
        def fn():
            for pos, cx, cy in scenes:
                impl.pairwise_los(pos, cx, cy, 0.3)
        return fn

    return {name: _best_of(repeats, run(impl)) for name, impl in impls.items()}


def bench_mission(backend):
    env = dict(os.environ, PACNAV_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", _MISSION_CHILD],
        env=env, capture_output=True, text=True, check=True,
    )
    name, elapsed, n_records = out.stdout.split()
    return float(elapsed), int(n_records)


def _print_row(label, results):
    t_numba = results["numba"]
    t_numpy = results["numpy"]
    print(
        f"{label:<28} numba {t_numba * 1e3:8.1f} ms   numpy {t_numpy * 1e3:8.1f} ms"
        f"   speedup {t_numpy / t_numba:5.1f}x"
    )


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="best-of repeats")
    parser.add_argument("--grids", type=int, default=300, help="grids per planning pass")
    parser.add_argument("--skip-mission", action="store_true",
                        help="skip the subprocess mission comparison")
    args = parser.parse_args(argv)

    try:
        from pacnav.kernels import numba_impl
    except ImportError:
        print("numba backend unavailable; nothing to compare", file=sys.stderr)
        return 1
    impls = {"numba": numba_impl, "numpy": numpy_impl}

    # Warm pass so compilation is not billed to the first measurement.
    bench_astar(impls, 1, 10)
    bench_metrics({"numba": numba_impl}, 1)
    bench_los({"numba": numba_impl}, 1)

    print(f"kernel microbenchmarks (best of {args.repeats})")
    _print_row(f"astar_grid x{args.grids}", bench_astar(impls, args.repeats, args.grids))
    _print_row("target_scores/order x500", bench_metrics(impls, args.repeats))
    _print_row("pairwise_los x200", bench_los(impls, args.repeats))

    if not args.skip_mission:
        print("\nfull mission (case 1a, warm, one process per backend)")
        for backend in ("numba", "numpy"):
            elapsed, n_records = bench_mission(backend)
            print(f"{backend:<8} {elapsed:8.3f} s   ({n_records} steps)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
