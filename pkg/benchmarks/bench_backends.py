#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends.

Times the path-lifting kernel alone and full solves, checks that both
backends return the same roots, and prints a small table (or JSON).

    python benchmarks/bench_backends.py
    python benchmarks/bench_backends.py --degrees 4 8 16 --repeat 5 --json
"""
import argparse
import json
import time

import numpy as np

from pathlift import kernels, solve
from pathlift.complexpoly import rescale_main
from pathlift.lifter import choose_initial_points, plm_steps
from pathlift.oracle import match_multisets

SEED = 7


def random_pd1(rng, d):
    r = np.sqrt(rng.uniform(0, 1, d))
    return np.append(r * np.exp(2j * np.pi * rng.uniform(0, 1, d)), 1.0)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_degree(d, eps, repeat, backends):
    rng = np.random.default_rng([SEED, d])
    phi = random_pd1(rng, d)
    norm, tau = rescale_main(phi, eps)
    batch = choose_initial_points(norm.f0)[0]
    steps = plm_steps(tau, np.abs(batch.w0))
    target = np.full(d, tau * 1j)

    row = {"degree": d, "plm_steps": int(steps.max())}
    roots = {}
    for name in backends:
        with kernels.use_backend(name):
            t_plm, _ = best_of(lambda: kernels.plm_track(
                norm.f0, batch.points, batch.w0, steps, target, 1 / 27, 10.0), repeat)
            t_solve, fz = best_of(lambda: solve(phi, eps), repeat)
        row[f"{name}_plm_ms"] = 1e3 * t_plm
        row[f"{name}_solve_ms"] = 1e3 * t_solve
        roots[name] = fz.roots
    if len(roots) == 2:
        row["speedup_solve"] = row["numpy_solve_ms"] / row["numba_solve_ms"]
        row["root_gap"] = match_multisets(roots["numba"], roots["numpy"])
    return row


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--degrees", type=int, nargs="+", default=[2, 4, 8, 16, 32])
    parser.add_argument("--epsilon", type=float, default=1e-8)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = parser.parse_args()

    backends = kernels.available_backends()
    kernels.warmup()
    rows = [bench_degree(d, args.epsilon, args.repeat, backends) for d in args.degrees]

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    cols = ["degree", "plm_steps"] + [f"{b}_{k}" for b in backends for k in ("plm_ms", "solve_ms")]
    if len(backends) == 2:
        cols += ["speedup_solve", "root_gap"]
    print("  ".join(f"{c:>14}" for c in cols))
    for r in rows:
        print("  ".join(f"{r[c]:>14.4g}" if isinstance(r[c], float) else f"{r[c]:>14}"
                        for c in cols))


if __name__ == "__main__":
    main()
