#!/usr/bin/env python3
"""Benchmark the compiled trace kernel against the pure numpy fallback.

Two views: raw trace(M^l) on int64 matrices of growing size, and the
end-to-end Eulerian count on a genus-9 graph, where the kernel sits inside
the 512-twist sum.  Forcing the fallback for a whole process instead:

    EULERCOUNT_PURE_KERNEL=1 eulercount count <graph>
"""

import random
import time

import numpy as np

from eulercount import MultiGraph, count_eulerian_cycles
from eulercount import twists
from eulercount._backend import available_backends


def time_call(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_raw_traces():
    backends = available_backends()
    print(f"raw trace(M^l), int64 entries in -1..1, best of 5")
    print(f"{'dim':>5} {'power':>5} " + " ".join(f"{n:>12}" for n in backends))
    rng = np.random.default_rng(7)
    for dim in (8, 16, 32, 48, 64):
        m = rng.integers(-1, 2, size=(dim, dim)).astype(np.int64)
        # keep dim^(power-1) comfortably inside int64
        power = min(dim // 2, max(2, int(56 / np.log2(dim))))
        times = [time_call(k, m, power) for k in backends.values()]
        cells = " ".join(f"{t * 1e6:>10.1f}us" for t in times)
        print(f"{dim:>5} {power:>5} {cells}")


def random_eulerian(n, m, seed):
    rng = random.Random(seed)
    while True:
        edges = [(rng.randrange(v) if v else 0, v) for v in range(1, n)]
        while len(edges) < m:
            edges.append((rng.randrange(n), rng.randrange(n)))
        g = MultiGraph(n, edges)
        odd = [v for v in range(n) if g.degree(v) % 2]
        rng.shuffle(odd)
        edges = list(g.edges) + list(zip(odd[::2], odd[1::2]))
        g = MultiGraph(n, edges)
        if g.is_eulerian():
            return g


def bench_full_count():
    g = random_eulerian(5, 13, seed=3)
    print(f"\nend-to-end count on n={g.n}, m={g.m}, genus={g.genus()} "
          f"({2 ** g.genus()} twists)")
    saved = twists.trace_power_i64
    for name, kernel in available_backends().items():
        twists.trace_power_i64 = kernel
        try:
            start = time.perf_counter()
            report = count_eulerian_cycles(g)
            elapsed = time.perf_counter() - start
        finally:
            twists.trace_power_i64 = saved
        print(f"{name:>10}: {elapsed:.3f}s  count={report.count}")


if __name__ == "__main__":
    bench_raw_traces()
    bench_full_count()
