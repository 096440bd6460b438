"""Compare the compiled and pure-Python union-find kernels.

    python benchmarks/bench_core.py [--n 200000] [--repeat 3]

Times raw union/find workloads on both kernels, then a congruence-heavy
e-graph workload and the deep matching termbank end to end.
"""
from __future__ import annotations

import argparse
import random
import time

from emt import EGraph
from emt._core import BACKENDS
from emt.bench import deep_termbank, time_match


def best_of(repeat, fn):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def atomic_workload(mod, n, seed=0):
    rng = random.Random(seed)
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(n)]
    probes = [rng.randrange(n) for _ in range(2 * n)]

    def run():
        uf = mod.AtomicUF()
        for _ in range(n):
            uf.make_set()
        for i, j in pairs:
            uf.union(i, j)
        for i in probes:
            uf.find(i)
    return run


def offset_workload(mod, n, seed=0):
    rng = random.Random(seed)
    hidden = [rng.randrange(1000) for _ in range(n)]
    rels = []
    for _ in range(n):
        i, j = rng.randrange(n), rng.randrange(n)
        rels.append((i, 0, j, hidden[i] - hidden[j]))
    probes = [rng.randrange(n) for _ in range(2 * n)]

    def run():
        uf = mod.OffsetUF()
        for _ in range(n):
            uf.make_set()
        for r in rels:
            uf.union(*r)
        for i in probes:
            uf.find(i)
    return run


def congruence_workload(backend, n, seed=0):
    rng = random.Random(seed)
    merges = [(rng.randrange(n), rng.randrange(n)) for _ in range(n // 4)]

    def run():
        g = EGraph(backend)
        g.declare_sort("T")
        g.declare_func("f", ["T", "T"], "T")
        g.declare_func("c", [], "T")
        vals = [g.add_term("c")]
        for i in range(n):
            vals.append(g.add_node("f", [vals[i], vals[i // 2]]))
        for i, j in merges:
            g.union("T", vals[i], vals[j])
        g.rebuild()
    return run


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = sorted(BACKENDS)
    print(f"backends: {', '.join(names)}")
    print(f"{'workload':<28}" + "".join(f"{b:>12}" for b in names) + ("     speedup" if len(names) > 1 else ""))

    rows = [
        (f"atomic uf n={args.n}", lambda b: atomic_workload(BACKENDS[b], args.n)),
        (f"offset uf n={args.n}", lambda b: offset_workload(BACKENDS[b], args.n)),
        (f"congruence n={args.n // 10}", lambda b: congruence_workload(b, args.n // 10)),
    ]
    for label, make in rows:
        times = {b: best_of(args.repeat, make(b)) for b in names}
        line = f"{label:<28}" + "".join(f"{times[b] * 1e3:>10.1f}ms" for b in names)
        if len(names) > 1:
            line += f"{times['python'] / times['cython']:>11.2f}x"
        print(line)

    times = {}
    for b in names:
        g, p = deep_termbank(10_000, 6, backend=b)
        times[b] = time_match(g, p, args.repeat) / 1e6
    line = f"{'deep match E=10000':<28}" + "".join(f"{times[b] * 1e3:>10.1f}ms" for b in names)
    if len(names) > 1:
        line += f"{times['python'] / times['cython']:>11.2f}x"
    print(line)


if __name__ == "__main__":
    main()
