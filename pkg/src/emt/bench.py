"""Termbank generators and timing for the bottom-up matcher.

Two shapes probe the two ends of the cost model ``O(E^V * d * log N)``:

* ``deep``: a chain ``a, foo(a), foo(foo(a)), ...`` of ``E`` classes matched
  against ``foo(foo(...foo(?x)...))`` of depth ``d`` (one variable);
* ``wide``: ``E`` constants ``c_i`` with ``bar(c_i)`` and ``E`` random
  ``foo`` e-nodes of arity ``V``, matched against
  ``foo(bar(?x1), ..., bar(?xV))``.
"""
from __future__ import annotations

import csv
import random
import sys
import time
from dataclasses import astuple, dataclass
from typing import Iterable, TextIO

from .egraph import EGraph
from .ematch import candidates, match_opt
from .terms import Call, Var

COLUMNS = ("pattern_kind", "E", "N", "vars", "depth", "micros")


@dataclass(frozen=True)
class BenchRow:
    pattern_kind: str
    E: int
    N: int
    vars: int
    depth: int
    micros: float


def deep_termbank(E: int, depth: int, backend: str | None = None):
    g = EGraph(backend)
    g.declare_sort("T")
    g.declare_func("a", [], "T")
    g.declare_func("foo", ["T"], "T")
    v = g.add_term(Call("a"))
    for _ in range(E - 1):
        v = g.add_node("foo", [v])
    pat: object = Var("x")
    for _ in range(depth):
        pat = Call("foo", (pat,))
    return g, g.elaborate(pat)


def wide_termbank(E: int, width: int, seed: int = 0, backend: str | None = None):
    rng = random.Random(seed)
    g = EGraph(backend)
    g.declare_sort("T")
    g.declare_func("bar", ["T"], "T")
    g.declare_func("foo", ["T"] * width, "T")
    consts = []
    for i in range(E):
        g.declare_func(f"c{i}", [], "T")
        consts.append(g.add_term(Call(f"c{i}")))
    bars = [g.add_node("bar", [c]) for c in consts]
    for _ in range(E):
        g.add_node("foo", [rng.choice(bars) for _ in range(width)])
    pat = Call("foo", tuple(Call("bar", (Var(f"x{j}"),)) for j in range(width)))
    return g, g.elaborate(pat)


def candidate_tuples(g: EGraph, pattern) -> int:
    """Size of the filtered iteration space (product of candidate counts)."""
    n = 1
    for pool in candidates(g, pattern).values():
        n *= len(pool)
    return n


def time_match(g: EGraph, pattern, repeat: int = 3) -> float:
    """Best-of-``repeat`` wall time of one ``match_opt`` call, in microseconds."""
    g.rebuild()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter_ns()
        match_opt(g, pattern)
        best = min(best, time.perf_counter_ns() - t0)
    return best / 1000.0


def run_bench(depth: int, width: int, classes: Iterable[int], repeat: int = 3,
              backend: str | None = None, max_tuples: int = 2_000_000) -> list[BenchRow]:
    """Deep rows for every ``E``; wide rows for ``V = 1..width`` while ``E**V <= max_tuples``."""
    classes = list(classes)
    rows = []
    for E in classes:
        g, p = deep_termbank(E, depth, backend)
        rows.append(BenchRow("deep", E, g.num_enodes(), 1, depth, time_match(g, p, repeat)))
    for E in classes:
        for v in range(1, width + 1):
            if E ** v > max_tuples:
                print(f"bench: skipping wide E={E} V={v} ({E ** v} tuples > {max_tuples})", file=sys.stderr)
                continue
            g, p = wide_termbank(E, v, backend=backend)
            rows.append(BenchRow("wide", E, g.num_enodes(), v, 2, time_match(g, p, repeat)))
    return rows


def write_csv(rows: list[BenchRow], out: TextIO | None = None) -> None:
    w = csv.writer(sys.stdout if out is None else out, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow(astuple(r)[:5] + (f"{r.micros:.1f}",))
