"""Reusable contract checks for any solver implementation.

``run_sequence`` drives a solver through a random mix of ``fresh``,
``assert_eq`` and queries, and raises ``AssertionError`` on the first
violated law:

* ``canon`` is idempotent and ``eq(u, v) == (canon(u) == canon(v))``;
* ``assert_eq(u, v)`` establishes ``eq(u, v)``;
* assertions only coarsen: pairs once equal stay equal;
* every ``universe`` element is a ``canon`` fixpoint, with no duplicates.

A theory plugs in through a value sampler ``sample(solver, rng) -> value``
that builds arbitrary values out of the solver's current generators.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Callable

from ..errors import TheoryInconsistency
from .base import Solver
from .linear import LinExpr
from .multiset import MSet
from .offset import OffsetValue
from .poly import Poly
from .primitive import Ctor, Gen, IntLit, StrLit

Sampler = Callable[[Solver, random.Random], Any]


def check(cond: bool, msg: str) -> None:
    if not cond:
        raise AssertionError(msg)


def run_sequence(solver: Solver, sample: Sampler, rng: random.Random, steps: int = 20,
                 initial: int = 3) -> int:
    """One randomized operation sequence; returns the number of assertions applied."""
    for _ in range(initial):
        solver.fresh()
    equal_pairs: list[tuple[Any, Any]] = []
    probes: list[Any] = []
    applied = 0
    for _ in range(steps):
        r = rng.random()
        if r < 0.15:
            g = solver.fresh()
            check(all(not solver.eq(g, p) for p in probes), "fresh generator equal to an existing value")
            probes.append(g)
            continue
        if r < 0.55:
            u, v = sample(solver, rng), sample(solver, rng)
            try:
                solver.assert_eq(u, v)
            except TheoryInconsistency:
                # the run is over: inconsistency is fatal, no backtracking
                break
            applied += 1
            check(solver.eq(u, v), f"assert_eq({u!r}, {v!r}) did not establish eq")
            equal_pairs.append((u, v))
            probes += [u, v]
        else:
            v = sample(solver, rng)
            solver.touch(solver.canon(v))
            probes.append(v)
        _laws(solver, equal_pairs, probes, rng)
    return applied


def _laws(solver: Solver, equal_pairs, probes, rng) -> None:
    for u, v in equal_pairs:
        check(solver.eq(u, v), f"coarsening violated: {u!r} and {v!r} no longer equal")
    for p in probes[-6:]:
        c = solver.canon(p)
        check(solver.canon(c) == c, f"canon not idempotent on {p!r}")
    for _ in range(4):
        if len(probes) < 2:
            break
        u, v = rng.choice(probes), rng.choice(probes)
        check(solver.eq(u, v) == (solver.canon(u) == solver.canon(v)), "eq disagrees with canon equality")
    solver.recanon_materialized()
    uni = solver.universe()
    check(len(uni) == len(set(uni)), "universe has duplicates")
    for x in uni:
        check(solver.canon(x) == x, f"universe element {x!r} is not canonical")


# -- samplers ------------------------------------------------------------------


def _pick_gen(solver, rng, fallback):
    gens = list(solver.generators())
    return rng.choice(gens) if gens else fallback


def sample_atomic(solver, rng):
    return rng.randrange(len(solver.uf))


def sample_linear(solver, rng):
    n = solver.n
    d = {i: Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2])) for i in rng.sample(range(n), min(n, rng.randint(1, 3)))}
    if rng.random() < 0.3:
        d[-1] = Fraction(rng.randint(-2, 2))
    return LinExpr(d)


def sample_multiset(solver, rng):
    return MSet.of(*(rng.randrange(solver.n) for _ in range(rng.randint(0, 3))))


def sample_poly(solver, rng):
    n = min(solver.n, 3)
    out = Poly()
    for _ in range(rng.randint(1, 2)):
        m = Poly.const(rng.choice([-2, -1, 1, 2]))
        for _ in range(rng.randint(0, 2)):
            m = m * Poly.var(rng.randrange(n))
        out = out + m
    return out


def sample_offset(solver, rng):
    if rng.random() < 0.1:
        return solver.literal(rng.randint(-3, 3))
    return OffsetValue(rng.randrange(len(solver.uf)), rng.randint(-3, 3))


def sample_primitive(solver, rng, depth=2):
    r = rng.random()
    if depth == 0 or r < 0.55:
        return Gen(rng.randrange(len(solver.parent)))
    if r < 0.65:
        return IntLit(rng.randint(0, 2))
    if r < 0.7:
        return StrLit(rng.choice("ab"))
    if r < 0.8:
        return Ctor("nil")
    return Ctor("cons", (sample_primitive(solver, rng, depth - 1), sample_primitive(solver, rng, depth - 1)))


SAMPLERS: dict[str, Sampler] = {
    "atomic": sample_atomic,
    "linear": sample_linear,
    "multiset": sample_multiset,
    "poly": sample_poly,
    "offset": sample_offset,
    "primitive": sample_primitive,
}
