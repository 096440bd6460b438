"""Smallest-term extraction by fixpoint cost propagation.

Cost is node count. E-nodes give one candidate per result value; theory
values get a second candidate from their solver's rendering plan (e.g. a
linear value spelled as ``+``/``*const`` over the best terms of its
generators). Ties go to the lexicographically least rendering.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .egraph import EGraph
from .errors import NoRepresentative, SortError
from .solvers.base import PGen, PLit, POp
from .terms import Term, pattern_vars, render_literal

Value = Any
Best = tuple[int, str]


@dataclass(frozen=True)
class ExtractResult:
    term: str
    size: int


def _render_app(name: str, kids: list[str]) -> str:
    return name if not kids else f"({name} {' '.join(kids)})"


def _plan_cost(plan, sort_name: str, g: EGraph, best: dict) -> Best | None:
    if isinstance(plan, PLit):
        return 1, render_literal(plan.value)
    if isinstance(plan, PGen):
        return best.get((sort_name, g.solvers[sort_name].canon(plan.value)))
    assert isinstance(plan, POp)
    size, parts = 1, []
    for c in plan.children:
        b = _plan_cost(c, sort_name, g, best)
        if b is None:
            return None
        size += b[0]
        parts.append(b[1])
    if not parts and plan.op not in g.funcs:
        return size, f"({plan.op})"
    return size, _render_app(plan.op, parts)


def best_terms(g: EGraph, extra: list[tuple[str, Value]] = ()) -> dict[tuple[str, Value], Best]:
    """Best (size, rendering) for every reachable canonical value, keyed by (sort, value)."""
    g.rebuild()
    nodes = list(g.enodes())
    theory_values: dict[tuple[str, Value], None] = {}
    for sig, key, val in nodes:
        for s, k in zip(sig.arg_sorts, key):
            if s.theory != "atomic":
                theory_values[(s.name, k)] = None
        if sig.result_sort.theory != "atomic":
            theory_values[(sig.result_sort.name, val)] = None
    for name, solver in g.solvers.items():
        if solver.theory != "atomic":
            for v in solver.universe():
                theory_values[(name, v)] = None
    for sv in extra:
        theory_values[sv] = None
    plans = []
    for name, v in theory_values:
        plan = g.solvers[name].plan(v)
        if plan is not None:
            plans.append((name, v, plan))

    best: dict[tuple[str, Value], Best] = {}
    changed = True
    while changed:
        changed = False
        for sig, key, val in nodes:
            size, parts = 1, []
            for s, k in zip(sig.arg_sorts, key):
                b = best.get((s.name, k))
                if b is None:
                    break
                size += b[0]
                parts.append(b[1])
            else:
                cand = (size, _render_app(sig.name, parts))
                slot = (sig.result_sort.name, val)
                cur = best.get(slot)
                if cur is None or cand < cur:
                    best[slot] = cand
                    changed = True
        for name, v, plan in plans:
            cand = _plan_cost(plan, name, g, best)
            if cand is None:
                continue
            cur = best.get((name, v))
            if cur is None or cand < cur:
                best[(name, v)] = cand
                changed = True
    return best


def extract(g: EGraph, t: Term | str) -> ExtractResult:
    p = g.elaborate(t)
    if pattern_vars(p):
        raise SortError("extract expects a ground term")
    g.eval_pattern(p, {}, create=True)
    g.rebuild()
    name = p.sort.name
    v = g.solvers[name].canon(g.eval_pattern(p, {}, create=True))
    best = best_terms(g, [(name, v)])
    b = best.get((name, v))
    if b is None:
        raise NoRepresentative(f"no extractable term for {t} (value {v!r})")
    return ExtractResult(b[1], b[0])
