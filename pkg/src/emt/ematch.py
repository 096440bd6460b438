"""Bottom-up e-matching, rewrite rules and equality saturation.

Matching never decomposes values top-down. Each pattern variable ranges
over the finite set of canonical values materialized for its sort, the
pattern is instantiated by hashcons lookups, and interpreted operators are
simply evaluated in their theory. Substitution sets are therefore bounded
by the termbank, whatever the theory.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, NamedTuple

from .egraph import EGraph
from .errors import SortError
from .terms import AppPat, LitPat, OpPat, Pattern, Term, VarPat, pattern_vars, term_vars

Value = Any


class Match(NamedTuple):
    """One solution: a substitution (sorted by variable name) and the matched value."""

    subst: tuple
    value: Value

    @property
    def env(self) -> dict[str, Value]:
        return dict(self.subst)


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: Pattern
    rhs: Pattern

    @classmethod
    def parse(cls, g: EGraph, lhs: Term | str, rhs: Term | str, name: str | None = None) -> "Rule":
        lp, rp = g.elaborate_pair(lhs, rhs)
        lv, rv = pattern_vars(lp), pattern_vars(rp)
        extra = set(rv) - set(lv)
        if extra:
            raise SortError(f"rule rhs uses variables not bound by the lhs: {sorted(extra)}")
        if not lv:
            raise SortError("rule lhs must contain at least one variable")
        return cls(name or f"{lhs} -> {rhs}", lp, rp)


@dataclass
class SaturationReport:
    iterations: int = 0
    saturated: bool = False
    unions: int = 0


def _match(subst: dict, value) -> Match:
    return Match(tuple(sorted(subst.items())), value)


# -- naive matcher -----------------------------------------------------------


def match_naive(g: EGraph, p: Pattern) -> set[Match]:
    """Scan the full Cartesian product of sort universes, one loop per variable."""
    vs = pattern_vars(p)
    names = list(vs)
    pools = [g.universe(vs[n]) for n in names]
    out: set[Match] = set()
    for combo in itertools.product(*pools):
        env = dict(zip(names, combo))
        v = g.eval_pattern(p, env, create=False)
        if v is not None:
            out.add(_match(env, g.solvers[p.sort.name].canon(v)))
    return out


# -- optimized matcher ------------------------------------------------------


def child_index(g: EGraph, func: str, pos: int) -> set:
    """Canonical values occurring at argument ``pos`` of ``func``'s table."""
    return {k[pos] for k in g.tables[func]}


def _occurrences(p: Pattern, out: dict[str, list]) -> None:
    if isinstance(p, AppPat):
        for i, c in enumerate(p.children):
            if isinstance(c, VarPat):
                out.setdefault(c.name, []).append((p.func.name, i))
            else:
                _occurrences(c, out)
    elif isinstance(p, OpPat):
        for c in p.children:
            if isinstance(c, VarPat):
                out.setdefault(c.name, []).append(None)
            else:
                _occurrences(c, out)
    elif isinstance(p, VarPat):
        out.setdefault(p.name, []).append(None)


def candidates(g: EGraph, p: Pattern, cache: dict | None = None) -> dict[str, list]:
    """Per-variable candidate lists.

    A variable directly under an uninterpreted symbol ``f`` at position ``i``
    can only take values found at that position of ``f``'s table; the
    candidates are the intersection over all such occurrences. Variables
    that only occur under interpreted operators keep the full universe.
    """
    cache = {} if cache is None else cache
    vs = pattern_vars(p)
    occ: dict[str, list] = {}
    _occurrences(p, occ)
    out = {}
    for name, sort in vs.items():
        sets = []
        for o in occ.get(name, [None]):
            if o is None:
                continue
            if o not in cache:
                cache[o] = child_index(g, *o)
            sets.append(cache[o])
        if not sets:
            key = ("universe", sort.name)
            if key not in cache:
                cache[key] = g.universe(sort)
            out[name] = cache[key]
            continue
        sets.sort(key=len)
        first, rest = sets[0], sets[1:]
        out[name] = [v for v in first if all(v in s for s in rest)]
    return out


class _Plan:
    """Pattern compiled into per-loop-level evaluation steps.

    Each node gets a slot and the set of loop levels it depends on. A
    subpattern runs at the level binding its last variable, so a failed
    lookup prunes the rest of the iteration space. Subpatterns that depend
    on a single variable are evaluated once per candidate up front (dropping
    candidates whose lookups fail); variable-free ones run once.
    """

    def __init__(self, g: EGraph, p: Pattern, order: list[str]) -> None:
        self.g = g
        n = len(order)
        self.var_slot = {name: i for i, name in enumerate(order)}
        self.nslots = n
        self.ground: list = []
        self.local: list[list] = [[] for _ in range(n)]
        self.joint: list[list] = [[] for _ in range(n)]
        self.root = self._compile(p)[0]

    def _new_slot(self) -> int:
        self.nslots += 1
        return self.nslots - 1

    def _compile(self, p: Pattern) -> tuple[int, frozenset]:
        if isinstance(p, VarPat):
            k = self.var_slot[p.name]
            return k, frozenset((k,))
        slot = self._new_slot()
        if isinstance(p, LitPat):
            solver = self.g.solvers[p.sort.name]
            value = p.value
            self.ground.append((slot, lambda vals: solver.literal(value)))
            return slot, frozenset()
        kids = [self._compile(c) for c in p.children]
        deps = frozenset().union(*(d for _, d in kids))
        ks = tuple(k for k, _ in kids)
        fn = self._step(p, ks)
        if not deps:
            self.ground.append((slot, fn))
        elif len(deps) == 1:
            self.local[max(deps)].append((slot, fn))
        else:
            self.joint[max(deps)].append((slot, fn))
        return slot, deps

    def _step(self, p: Pattern, ks: tuple):
        if isinstance(p, OpPat):
            solver = self.g.solvers[p.sort.name]
            op, consts = p.op, p.consts
            return lambda vals: solver.apply_op(op, consts, [vals[k] for k in ks])
        get = self.g.tables[p.func.name].get
        if len(ks) == 0:
            return lambda vals: get(())
        if len(ks) == 1:
            k0, = ks
            return lambda vals: get((vals[k0],))
        if len(ks) == 2:
            k0, k1 = ks
            return lambda vals: get((vals[k0], vals[k1]))
        if len(ks) == 3:
            k0, k1, k2 = ks
            return lambda vals: get((vals[k0], vals[k1], vals[k2]))
        return lambda vals: get(tuple([vals[k] for k in ks]))


def match_opt(g: EGraph, p: Pattern, cache: dict | None = None) -> set[Match]:
    """Same result set as :func:`match_naive`, with filtered and reordered loops.

    Requires a rebuilt e-graph: all stored keys and universe values canonical.
    """
    cands = candidates(g, p, cache)
    # fewest candidates outermost
    order = sorted(cands, key=lambda n: len(cands[n]))
    nvars = len(order)
    plan = _Plan(g, p, order)
    vals: list = [None] * plan.nslots
    root = plan.root
    canon = g.solvers[p.sort.name].canon
    out: set[Match] = set()

    for slot, fn in plan.ground:
        v = fn(vals)
        if v is None:
            return out
        vals[slot] = v

    # per-candidate evaluation of single-variable subpatterns
    pools = []
    for k, name in enumerate(order):
        steps = plan.local[k]
        slots = tuple(s for s, _ in steps)
        pool = []
        for c in cands[name]:
            vals[k] = c
            for slot, fn in steps:
                v = fn(vals)
                if v is None:
                    break
                vals[slot] = v
            else:
                pool.append((c, tuple(vals[s] for s in slots)))
        if not pool:
            return out
        pools.append((slots, pool))

    joint = plan.joint
    last = nvars - 1

    def loop(k: int) -> None:
        slots, pool = pools[k]
        steps = joint[k]
        for c, locs in pool:
            vals[k] = c
            for s, v in zip(slots, locs):
                vals[s] = v
            for slot, fn in steps:
                v = fn(vals)
                if v is None:
                    break
                vals[slot] = v
            else:
                if k == last:
                    out.add(Match(tuple(sorted(zip(order, vals[:nvars]))), canon(vals[root])))
                else:
                    loop(k + 1)

    if nvars == 0:
        out.add(Match((), canon(vals[root])))
    else:
        loop(0)
    return out


def eval_pattern(g: EGraph, p: Pattern, subst, create: bool = False):
    """Instantiate ``p`` under ``subst``; None signals a failed lookup."""
    env = subst if isinstance(subst, dict) else dict(subst)
    return g.eval_pattern(p, env, create=create)


# -- rules and saturation ------------------------------------------------


def _fire(g: EGraph, rule: Rule, matches: Iterable[Match]) -> int:
    unions = 0
    sort = rule.lhs.sort
    for m in matches:
        rhs = g.eval_pattern(rule.rhs, m.env, create=True)
        if g.union(sort, m.value, rhs):
            unions += 1
    return unions


def apply_rule(g: EGraph, rule: Rule) -> int:
    """Match ``rule.lhs``, union every instantiated rhs with its match, rebuild."""
    g.rebuild()
    matches = match_opt(g, rule.lhs)
    n = _fire(g, rule, matches)
    g.rebuild()
    return n


def saturate(g: EGraph, rules: list[Rule], iters: int = 30, max_values: int | None = 100_000) -> SaturationReport:
    """Run rounds of all rules until a round changes nothing or a limit is hit.

    Within a round every rule is matched against the same snapshot before
    any union is applied.
    """
    report = SaturationReport()
    g.rebuild()
    while report.iterations < iters:
        report.iterations += 1
        before = g.additions
        cache: dict = {}
        batches = [(r, match_opt(g, r.lhs, cache)) for r in rules]
        unions = 0
        for r, ms in batches:
            unions += _fire(g, r, ms)
        g.rebuild()
        report.unions += unions
        if unions == 0 and g.additions == before:
            report.saturated = True
            break
        if max_values is not None and _value_count(g) > max_values:
            break
    return report


def _value_count(g: EGraph) -> int:
    return g.num_enodes() + sum(len(s._materialized) for s in g.solvers.values())


def rule_vars(lhs: Term) -> set[str]:
    return term_vars(lhs)
