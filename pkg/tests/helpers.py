"""Random instance generators shared by several test modules."""
from __future__ import annotations

import random

from emt import EGraph
from emt.terms import Call, Var

from oracles import TermBank, render

SIGNATURE = {"a": 0, "b": 0, "c": 0, "d": 0, "f": 1, "g": 1, "h": 2}


def declare_signature(g: EGraph, sort: str = "T") -> None:
    g.declare_sort(sort)
    for name, arity in SIGNATURE.items():
        g.declare_func(name, [sort] * arity, sort)


def random_bank(rng: random.Random, max_nodes: int, n_eqs: int) -> tuple[TermBank, list[tuple[int, int]]]:
    """A random termbank of at most ``max_nodes`` distinct nodes plus random equations among them."""
    bank = TermBank()
    consts = [k for k, a in SIGNATURE.items() if a == 0]
    for c in rng.sample(consts, rng.randint(1, len(consts))):
        bank.add(c)
    funcs = [k for k, a in SIGNATURE.items() if a > 0]
    tries = 0
    while len(bank.nodes) < max_nodes and tries < 4 * max_nodes:
        tries += 1
        f = rng.choice(funcs)
        kids = [rng.randrange(len(bank.nodes)) for _ in range(SIGNATURE[f])]
        bank.add(f, kids)
    n = len(bank.nodes)
    eqs = [(rng.randrange(n), rng.randrange(n)) for _ in range(n_eqs)]
    return bank, eqs


def load_bank(bank: TermBank, eqs, backend: str | None = None) -> tuple[EGraph, list]:
    """Mirror the bank into a fresh e-graph; returns the graph and each node's term."""
    g = EGraph(backend)
    declare_signature(g)
    terms = [node_term(bank, i) for i in range(len(bank.nodes))]
    for t in terms:
        g.add_term(t)
    for a, b in eqs:
        g.assert_equal(terms[a], terms[b])
    g.rebuild()
    return g, terms


def node_term(bank: TermBank, i: int) -> Call:
    head, kids = bank.nodes[i]
    return Call(head, tuple(node_term(bank, k) for k in kids))


def random_pattern(rng: random.Random, depth: int, names=("x", "y", "z")):
    """Nested-tuple pattern (oracle format) over the shared signature."""
    if depth == 0 or rng.random() < 0.4:
        if rng.random() < 0.9:
            return ("?", rng.choice(names))
        return ("app", rng.choice("abcd"), ())
    f = rng.choice(["f", "g", "h"])
    return ("app", f, tuple(random_pattern(rng, depth - 1, names) for _ in range(SIGNATURE[f])))


def pattern_term(p):
    if p[0] == "?":
        return Var(p[1])
    return Call(p[1], tuple(pattern_term(k) for k in p[2]))


__all__ = ["SIGNATURE", "declare_signature", "random_bank", "load_bank", "node_term",
           "random_pattern", "pattern_term", "render"]


# -- constructor systems (oracle term format) -------------------------------------


def random_ctor_term(rng: random.Random, n: int, depth: int):
    r = rng.random()
    if depth == 0 or r < 0.35:
        return ("v", rng.randrange(n))
    if r < 0.5:
        return ("i", rng.randint(0, 2))
    if r < 0.6:
        return ("c", "nil", ())
    return ("c", "cons", (random_ctor_term(rng, n, depth - 1), random_ctor_term(rng, n, depth - 1)))


def _ground(rng, depth):
    if depth == 0 or rng.random() < 0.4:
        return rng.choice([("i", 0), ("i", 1), ("c", "nil", ())])
    return ("c", "cons", (_ground(rng, depth - 1), _ground(rng, depth - 1)))


def _apply(t, hidden):
    if t[0] == "v":
        return hidden[t[1]]
    if t[0] == "c":
        return ("c", t[1], tuple(_apply(a, hidden) for a in t[2]))
    return t


def _generalize(rng, g, hidden):
    owners = [i for i, h in hidden.items() if h == g]
    if owners and rng.random() < 0.6:
        return ("v", rng.choice(owners))
    if g[0] == "c":
        return ("c", g[1], tuple(_generalize(rng, a, hidden) for a in g[2]))
    return g


def ctor_system(rng: random.Random, n: int, k: int):
    """``k`` equations over ``n`` generators; half the time solvable by construction."""
    if rng.random() < 0.5:
        return [(random_ctor_term(rng, n, 3), random_ctor_term(rng, n, 3)) for _ in range(k)]
    hidden = {i: _ground(rng, 2) for i in range(n)}
    eqs = []
    for _ in range(k):
        t = random_ctor_term(rng, n, 3)
        eqs.append((t, _generalize(rng, _apply(t, hidden), hidden)))
    return eqs


def offset_system(rng: random.Random, n: int, k: int):
    """Relations ``(i, a, j, b)`` meaning ``x_i + a = x_j + b``; half are consistent by construction."""
    if rng.random() < 0.5:
        return [(rng.randrange(n), rng.randint(-5, 5), rng.randrange(n), rng.randint(-5, 5)) for _ in range(k)]
    hidden = [rng.randint(-10, 10) for _ in range(n)]
    rels = []
    for _ in range(k):
        i, j, a = rng.randrange(n), rng.randrange(n), rng.randint(-5, 5)
        rels.append((i, a, j, hidden[i] + a - hidden[j]))
    return rels
