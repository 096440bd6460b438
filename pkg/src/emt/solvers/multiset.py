"""Ground multiset equations: one built-in AC operation per sort.

Equations between finitely supported multisets are completed into a
convergent, interreduced set of multiset rewrite rules. Rules are oriented
by degree, then reverse-lexicographically on the sorted generator indices
(the graded reverse lexicographic order with larger indices as larger
generators). The order is compatible with multiset union, which is what
makes rewriting terminate.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping

from ..errors import SortError
from . import monomial as mo
from .base import MergeNotification, PGen, POp, Solver

order_key = mo.grevlex_key


class MSet:
    """Immutable multiset of generator indices."""

    __slots__ = ("items", "_hash")

    def __init__(self, counts: Mapping[int, int] | Iterable = ()) -> None:
        if isinstance(counts, Mapping):
            counts = counts.items()
        items = []
        for i, k in counts:
            if k < 0:
                raise ValueError("negative multiplicity")
            if k:
                items.append((i, k))
        self.items = tuple(sorted(items))
        self._hash = hash(self.items)

    @classmethod
    def _raw(cls, items: tuple) -> "MSet":
        m = cls.__new__(cls)
        m.items = items
        m._hash = hash(items)
        return m

    @classmethod
    def of(cls, *gens: int) -> "MSet":
        d: dict[int, int] = {}
        for g in gens:
            d[g] = d.get(g, 0) + 1
        return cls(d)

    @property
    def counts(self) -> dict[int, int]:
        return dict(self.items)

    def degree(self) -> int:
        return mo.degree(self.items)

    def __add__(self, other: "MSet") -> "MSet":
        return MSet._raw(mo.mul(self.items, other.items))

    def __le__(self, other: "MSet") -> bool:
        return mo.divides(self.items, other.items)

    def __eq__(self, other) -> bool:
        return isinstance(other, MSet) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "{" + ", ".join(f"e{i}" for i, k in self.items for _ in range(k)) + "}"


class MultisetSolver(Solver):
    theory = "multiset"
    ops = {"mul": 0}

    def __init__(self) -> None:
        super().__init__()
        self.n = 0
        self.rules: dict[tuple, tuple] = {}

    def fresh(self) -> MSet:
        i = self.n
        self.n += 1
        return MSet._raw(((i, 1),))

    def generators(self):
        return (MSet._raw(((i, 1),)) for i in range(self.n))

    def _nf(self, m: tuple) -> tuple:
        rules = self.rules
        changed = True
        while changed and rules:
            changed = False
            for lhs, rhs in rules.items():
                if mo.divides(lhs, m):
                    m = mo.mul(mo.div(m, lhs), rhs)
                    changed = True
                    break
        return m

    def normalize(self, m: MSet) -> MSet:
        return MSet._raw(self._nf(m.items))

    canon = normalize

    def complete(self, l: MSet, r: MSet) -> list[MergeNotification]:
        before = dict(self.rules)
        queue = deque([(l.items, r.items)])
        rules = self.rules
        while queue:
            a, b = queue.popleft()
            a, b = self._nf(a), self._nf(b)
            if a == b:
                continue
            if order_key(a) < order_key(b):
                a, b = b, a
            for l2 in [x for x in rules if mo.divides(a, x)]:
                queue.append((l2, rules.pop(l2)))
            for l2, r2 in list(rules.items()):
                if mo.meet(a, l2):
                    u = mo.lcm(a, l2)
                    queue.append((mo.mul(mo.div(u, a), b), mo.mul(mo.div(u, l2), r2)))
            rules[a] = b
        for lhs in list(rules):
            rules[lhs] = self._nf(rules[lhs])
        return [
            MergeNotification(MSet._raw(lhs), MSet._raw(rhs))
            for lhs, rhs in rules.items()
            if before.get(lhs) != rhs
        ]

    assert_eq = complete

    def rule_list(self) -> list[tuple[MSet, MSet]]:
        return [(MSet._raw(a), MSet._raw(b)) for a, b in sorted(self.rules.items(), key=lambda kv: order_key(kv[0]))]

    def apply_op(self, op, consts, args):
        if op != "mul":
            return super().apply_op(op, consts, args)
        out: tuple = ()
        for a in args:
            out = mo.mul(out, a.items)
        return MSet._raw(self._nf(out))

    def literal(self, x):
        raise SortError(f"multiset sorts have no literals (got {x!r}); use (mul) for the empty multiset")

    def plan(self, v: MSet):
        if len(v.items) == 1 and v.items[0][1] == 1:
            return None
        return POp("mul", tuple(PGen(MSet._raw(((i, 1),))) for i, k in v.items for _ in range(k)))

    def state(self):
        return ("multiset", self.n, tuple(sorted(self.rules.items())), tuple(self._materialized))
