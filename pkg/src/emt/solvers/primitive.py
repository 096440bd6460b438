"""Union find merged with primitive literals and constructor terms.

A class containing a literal or constructor term is always represented by
that term. Equating two constructor terms with the same head unifies their
arguments; any other clash is a theory inconsistency.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..errors import SortError, TheoryInconsistency, OccursViolation
from .base import MergeNotification, PGen, PLit, POp, Solver


@dataclass(frozen=True, slots=True)
class Gen:
    index: int

    def __repr__(self) -> str:
        return f"e{self.index}"


@dataclass(frozen=True, slots=True)
class IntLit:
    value: int

    def __repr__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, slots=True)
class StrLit:
    value: str

    def __repr__(self) -> str:
        return repr(self.value)


@dataclass(frozen=True, slots=True)
class Ctor:
    symbol: str
    args: tuple = ()

    def __repr__(self) -> str:
        if not self.args:
            return self.symbol
        return f"{self.symbol}({', '.join(map(repr, self.args))})"


PrimValue = Union[Gen, IntLit, StrLit, Ctor]


class PrimitiveSolver(Solver):
    theory = "primitive"
    literal_types = (int, str)

    def __init__(self) -> None:
        super().__init__()
        # binding of each generator: itself when a root, else another value
        self.parent: list[PrimValue] = []
        self.ctors: dict[str, int] = {}

    def declare_ctor(self, name: str, arity: int) -> None:
        self.ctors[name] = arity

    def fresh(self) -> Gen:
        g = Gen(len(self.parent))
        self.parent.append(g)
        return g

    def generators(self):
        return (Gen(i) for i in range(len(self.parent)))

    def _walk(self, v: PrimValue) -> PrimValue:
        """Resolve a generator to its class root, compressing the path."""
        if type(v) is not Gen:
            return v
        parent = self.parent
        path = []
        while True:
            p = parent[v.index]
            if p == v:
                break
            path.append(v.index)
            if type(p) is not Gen:
                v = p
                break
            v = p
        for i in path:
            parent[i] = v
        return v

    def canon(self, v: PrimValue) -> PrimValue:
        v = self._walk(v)
        if type(v) is Ctor and v.args:
            return Ctor(v.symbol, tuple(self.canon(a) for a in v.args))
        return v

    def occurs_check(self, g: PrimValue, v: PrimValue) -> bool:
        """True iff ``canon(g)`` occurs inside ``canon(v)`` at any depth."""
        target = self.canon(g)
        stack = [self.canon(v)]
        while stack:
            t = stack.pop()
            if t == target:
                return True
            if type(t) is Ctor:
                stack.extend(t.args)
        return False

    def union_prim(self, u: PrimValue, v: PrimValue) -> list[MergeNotification]:
        notes: list[MergeNotification] = []
        work = [(u, v)]
        while work:
            a, b = work.pop()
            a, b = self._walk(a), self._walk(b)
            if a == b:
                continue
            ta, tb = type(a), type(b)
            if ta is Gen and tb is Gen:
                lo, hi = (a, b) if a.index < b.index else (b, a)
                self.parent[hi.index] = lo
                notes.append(MergeNotification(hi, lo))
            elif ta is Gen or tb is Gen:
                g, t = (a, b) if ta is Gen else (b, a)
                if self.occurs_check(g, t):
                    raise OccursViolation(f"{g!r} occurs in {self.canon(t)!r}")
                self.parent[g.index] = t
                notes.append(MergeNotification(g, self.canon(t)))
            elif ta is Ctor and tb is Ctor and a.symbol == b.symbol and len(a.args) == len(b.args):
                work.extend(zip(a.args, b.args))
            else:
                raise TheoryInconsistency(f"cannot equate {self.canon(a)!r} and {self.canon(b)!r}")
        return notes

    assert_eq = union_prim

    def replay(self, v: PrimValue, notes) -> PrimValue:
        for n in notes:
            v = _subst(v, n.before, n.after)
        return v

    # -- interpreted operators ------------------------------------------

    @property
    def ops(self) -> dict[str, int]:
        return dict.fromkeys(self.ctors, 0)

    def literal(self, x) -> PrimValue:
        if isinstance(x, bool):
            raise SortError(f"unsupported literal {x!r}")
        if isinstance(x, int):
            return IntLit(x)
        if isinstance(x, str):
            return StrLit(x)
        raise SortError(f"primitive literals are integers or strings, got {x!r}")

    def apply_op(self, op, consts, args):
        arity = self.ctors.get(op)
        if arity is None:
            return super().apply_op(op, consts, args)
        if len(args) != arity:
            raise SortError(f"constructor {op} takes {arity} arguments, got {len(args)}")
        return self.canon(Ctor(op, tuple(args)))

    def plan(self, v: PrimValue):
        if type(v) is Gen:
            return None
        return _plan(v)

    def state(self):
        return ("primitive", tuple(self.canon(g) for g in self.generators()), tuple(self._materialized))


def _plan(v: PrimValue):
    if type(v) is Gen:
        return PGen(v)
    if type(v) is Ctor:
        return POp(v.symbol, tuple(_plan(a) for a in v.args))
    return PLit(v.value)


def _subst(v: PrimValue, before: PrimValue, after: PrimValue) -> PrimValue:
    if v == before:
        return after
    if type(v) is Ctor and v.args:
        return Ctor(v.symbol, tuple(_subst(a, before, after) for a in v.args))
    return v
