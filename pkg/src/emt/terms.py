"""Terms as written by users, and the sorted patterns they elaborate to.

A ``Term`` is untyped: a ``Call`` head may name an uninterpreted function, a
constructor or an interpreted operator, and literals get their sort from
context. ``EGraph.elaborate`` resolves all of that into a ``Pattern``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

#: interpreted operator names; never valid as user function names
RESERVED = frozenset({"+", "-", "*", "*const", "+const", "mul", "="})


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return "?" + self.name


@dataclass(frozen=True)
class Lit:
    value: Union[int, Fraction, str]

    def __str__(self) -> str:
        return render_literal(self.value)


@dataclass(frozen=True)
class Call:
    head: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.head
        return f"({self.head} {' '.join(map(str, self.args))})"


Term = Union[Var, Lit, Call]


def render_literal(v) -> str:
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, Fraction) and v.denominator != 1:
        return f"{v.numerator}/{v.denominator}"
    return str(int(v))


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Call):
        out: set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


# -- declarations ----------------------------------------------------------


@dataclass(frozen=True)
class Sort:
    name: str
    theory: str = "atomic"
    options: tuple = ()

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class FuncSig:
    name: str
    arg_sorts: tuple
    result_sort: Sort
    constructor: bool = False

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)


# -- elaborated patterns ---------------------------------------------------


@dataclass(frozen=True)
class VarPat:
    name: str
    sort: Sort


@dataclass(frozen=True)
class LitPat:
    sort: Sort
    value: object


@dataclass(frozen=True)
class AppPat:
    func: FuncSig
    children: tuple

    @property
    def sort(self) -> Sort:
        return self.func.result_sort


@dataclass(frozen=True)
class OpPat:
    """Interpreted operator (theory op or constructor), evaluated in the value domain."""

    sort: Sort
    op: str
    children: tuple
    consts: tuple = field(default=())


Pattern = Union[VarPat, LitPat, AppPat, OpPat]


def pattern_vars(p: Pattern) -> dict[str, Sort]:
    """Variables of ``p`` in first-occurrence order."""
    out: dict[str, Sort] = {}

    def walk(q):
        if isinstance(q, VarPat):
            out.setdefault(q.name, q.sort)
        elif isinstance(q, (AppPat, OpPat)):
            for c in q.children:
                walk(c)

    walk(p)
    return out


def pattern_depth(p: Pattern) -> int:
    if isinstance(p, (AppPat, OpPat)) and p.children:
        return 1 + max(pattern_depth(c) for c in p.children)
    return 0


def pattern_to_term(p: Pattern) -> Term:
    if isinstance(p, VarPat):
        return Var(p.name)
    if isinstance(p, LitPat):
        return Lit(p.value)
    if isinstance(p, AppPat):
        return Call(p.func.name, tuple(pattern_to_term(c) for c in p.children))
    return Call(p.op, tuple(Lit(c) for c in p.consts) + tuple(pattern_to_term(c) for c in p.children))
