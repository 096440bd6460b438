"""Linear / affine combinations over Q, canonized by a reduced row basis."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import InconsistentConstant, SortError
from .base import MergeNotification, PGen, PLit, POp, Solver, as_fraction

#: pseudo-generator index carrying the affine constant; below every real index
CONST = -1


class LinExpr:
    """Immutable sparse combination ``sum(c_i * e_i) + constant``.

    Stored as a sorted tuple of ``(index, Fraction)`` with no zero entries;
    the constant lives at index ``CONST``.
    """

    __slots__ = ("items", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | Iterable = ()) -> None:
        if isinstance(terms, Mapping):
            terms = terms.items()
        self.items = tuple(sorted((i, Fraction(c)) for i, c in terms if c != 0))
        self._hash = hash(self.items)

    @classmethod
    def gen(cls, i: int, coeff=1) -> "LinExpr":
        return cls(((i, coeff),))

    @classmethod
    def const(cls, c) -> "LinExpr":
        return cls(((CONST, c),))

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return {i: c for i, c in self.items if i != CONST}

    @property
    def constant(self) -> Fraction:
        if self.items and self.items[0][0] == CONST:
            return self.items[0][1]
        return Fraction(0)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.items)

    def is_zero(self) -> bool:
        return not self.items

    def __eq__(self, other) -> bool:
        return isinstance(other, LinExpr) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "LinExpr") -> "LinExpr":
        d = self.as_dict()
        for i, c in other.items:
            d[i] = d.get(i, 0) + c
        return LinExpr(d)

    def __neg__(self) -> "LinExpr":
        return LinExpr((i, -c) for i, c in self.items)

    def __sub__(self, other: "LinExpr") -> "LinExpr":
        return self + (-other)

    def scale(self, k) -> "LinExpr":
        k = Fraction(k)
        return LinExpr((i, c * k) for i, c in self.items)

    def __repr__(self) -> str:
        if not self.items:
            return "0"
        parts = []
        for i, c in reversed(self.items):
            parts.append(str(c) if i == CONST else (f"e{i}" if c == 1 else f"{c}*e{i}"))
        return " + ".join(parts)


class LinearSolver(Solver):
    """Values are ``LinExpr``; the basis rewrites each pivot generator away.

    Each row is stored normalized with pivot coefficient 1 where the pivot is
    the row's greatest index, and no pivot occurs in any other row, so a
    single substitution pass fully reduces an expression.
    """

    theory = "linear"
    ops = {"+": 0, "-": 0, "*const": 1}
    literal_types = (int, Fraction)

    def __init__(self) -> None:
        super().__init__()
        self.n = 0
        self.rows: dict[int, dict[int, Fraction]] = {}

    def fresh(self) -> LinExpr:
        i = self.n
        self.n += 1
        return LinExpr.gen(i)

    def generators(self):
        return (LinExpr.gen(i) for i in range(self.n))

    def _reduce_dict(self, d: dict[int, Fraction]) -> dict[int, Fraction]:
        rows = self.rows
        for p in [i for i in d if i in rows]:
            c = d.pop(p)
            for j, a in rows[p].items():
                if j == p:
                    continue
                v = d.get(j, 0) - c * a
                if v:
                    d[j] = v
                else:
                    d.pop(j, None)
        return d

    def reduce(self, e: LinExpr) -> LinExpr:
        if not self.rows or not any(i in self.rows for i, _ in e.items):
            return e
        return LinExpr(self._reduce_dict(e.as_dict()))

    canon = reduce

    def insert_eq(self, lhs: LinExpr, rhs: LinExpr) -> list[MergeNotification]:
        row = self._reduce_dict((lhs - rhs).as_dict())
        if not row:
            return []
        pivot = max(row)
        if pivot == CONST:
            raise InconsistentConstant(f"{lhs!r} = {rhs!r} reduces to {row[CONST]} = 0")
        lead = row[pivot]
        if lead != 1:
            row = {i: c / lead for i, c in row.items()}
        for other in self.rows.values():
            c = other.get(pivot)
            if c:
                for j, a in row.items():
                    v = other.get(j, 0) - c * a
                    if v:
                        other[j] = v
                    else:
                        other.pop(j, None)
        self.rows[pivot] = row
        after = LinExpr((j, -a) for j, a in row.items() if j != pivot)
        return [MergeNotification(LinExpr.gen(pivot), after)]

    assert_eq = insert_eq

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[LinExpr]:
        """Rows as expressions ``row = 0``, ordered by pivot."""
        return [LinExpr(self.rows[p]) for p in sorted(self.rows)]

    def replay(self, v: LinExpr, notes) -> LinExpr:
        for n in notes:
            (p, _), = n.before.items
            d = v.as_dict()
            c = d.pop(p, None)
            if c:
                v = LinExpr(d) + n.after.scale(c)
        return v

    # -- interpreted operators ------------------------------------------

    def literal(self, x) -> LinExpr:
        return LinExpr.const(as_fraction(x))

    def apply_op(self, op, consts, args):
        if op == "+":
            out = LinExpr()
            for a in args:
                out = out + a
            return self.reduce(out)
        if op == "-":
            if len(args) == 1:
                return -args[0]
            if len(args) != 2:
                raise SortError("'-' takes one or two arguments")
            return self.reduce(args[0] - args[1])
        if op == "*const":
            if len(args) != 1:
                raise SortError("'*const' takes a constant and one term")
            return self.reduce(args[0].scale(as_fraction(consts[0])))
        return super().apply_op(op, consts, args)

    def plan(self, v: LinExpr):
        items = [(i, c) for i, c in reversed(v.items)]
        if len(items) == 1 and items[0][0] != CONST and items[0][1] == 1:
            return None
        parts = []
        for i, c in items:
            if i == CONST:
                parts.append(PLit(c))
            elif c == 1:
                parts.append(PGen(LinExpr.gen(i)))
            else:
                parts.append(POp("*const", (PLit(c), PGen(LinExpr.gen(i)))))
        if len(parts) == 1:
            return parts[0]
        if not parts:
            return PLit(Fraction(0))
        return POp("+", tuple(parts))

    def state(self):
        return ("linear", self.n, tuple((p, tuple(sorted(r.items()))) for p, r in sorted(self.rows.items())),
                tuple(self._materialized))
