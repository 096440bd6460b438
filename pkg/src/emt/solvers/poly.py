"""Polynomials over Q modulo the ideal of asserted equations.

Canonical forms are normal forms with respect to a reduced Groebner basis,
maintained incrementally with Buchberger's algorithm.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import CompletionBudget, InconsistentConstant, SortError
from . import monomial as mo
from .base import MergeNotification, PGen, PLit, POp, Solver, as_fraction


class Poly:
    """Immutable polynomial: a mapping monomial -> nonzero Fraction."""

    __slots__ = ("items", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()) -> None:
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict = {}
        for m, c in terms:
            m = mo.mono(m) if isinstance(m, dict) else m
            acc[m] = acc.get(m, 0) + Fraction(c)
        self.items = tuple(sorted((m, c) for m, c in acc.items() if c))
        self._hash = hash(self.items)

    @classmethod
    def _from_dict(cls, d: dict) -> "Poly":
        p = cls.__new__(cls)
        p.items = tuple(sorted(d.items()))
        p._hash = hash(p.items)
        return p

    @classmethod
    def var(cls, i: int) -> "Poly":
        return cls._from_dict({((i, 1),): Fraction(1)})

    @classmethod
    def const(cls, c) -> "Poly":
        c = Fraction(c)
        return cls._from_dict({mo.ONE: c} if c else {})

    def as_dict(self) -> dict:
        return dict(self.items)

    def is_zero(self) -> bool:
        return not self.items

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "Poly") -> "Poly":
        return Poly._from_dict(_add(self.as_dict(), other.items, 1))

    def __sub__(self, other: "Poly") -> "Poly":
        return Poly._from_dict(_add(self.as_dict(), other.items, -1))

    def __neg__(self) -> "Poly":
        return Poly._from_dict({m: -c for m, c in self.items})

    def __mul__(self, other: "Poly") -> "Poly":
        d: dict = {}
        for m1, c1 in self.items:
            _add(d, ((mo.mul(m1, m2), c1 * c2) for m2, c2 in other.items), 1)
        return Poly._from_dict(d)

    def scale(self, k) -> "Poly":
        k = Fraction(k)
        return Poly._from_dict({m: c * k for m, c in self.items} if k else {})

    def __repr__(self) -> str:
        if not self.items:
            return "0"
        out = []
        for m, c in self.items:
            factors = "*".join(f"e{i}" + (f"^{e}" if e > 1 else "") for i, e in m)
            if not factors:
                out.append(str(c))
            elif c == 1:
                out.append(factors)
            else:
                out.append(f"{c}*{factors}")
        return " + ".join(out)


def _add(d: dict, terms, sign) -> dict:
    for m, c in terms:
        v = d.get(m, 0) + sign * c
        if v:
            d[m] = v
        else:
            d.pop(m, None)
    return d


class PolySolver(Solver):
    """Values are ``Poly``; ``canon`` divides by a reduced, monic Groebner basis."""

    theory = "poly"
    ops = {"+": 0, "-": 0, "*": 0, "*const": 1}
    literal_types = (int, Fraction)

    def __init__(self, order: str = "grevlex", budget: int = 100_000) -> None:
        super().__init__()
        if order not in mo.ORDERS:
            raise SortError(f"unknown monomial order {order!r}")
        self.order = order
        self.key = mo.ORDERS[order]
        self.budget = budget
        self.n = 0
        # list of (leading monomial, monic polynomial dict)
        self.gens: list[tuple[tuple, dict]] = []

    def fresh(self) -> Poly:
        i = self.n
        self.n += 1
        return Poly.var(i)

    def generators(self):
        return (Poly.var(i) for i in range(self.n))

    # -- reduction --------------------------------------------------------

    def leading(self, p: dict) -> tuple:
        return max(p, key=self.key)

    def _reduce(self, p: dict, basis, counter: list | None = None) -> dict:
        """Full multivariate division of ``p`` by ``basis``; returns the remainder."""
        if not basis:
            return dict(p)
        key = self.key
        p = dict(p)
        rem: dict = {}
        while p:
            m = max(p, key=key)
            c = p.pop(m)
            for lm, g in basis:
                if mo.divides(lm, m):
                    q = mo.div(m, lm)
                    for gm, gc in g.items():
                        if gm != lm:
                            t = mo.mul(gm, q)
                            v = p.get(t, 0) - c * gc
                            if v:
                                p[t] = v
                            else:
                                p.pop(t, None)
                    if counter is not None:
                        counter[0] += 1
                        if counter[0] > self.budget:
                            raise CompletionBudget(f"Groebner completion exceeded {self.budget} reduction steps")
                    break
            else:
                rem[m] = c
        return rem

    def poly_reduce(self, p: Poly) -> Poly:
        if not self.gens:
            return p
        return Poly._from_dict(self._reduce(p.as_dict(), self.gens))

    canon = poly_reduce

    def _monic(self, p: dict) -> tuple[tuple, dict]:
        lm = self.leading(p)
        c = p[lm]
        return lm, (p if c == 1 else {m: v / c for m, v in p.items()})

    def s_poly(self, f: tuple[tuple, dict], g: tuple[tuple, dict]) -> dict:
        (lf, pf), (lg, pg) = f, g
        u = mo.lcm(lf, lg)
        qf, qg = mo.div(u, lf), mo.div(u, lg)
        d: dict = {}
        _add(d, ((mo.mul(m, qf), c) for m, c in pf.items()), 1)
        _add(d, ((mo.mul(m, qg), c) for m, c in pg.items()), -1)
        return d

    # -- completion ---------------------------------------------------------

    def buchberger(self, p: Poly, q: Poly) -> list[MergeNotification]:
        counter = [0]
        f = self._reduce((p - q).as_dict(), self.gens, counter)
        if not f:
            return []
        if set(f) == {mo.ONE}:
            raise InconsistentConstant(f"{p!r} = {q!r} reduces to {f[mo.ONE]} = 0")
        old = {lm: tuple(sorted(g.items())) for lm, g in self.gens}
        basis = list(self.gens)
        basis.append(self._monic(f))
        pairs = [(i, len(basis) - 1) for i in range(len(basis) - 1)]
        while pairs:
            # normal strategy: smallest lcm of leading monomials first
            pairs.sort(key=lambda ij: self.key(mo.lcm(basis[ij[0]][0], basis[ij[1]][0])), reverse=True)
            i, j = pairs.pop()
            if mo.coprime(basis[i][0], basis[j][0]):
                continue
            h = self._reduce(self.s_poly(basis[i], basis[j]), basis, counter)
            if h:
                if set(h) == {mo.ONE}:
                    raise InconsistentConstant("polynomial system is inconsistent (1 = 0)")
                basis.append(self._monic(h))
                k = len(basis) - 1
                pairs.extend((t, k) for t in range(k))
        self.gens = self._interreduce(basis)
        return [
            MergeNotification(Poly._from_dict({lm: Fraction(1)}),
                              Poly._from_dict({m: -c for m, c in g.items() if m != lm}))
            for lm, g in self.gens
            if old.get(lm) != tuple(sorted(g.items()))
        ]

    assert_eq = buchberger

    def _interreduce(self, basis):
        minimal: list[tuple[tuple, dict]] = []
        for lm, g in sorted(basis, key=lambda t: self.key(t[0])):
            if not any(mo.divides(l2, lm) for l2, _ in minimal):
                minimal.append((lm, g))
        out = []
        for k, (lm, g) in enumerate(minimal):
            others = minimal[:k] + minimal[k + 1:]
            out.append(self._monic(self._reduce(g, others)))
        out.sort(key=lambda t: self.key(t[0]))
        return out

    def basis(self) -> list[Poly]:
        return [Poly._from_dict(g) for _, g in self.gens]

    # -- interpreted operators ------------------------------------------

    def literal(self, x) -> Poly:
        return Poly.const(as_fraction(x))

    def apply_op(self, op, consts, args):
        if op == "+":
            out: dict = {}
            for a in args:
                _add(out, a.items, 1)
            return self.poly_reduce(Poly._from_dict(out))
        if op == "-":
            if len(args) == 1:
                return -args[0]
            if len(args) != 2:
                raise SortError("'-' takes one or two arguments")
            return self.poly_reduce(args[0] - args[1])
        if op == "*":
            out_p = Poly.const(1)
            for a in args:
                out_p = self.poly_reduce(out_p * a)
            return out_p
        if op == "*const":
            if len(args) != 1:
                raise SortError("'*const' takes a constant and one term")
            return self.poly_reduce(args[0].scale(as_fraction(consts[0])))
        return super().apply_op(op, consts, args)

    def plan(self, v: Poly):
        if len(v.items) == 1:
            m, c = v.items[0]
            if c == 1 and len(m) == 1 and m[0][1] == 1:
                return None
        if not v.items:
            return PLit(Fraction(0))
        terms = []
        for m, c in sorted(v.items, key=lambda mc: self.key(mc[0]), reverse=True):
            factors = tuple(PGen(Poly.var(i)) for i, e in m for _ in range(e))
            if not factors:
                terms.append(PLit(c))
            elif c != 1:
                terms.append(POp("*", (PLit(c),) + factors))
            elif len(factors) == 1:
                terms.append(factors[0])
            else:
                terms.append(POp("*", factors))
        return terms[0] if len(terms) == 1 else POp("+", tuple(terms))

    def state(self):
        return ("poly", self.order, self.n, tuple((lm, tuple(sorted(g.items()))) for lm, g in self.gens),
                tuple(self._materialized))
