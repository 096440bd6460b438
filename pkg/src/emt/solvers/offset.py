"""Union find labelled by the integer-addition group: ``x + 6 = y - 3``."""
from __future__ import annotations

from typing import NamedTuple

from .._core import get_backend
from ..errors import SortError, TheoryInconsistency
from .base import MergeNotification, PGen, PLit, POp, Solver


class OffsetValue(NamedTuple):
    gen: int
    shift: int = 0

    def __repr__(self) -> str:
        if self.shift == 0:
            return f"e{self.gen}"
        return f"e{self.gen}{self.shift:+d}"


class OffsetSolver(Solver):
    """Integer literals are offsets from a reserved origin generator, allocated on first use."""

    theory = "offset"
    ops = {"+const": 1}
    literal_types = (int,)

    def __init__(self, backend: str | None = None, compress: bool = True) -> None:
        super().__init__()
        self.uf = get_backend(backend).OffsetUF(compress)
        self.origin: int | None = None

    def fresh(self) -> OffsetValue:
        return OffsetValue(self.uf.make_set(), 0)

    def generators(self):
        return (OffsetValue(i, 0) for i in range(len(self.uf)))

    def find_offset(self, i: int) -> OffsetValue:
        r, k = self.uf.find(i)
        return OffsetValue(r, k)

    def canon(self, v: OffsetValue) -> OffsetValue:
        r, k = self.uf.find(v.gen)
        return OffsetValue(r, k + v.shift)

    def union_offset(self, u: OffsetValue, v: OffsetValue) -> MergeNotification | None:
        try:
            r = self.uf.union(u.gen, u.shift, v.gen, v.shift)
        except ValueError as exc:
            raise TheoryInconsistency(f"{u!r} = {v!r}: {exc}") from None
        if r is None:
            return None
        loser, winner, edge = r
        return MergeNotification(OffsetValue(loser, 0), OffsetValue(winner, edge))

    def assert_eq(self, u, v) -> list[MergeNotification]:
        note = self.union_offset(u, v)
        return [] if note is None else [note]

    def replay(self, v: OffsetValue, notes) -> OffsetValue:
        for n in notes:
            if v.gen == n.before.gen:
                v = OffsetValue(n.after.gen, n.after.shift + v.shift)
        return v

    # -- interpreted operators ------------------------------------------

    def literal(self, x) -> OffsetValue:
        if isinstance(x, bool) or not isinstance(x, int):
            raise SortError(f"offset literals must be integers, got {x!r}")
        if self.origin is None:
            self.origin = self.uf.make_set()
        return self.canon(OffsetValue(self.origin, x))

    def apply_op(self, op, consts, args):
        if op == "+const":
            k = consts[0]
            if isinstance(k, bool) or not isinstance(k, int) or len(args) != 1:
                raise SortError("'+const' takes an integer and one term")
            v = args[0]
            return self.canon(OffsetValue(v.gen, v.shift + k))
        return super().apply_op(op, consts, args)

    def plan(self, v: OffsetValue):
        if self.origin is not None:
            r, ko = self.uf.find(self.origin)
            if r == v.gen:
                return PLit(v.shift - ko)
        if v.shift == 0:
            return None
        return POp("+const", (PLit(v.shift), PGen(OffsetValue(v.gen, 0))))

    def state(self):
        return ("offset", self.origin, tuple(self.uf.find(i) for i in range(len(self.uf))),
                tuple(self._materialized))
