"""Plain union find over integer generators (ground atomic equations)."""
from __future__ import annotations

from .._core import get_backend
from .base import MergeNotification, Solver


class AtomicSolver(Solver):
    """Generators are ints; the root of a class is its minimum index.

    Linking the larger root under the smaller one is the ground completion
    of the atomic equations under the ordering ``e_i < e_j iff i < j``.
    """

    theory = "atomic"

    def __init__(self, backend: str | None = None) -> None:
        super().__init__()
        self.uf = get_backend(backend).AtomicUF()

    def fresh(self) -> int:
        return self.uf.make_set()

    def find(self, i: int) -> int:
        return self.uf.find(i)

    canon = find

    def union(self, i: int, j: int) -> MergeNotification | None:
        r = self.uf.union(i, j)
        return None if r is None else MergeNotification(*r)

    def assert_eq(self, u: int, v: int) -> list[MergeNotification]:
        note = self.union(u, v)
        return [] if note is None else [note]

    def eq(self, u: int, v: int) -> bool:
        return self.uf.find(u) == self.uf.find(v)

    def generators(self):
        return range(len(self.uf))

    def touch(self, v: int) -> bool:
        # every atomic value is a generator, already counted by ``generators``
        return False

    def universe(self) -> list[int]:
        find = self.uf.find
        return [i for i in range(len(self.uf)) if find(i) == i]

    def rules(self) -> dict[int, int]:
        """The oriented ground rewrite system ``{e_j: e_i}`` read off the parents."""
        return {j: self.uf.find(j) for j in range(len(self.uf)) if self.uf.find(j) != j}

    def replay(self, v: int, notes) -> int:
        for n in notes:
            if v == n.before:
                v = n.after
        return v

    def state(self):
        return ("atomic", tuple(self.uf.find(i) for i in range(len(self.uf))))
