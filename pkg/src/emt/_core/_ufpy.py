"""Pure-Python union-find kernels.

Reference implementation of the API exposed by the compiled ``_ufcore``
module. Both classes tie-break by index: the smaller root always wins.
"""
from __future__ import annotations


class AtomicUF:
    __slots__ = ("_parent",)

    def __init__(self) -> None:
        self._parent: list[int] = []

    def __len__(self) -> int:
        return len(self._parent)

    def make_set(self) -> int:
        i = len(self._parent)
        self._parent.append(i)
        return i

    def find(self, i: int) -> int:
        parent = self._parent
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    def union(self, i: int, j: int):
        """Link the roots of ``i`` and ``j``; returns ``(loser, winner)`` or None."""
        ri = self.find(i)
        rj = self.find(j)
        if ri == rj:
            return None
        if rj < ri:
            ri, rj = rj, ri
        self._parent[rj] = ri
        return (rj, ri)

    def parents(self) -> list[int]:
        return list(self._parent)


class OffsetUF:
    """Union-find whose edges carry integer offsets: ``value(i) = value(parent) + edge``."""

    __slots__ = ("_parent", "_edge", "compress")

    def __init__(self, compress: bool = True) -> None:
        self._parent: list[int] = []
        self._edge: list[int] = []
        self.compress = compress

    def __len__(self) -> int:
        return len(self._parent)

    def make_set(self) -> int:
        i = len(self._parent)
        self._parent.append(i)
        self._edge.append(0)
        return i

    def find(self, i: int) -> tuple[int, int]:
        """Return ``(root, k)`` with ``i = root + k``."""
        parent, edge = self._parent, self._edge
        path = []
        total = 0
        node = i
        while parent[node] != node:
            path.append(node)
            total += edge[node]
            node = parent[node]
        root = node
        if self.compress:
            acc = total
            for n in path:
                e = edge[n]
                parent[n] = root
                edge[n] = acc
                acc -= e
        return root, total

    def union(self, gu: int, su: int, gv: int, sv: int):
        """Assert ``gu + su = gv + sv``.

        Returns ``(loser, winner, edge)`` when two roots were linked, None when
        already equal, and raises ValueError when the offsets disagree.
        """
        ru, ku = self.find(gu)
        rv, kv = self.find(gv)
        du = ku + su
        dv = kv + sv
        if ru == rv:
            if du != dv:
                raise ValueError(f"offset clash: {du} != {dv}")
            return None
        if ru < rv:
            self._parent[rv] = ru
            self._edge[rv] = du - dv
            return (rv, ru, du - dv)
        self._parent[ru] = rv
        self._edge[ru] = dv - du
        return (ru, rv, dv - du)

    def parents(self) -> list[tuple[int, int]]:
        return list(zip(self._parent, self._edge))
