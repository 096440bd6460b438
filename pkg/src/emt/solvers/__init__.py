"""Theory solvers ("generalized union finds"), one per sort."""
from __future__ import annotations

from .atomic import AtomicSolver
from .base import MergeNotification, Solver
from .linear import LinearSolver, LinExpr
from .multiset import MSet, MultisetSolver
from .offset import OffsetSolver, OffsetValue
from .poly import Poly, PolySolver
from .primitive import Ctor, Gen, IntLit, PrimitiveSolver, StrLit

THEORIES: dict[str, type[Solver]] = {
    "atomic": AtomicSolver,
    "linear": LinearSolver,
    "multiset": MultisetSolver,
    "poly": PolySolver,
    "offset": OffsetSolver,
    "primitive": PrimitiveSolver,
}


def create(theory: str, **options) -> Solver:
    """Build an empty solver for ``theory``; options go to its constructor."""
    try:
        cls = THEORIES[theory]
    except KeyError:
        raise ValueError(f"unknown theory {theory!r}; expected one of {sorted(THEORIES)}") from None
    return cls(**options)


__all__ = [
    "THEORIES", "create", "Solver", "MergeNotification",
    "AtomicSolver", "LinearSolver", "LinExpr", "MultisetSolver", "MSet",
    "PolySolver", "Poly", "OffsetSolver", "OffsetValue",
    "PrimitiveSolver", "Gen", "IntLit", "StrLit", "Ctor",
]
