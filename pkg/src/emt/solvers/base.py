"""The generalized union-find contract.

A solver canonizes the values of one sort. The kernel only ever talks to it
through ``fresh``, ``canon``, ``eq``, ``assert_eq`` and ``universe``; the
rest of this class is support for interpreted operators and extraction.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, ClassVar, Iterable, NamedTuple

from ..errors import SortError

Value = Any


class MergeNotification(NamedTuple):
    """A value that stopped being canonical, and what it canonizes to now."""

    before: Value
    after: Value


# Rendering plans: how a canonical theory value is spelled as a term over
# generator leaves. The extractor substitutes a best term for every PGen.
class PGen(NamedTuple):
    value: Value


class PLit(NamedTuple):
    value: Any


class POp(NamedTuple):
    op: str
    children: tuple


class Solver(ABC):
    theory: ClassVar[str]
    #: interpreted operator name -> number of leading literal arguments
    ops: ClassVar[dict[str, int]] = {}
    #: literal python types accepted by ``literal``
    literal_types: ClassVar[tuple[type, ...]] = ()

    def __init__(self) -> None:
        self._materialized: dict[Value, None] = {}

    # -- core interface -------------------------------------------------

    @abstractmethod
    def fresh(self) -> Value:
        """Allocate a new generator, unequal to everything so far."""

    @abstractmethod
    def canon(self, v: Value) -> Value:
        ...

    @abstractmethod
    def assert_eq(self, u: Value, v: Value) -> list[MergeNotification]:
        ...

    @abstractmethod
    def generators(self) -> Iterable[Value]:
        """Every generator allocated by ``fresh``, as a value."""

    def eq(self, u: Value, v: Value) -> bool:
        return self.canon(u) == self.canon(v)

    def touch(self, v: Value) -> bool:
        """Record that ``v`` is materialized in the e-graph; True if it is new."""
        if v in self._materialized:
            return False
        self._materialized[v] = None
        return True

    def recanon_materialized(self) -> None:
        self._materialized = dict.fromkeys(self.canon(v) for v in self._materialized)

    def universe(self) -> list[Value]:
        out: dict[Value, None] = {}
        for g in self.generators():
            out[self.canon(g)] = None
        for v in self._materialized:
            out[self.canon(v)] = None
        return list(out)

    # -- interpreted operators ------------------------------------------

    def literal(self, x: Any) -> Value:
        raise SortError(f"{self.theory} sorts have no literals (got {x!r})")

    def apply_op(self, op: str, consts: tuple, args: list[Value]) -> Value:
        raise SortError(f"{self.theory} sorts have no operator {op!r}")

    # -- extraction -------------------------------------------------------

    def plan(self, v: Value):
        """Rendering plan for canonical ``v``, or None when ``v`` is a bare generator."""
        return None

    # -- diagnostics ------------------------------------------------------

    def state(self) -> Any:
        """A comparable snapshot of the solver state."""
        return (type(self).__name__, tuple(self._materialized))


def as_fraction(x: Any) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise SortError(f"expected a numeric literal, got {x!r}")
    return Fraction(x)
