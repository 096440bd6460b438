"""Multi-sorted e-graph whose e-class ids are values of per-sort theory solvers.

Uninterpreted applications live in per-function hashcons tables mapping
tuples of canonical child values to a result value. Interpreted operators
(``+``, ``mul``, constructors, ...) never become e-nodes; they are evaluated
directly in the value domain of their sort. Equalities go straight to the
sort's solver; congruence repair is deferred to ``rebuild``.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Any, Iterator, Mapping

from . import solvers as _solvers
from .errors import ArityError, DuplicateName, SortError, UnknownSort, UnknownSymbol
from .sexp import parse_term
from .solvers.base import Solver
from .terms import (
    RESERVED, AppPat, Call, FuncSig, Lit, LitPat, OpPat, Pattern, Sort, Term, Var, VarPat,
    pattern_vars,
)

Value = Any

#: number of leading literal arguments taken by each interpreted operator
OP_CONSTS = {"+": 0, "-": 0, "*": 0, "mul": 0, "*const": 1, "+const": 1}

_UF_THEORIES = ("atomic", "offset")


class EGraph:
    def __init__(self, backend: str | None = None) -> None:
        self.backend = backend
        self.sorts: dict[str, Sort] = {}
        self.funcs: dict[str, FuncSig] = {}
        self.tables: dict[str, dict[tuple, Value]] = {}
        self.solvers: dict[str, Solver] = {}
        self.pending: deque[tuple[str, Value, Value]] = deque()
        self._dirty: set[str] = set()
        #: bumped whenever a new e-node or a new materialized value appears
        self.additions = 0

    # -- declarations ------------------------------------------------------

    def declare_sort(self, name: str, theory: str = "atomic", **options) -> Sort:
        if name in self.sorts:
            raise DuplicateName(f"sort {name!r} already declared")
        opts = dict(options)
        if theory in _UF_THEORIES and self.backend is not None:
            opts.setdefault("backend", self.backend)
        try:
            solver = _solvers.create(theory, **opts)
        except TypeError as exc:
            raise SortError(f"bad options for {theory} sort {name!r}: {exc}") from None
        except ValueError as exc:
            raise SortError(str(exc)) from None
        sort = Sort(name, theory, tuple(sorted((k, v) for k, v in options.items() if k != "backend")))
        self.sorts[name] = sort
        self.solvers[name] = solver
        return sort

    def sort(self, s: Sort | str) -> Sort:
        name = s.name if isinstance(s, Sort) else s
        try:
            return self.sorts[name]
        except KeyError:
            raise UnknownSort(f"unknown sort {name!r}") from None

    def declare_func(self, name: str, arg_sorts, result_sort, constructor: bool = False) -> FuncSig:
        if name in RESERVED or name.startswith("?") or name.startswith(":"):
            raise DuplicateName(f"{name!r} is reserved")
        if name in self.funcs:
            raise DuplicateName(f"function {name!r} already declared")
        args = tuple(self.sort(s) for s in arg_sorts)
        res = self.sort(result_sort)
        sig = FuncSig(name, args, res, constructor)
        if constructor:
            if res.theory != "primitive":
                raise SortError(f"constructor {name!r} must build a primitive sort, not {res.theory}")
            if any(a != res for a in args):
                raise SortError(f"constructor {name!r} arguments must all have sort {res.name}")
            self.solvers[res.name].declare_ctor(name, len(args))
        else:
            self.tables[name] = {}
        self.funcs[name] = sig
        return sig

    def declare_ctor(self, name: str, arg_sorts, result_sort) -> FuncSig:
        return self.declare_func(name, arg_sorts, result_sort, constructor=True)

    def solver(self, s: Sort | str) -> Solver:
        return self.solvers[self.sort(s).name]

    # -- elaboration ---------------------------------------------------------

    @staticmethod
    def _as_term(t: Term | str) -> Term:
        return parse_term(t) if isinstance(t, str) else t

    def elaborate(self, t: Term | str, sort: Sort | str | None = None,
                  var_sorts: dict[str, Sort] | None = None) -> Pattern:
        t = self._as_term(t)
        vs = {} if var_sorts is None else var_sorts
        expected = None if sort is None else self.sort(sort)
        s = self._infer_fix([t], [expected], vs)[0]
        return self._build(t, s, vs)

    def elaborate_pair(self, t1: Term | str, t2: Term | str,
                       var_sorts: dict[str, Sort] | None = None) -> tuple[Pattern, Pattern]:
        """Elaborate two terms that must share a sort (equations, rules)."""
        t1, t2 = self._as_term(t1), self._as_term(t2)
        vs = {} if var_sorts is None else var_sorts
        s1, s2 = self._infer_fix([t1, t2], [None, None], vs)
        if s1 is not None and s2 is not None and s1 != s2:
            raise SortError(f"sort mismatch: {t1} : {s1} vs {t2} : {s2}")
        s = s1 or s2
        if s is None:
            s = self._literal_sort(t1, t2)
        s1, s2 = self._infer_fix([t1, t2], [s, s], vs)
        return self._build(t1, s, vs), self._build(t2, s, vs)

    def _infer_fix(self, terms, expected, vs):
        while True:
            before = dict(vs)
            out = [self._infer(t, e, vs) for t, e in zip(terms, expected)]
            if vs == before:
                return out

    def _infer(self, t: Term, expected: Sort | None, vs: dict) -> Sort | None:
        if isinstance(t, Var):
            s = vs.get(t.name)
            if s is None:
                if expected is not None:
                    vs[t.name] = expected
                return expected
            if expected is not None and s != expected:
                raise SortError(f"variable ?{t.name} used at sorts {s} and {expected}")
            return s
        if isinstance(t, Lit):
            return expected
        if not isinstance(t, Call):
            raise SortError(f"not a term: {t!r}")
        sig = self.funcs.get(t.head)
        if sig is not None:
            if len(t.args) != sig.arity:
                raise ArityError(f"{t.head} takes {sig.arity} arguments, got {len(t.args)}")
            for a, s in zip(t.args, sig.arg_sorts):
                self._infer(a, s, vs)
            if expected is not None and expected != sig.result_sort:
                raise SortError(f"{t} has sort {sig.result_sort}, expected {expected}")
            return sig.result_sort
        if t.head in OP_CONSTS:
            nconst = OP_CONSTS[t.head]
            if len(t.args) < nconst + (1 if nconst else 0):
                raise ArityError(f"{t.head} needs {nconst} literal argument(s) and a term")
            for c in t.args[:nconst]:
                if not isinstance(c, Lit):
                    raise SortError(f"{t.head} expects a literal constant first, got {c}")
            rest = t.args[nconst:]
            s = expected
            if s is None:
                for a in rest:
                    s = self._infer(a, None, vs)
                    if s is not None:
                        break
            if s is None:
                return None
            if t.head not in self.solvers[s.name].ops:
                raise SortError(f"{t.head!r} is not an operator of {s.theory} sort {s}")
            for a in rest:
                self._infer(a, s, vs)
            return s
        raise UnknownSymbol(f"unknown symbol {t.head!r}")

    def _literal_sort(self, *terms: Term) -> Sort:
        lits: list = []
        ops: set = set()

        def walk(t):
            if isinstance(t, Lit):
                lits.append(t.value)
            elif isinstance(t, Call):
                ops.add(t.head)
                for a in t.args[OP_CONSTS.get(t.head, 0):]:
                    walk(a)

        for t in terms:
            walk(t)
        candidates = [
            s for s in self.sorts.values()
            if all(_accepts(self.solvers[s.name], v) for v in lits) and ops <= set(self.solvers[s.name].ops)
        ]
        if len(candidates) != 1:
            shown = " ".join(map(str, terms))
            raise SortError(f"cannot infer the sort of {shown} ({len(candidates)} candidate sorts)")
        return candidates[0]

    def _build(self, t: Term, s: Sort | None, vs: dict) -> Pattern:
        if isinstance(t, Var):
            vsort = vs.get(t.name)
            if vsort is None:
                raise SortError(f"cannot infer the sort of ?{t.name}")
            return VarPat(t.name, vsort)
        if isinstance(t, Lit):
            if s is None:
                raise SortError(f"cannot infer the sort of literal {t}")
            value = t.value
            if isinstance(value, Fraction) and value.denominator == 1:
                value = int(value)
            if not _accepts(self.solvers[s.name], value):
                raise SortError(f"literal {t} is not valid in {s.theory} sort {s}")
            return LitPat(s, value)
        sig = self.funcs.get(t.head)
        if sig is not None:
            children = tuple(self._build(a, c, vs) for a, c in zip(t.args, sig.arg_sorts))
            if sig.constructor:
                return OpPat(sig.result_sort, sig.name, children)
            return AppPat(sig, children)
        if s is None:
            raise SortError(f"cannot infer the sort of {t}")
        nconst = OP_CONSTS[t.head]
        consts = tuple(c.value for c in t.args[:nconst])
        for c in consts:
            if isinstance(c, str) or (t.head == "+const" and not isinstance(c, int)):
                raise SortError(f"bad constant {c!r} for {t.head}")
        children = tuple(self._build(a, s, vs) for a in t.args[nconst:])
        return OpPat(s, t.head, children, consts)

    # -- evaluation ------------------------------------------------------

    def eval_pattern(self, p: Pattern, env: Mapping[str, Value], create: bool = False) -> Value | None:
        """Evaluate ``p`` bottom-up under ``env``.

        In lookup mode a missing e-node yields None (match failure); in
        create mode it is inserted with a fresh result value.
        """
        if isinstance(p, VarPat):
            return env[p.name]
        if isinstance(p, LitPat):
            solver = self.solvers[p.sort.name]
            v = solver.literal(p.value)
            if create and solver.touch(v):
                self.additions += 1
            return v
        if isinstance(p, OpPat):
            args = []
            for c in p.children:
                v = self.eval_pattern(c, env, create)
                if v is None:
                    return None
                args.append(v)
            solver = self.solvers[p.sort.name]
            v = solver.apply_op(p.op, p.consts, args)
            if create and solver.touch(v):
                self.additions += 1
            return v
        sig = p.func
        key = []
        for c, s in zip(p.children, sig.arg_sorts):
            v = self.eval_pattern(c, env, create)
            if v is None:
                return None
            key.append(self.solvers[s.name].canon(v))
        return self._lookup(sig, tuple(key), create)

    def _lookup(self, sig: FuncSig, key: tuple, create: bool) -> Value | None:
        table = self.tables[sig.name]
        solver = self.solvers[sig.result_sort.name]
        r = table.get(key)
        if r is None:
            if not create:
                return None
            r = solver.fresh()
            table[key] = r
            solver.touch(r)
            self.additions += 1
            return r
        return solver.canon(r)

    def add_node(self, func: str, children) -> Value:
        """Insert (or find) the e-node ``func(children)`` directly from values."""
        sig = self.funcs[func]
        if sig.constructor or len(children) != sig.arity:
            raise ArityError(f"{func} takes {sig.arity} arguments")
        key = tuple(self.solvers[s.name].canon(c) for c, s in zip(children, sig.arg_sorts))
        return self._lookup(sig, key, True)

    def lookup(self, func: str, children) -> Value | None:
        sig = self.funcs[func]
        key = tuple(self.solvers[s.name].canon(c) for c, s in zip(children, sig.arg_sorts))
        return self._lookup(sig, key, False)

    # -- public term interface -------------------------------------------

    def add_term(self, t: Term | str, sort: Sort | str | None = None) -> Value:
        p = self.elaborate(t, sort)
        if pattern_vars(p):
            raise SortError(f"add_term expects a ground term, got {t}")
        v = self.eval_pattern(p, {}, create=True)
        return self.solvers[p.sort.name].canon(v)

    def assert_equal(self, t1: Term | str, t2: Term | str) -> bool:
        """Assert ``t1 = t2``; True when the equation was not already implied."""
        p1, p2 = self.elaborate_pair(t1, t2)
        if pattern_vars(p1) or pattern_vars(p2):
            raise SortError("assert_equal expects ground terms")
        v1 = self.eval_pattern(p1, {}, create=True)
        v2 = self.eval_pattern(p2, {}, create=True)
        return self.union(p1.sort, v1, v2)

    def is_equal(self, t1: Term | str, t2: Term | str) -> bool:
        self.rebuild()
        p1, p2 = self.elaborate_pair(t1, t2)
        if pattern_vars(p1) or pattern_vars(p2):
            raise SortError("is_equal expects ground terms")
        v1 = self.eval_pattern(p1, {}, create=True)
        v2 = self.eval_pattern(p2, {}, create=True)
        return self.solvers[p1.sort.name].eq(v1, v2)

    def union(self, sort: Sort | str, u: Value, v: Value) -> bool:
        """Assert ``u = v`` in the sort's solver; True unless already equal."""
        name = sort.name if isinstance(sort, Sort) else sort
        solver = self.solvers[name]
        if solver.eq(u, v):
            return False
        if solver.assert_eq(u, v):
            self._dirty.add(name)
        return True

    # -- rebuild -----------------------------------------------------------

    def rebuild(self) -> None:
        """Restore canonical keys and congruence after theory merges.

        Pending merges are delivered FIFO; every table touching a sort whose
        solver reported a change is re-canonized, and congruent collisions
        become new pending merges. Loops until nothing is pending.
        """
        while True:
            while self.pending:
                name, u, v = self.pending.popleft()
                self.union(name, u, v)
            if not self._dirty:
                return
            dirty, self._dirty = self._dirty, set()
            for name in dirty:
                self.solvers[name].recanon_materialized()
            for sig in self.funcs.values():
                if sig.constructor:
                    continue
                if sig.result_sort.name in dirty or any(a.name in dirty for a in sig.arg_sorts):
                    self._recanon_table(sig)

    def _recanon_table(self, sig: FuncSig) -> None:
        canons = [self.solvers[s.name].canon for s in sig.arg_sorts]
        rsolver = self.solvers[sig.result_sort.name]
        rname = sig.result_sort.name
        new: dict[tuple, Value] = {}
        for key, val in self.tables[sig.name].items():
            ck = tuple(c(k) for c, k in zip(canons, key))
            cv = rsolver.canon(val)
            old = new.get(ck)
            if old is None:
                new[ck] = cv
            elif old != cv:
                self.pending.append((rname, old, cv))
        self.tables[sig.name] = new

    # -- inspection ------------------------------------------------------

    def universe(self, sort: Sort | str) -> list[Value]:
        return self.solver(sort).universe()

    def enodes(self) -> Iterator[tuple[FuncSig, tuple, Value]]:
        for name, table in self.tables.items():
            sig = self.funcs[name]
            for key, val in table.items():
                yield sig, key, val

    def num_enodes(self) -> int:
        return sum(len(t) for t in self.tables.values())

    def snapshot(self) -> tuple:
        """A comparable image of the whole e-graph state."""
        return (
            tuple((name, tuple(table.items())) for name, table in self.tables.items()),
            tuple((name, s.state()) for name, s in self.solvers.items()),
            tuple(self.pending),
            tuple(sorted(self._dirty)),
        )


def _accepts(solver: Solver, value) -> bool:
    if isinstance(value, bool):
        return False
    types = solver.literal_types
    if isinstance(value, Fraction) and value.denominator == 1 and int in types:
        return True
    return isinstance(value, types)
