"""Script language: parsing, printing and execution.

::

    (sort Num :theory linear)            ; theories: atomic linear multiset poly offset primitive
    (function g (T) Num)
    (constructor cons (L L) L)           ; primitive sorts only
    (rewrite (foo (bar ?x) ?y) (biz ?x))
    (add (foo (bar a) b))                ; seed the termbank
    (assert (= t1 t2))
    (run 10)
    (check (= t1 t2))                    ; prints yes / no
    (extract t)                          ; prints the smallest equal term
    (bench :depth 6 :width 3 :classes (100 1000))
"""
from __future__ import annotations

import io
import sys
from dataclasses import dataclass, field
from typing import Callable, TextIO, Union

from .bench import run_bench, write_csv
from .egraph import EGraph
from .ematch import Rule, saturate
from .errors import CompletionBudget, EMTError, ParseError, TheoryInconsistency
from .extract import extract
from .sexp import Atom, Keyword, SExpr, SList, Str, read, to_term
from .solvers import THEORIES
from .terms import Term, term_vars

EXIT_OK, EXIT_CHECK_FAILED, EXIT_ERROR, EXIT_INCONSISTENT = 0, 1, 2, 3


@dataclass(frozen=True)
class SortCmd:
    name: str
    theory: str = "atomic"
    options: tuple = ()

    def __str__(self) -> str:
        opts = "".join(f" :{k} {v}" for k, v in self.options)
        theory = "" if self.theory == "atomic" and not self.options else f" :theory {self.theory}"
        return f"(sort {self.name}{theory}{opts})"


@dataclass(frozen=True)
class FunctionCmd:
    name: str
    arg_sorts: tuple
    result: str
    constructor: bool = False

    def __str__(self) -> str:
        kw = "constructor" if self.constructor else "function"
        return f"({kw} {self.name} ({' '.join(self.arg_sorts)}) {self.result})"


@dataclass(frozen=True)
class RewriteCmd:
    lhs: Term
    rhs: Term

    @property
    def vars(self) -> set[str]:
        return term_vars(self.lhs) | term_vars(self.rhs)

    def __str__(self) -> str:
        return f"(rewrite {self.lhs} {self.rhs})"


@dataclass(frozen=True)
class AddCmd:
    term: Term

    def __str__(self) -> str:
        return f"(add {self.term})"


@dataclass(frozen=True)
class AssertCmd:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"(assert (= {self.lhs} {self.rhs}))"


@dataclass(frozen=True)
class RunCmd:
    iters: int

    def __str__(self) -> str:
        return f"(run {self.iters})"


@dataclass(frozen=True)
class CheckCmd:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"(check (= {self.lhs} {self.rhs}))"


@dataclass(frozen=True)
class ExtractCmd:
    term: Term

    def __str__(self) -> str:
        return f"(extract {self.term})"


@dataclass(frozen=True)
class BenchCmd:
    depth: int = 6
    width: int = 3
    classes: tuple = (100, 1000)

    def __str__(self) -> str:
        return f"(bench :depth {self.depth} :width {self.width} :classes ({' '.join(map(str, self.classes))}))"


Command = Union[SortCmd, FunctionCmd, RewriteCmd, AddCmd, AssertCmd, RunCmd, CheckCmd, ExtractCmd, BenchCmd]


@dataclass
class Script:
    commands: list = field(default_factory=list)

    def __str__(self) -> str:
        return "\n".join(map(str, self.commands))

    def __len__(self) -> int:
        return len(self.commands)


# -- parsing -------------------------------------------------------------


def _err(x: SExpr, msg: str) -> ParseError:
    return ParseError(x.line, x.col, msg)


def _symbol(x: SExpr, what: str) -> str:
    if isinstance(x, Atom) and isinstance(x.value, str) and not isinstance(x.value, (Str, Keyword)):
        return x.value
    raise _err(x, f"expected {what}")


def _int(x: SExpr, what: str) -> int:
    if isinstance(x, Atom) and isinstance(x.value, int) and not isinstance(x.value, bool):
        return x.value
    raise _err(x, f"expected {what}")


def _keywords(form: SList, items: tuple) -> dict[str, SExpr]:
    if len(items) % 2:
        raise _err(form, "keyword arguments must come in :key value pairs")
    out = {}
    for k, v in zip(items[::2], items[1::2]):
        if not (isinstance(k, Atom) and isinstance(k.value, Keyword)):
            raise _err(k, "expected a :keyword")
        out[str(k.value)] = v
    return out


def _equation(form: SList, x: SExpr) -> tuple[Term, Term]:
    if not (isinstance(x, SList) and len(x.items) == 3 and isinstance(x.items[0], Atom) and x.items[0].value == "="):
        raise _err(x, "expected (= lhs rhs)")
    return to_term(x.items[1]), to_term(x.items[2])


def _arity(form: SList, n: int) -> None:
    if len(form.items) != n + 1:
        raise _err(form, f"{form.items[0].value} takes {n} argument(s)")


def _command(form: SExpr) -> Command:
    if not isinstance(form, SList) or not form.items:
        raise _err(form, "expected a command (a parenthesized form)")
    head = _symbol(form.items[0], "a command name")
    args = form.items[1:]
    if head == "sort":
        if not args:
            raise _err(form, "sort needs a name")
        name = _symbol(args[0], "a sort name")
        kw = _keywords(form, args[1:])
        theory = _symbol(kw.pop("theory"), "a theory name") if "theory" in kw else "atomic"
        if theory not in THEORIES:
            raise _err(form, f"unknown theory {theory!r}")
        opts = []
        for k, v in sorted(kw.items()):
            if k == "order":
                opts.append((k, _symbol(v, "a monomial order")))
            elif k == "budget":
                opts.append((k, _int(v, "an integer budget")))
            else:
                raise _err(v, f"unknown sort option :{k}")
        return SortCmd(name, theory, tuple(opts))
    if head in ("function", "constructor"):
        _arity(form, 3)
        name = _symbol(args[0], "a function name")
        if not isinstance(args[1], SList):
            raise _err(args[1], "expected a list of argument sorts")
        arg_sorts = tuple(_symbol(a, "a sort name") for a in args[1].items)
        return FunctionCmd(name, arg_sorts, _symbol(args[2], "a result sort"), head == "constructor")
    if head == "rewrite":
        _arity(form, 2)
        return RewriteCmd(to_term(args[0]), to_term(args[1]))
    if head == "add":
        _arity(form, 1)
        return AddCmd(to_term(args[0]))
    if head == "assert":
        _arity(form, 1)
        return AssertCmd(*_equation(form, args[0]))
    if head == "check":
        _arity(form, 1)
        return CheckCmd(*_equation(form, args[0]))
    if head == "run":
        _arity(form, 1)
        return RunCmd(_int(args[0], "an iteration count"))
    if head == "extract":
        _arity(form, 1)
        return ExtractCmd(to_term(args[0]))
    if head == "bench":
        kw = _keywords(form, args)
        depth = _int(kw.pop("depth"), "a depth") if "depth" in kw else 6
        width = _int(kw.pop("width"), "a width") if "width" in kw else 3
        classes: tuple = (100, 1000)
        if "classes" in kw:
            c = kw.pop("classes")
            classes = tuple(_int(e, "a class count") for e in c.items) if isinstance(c, SList) else (_int(c, "a class count"),)
        if kw:
            raise _err(form, f"unknown bench option :{next(iter(kw))}")
        return BenchCmd(depth, width, classes)
    raise _err(form.items[0], f"unknown command {head!r}")


def parse(text: str) -> Script:
    return Script([_command(f) for f in read(text)])


# -- execution -------------------------------------------------------------


class Interpreter:
    def __init__(self, out: Callable[[str], None] = print, backend: str | None = None) -> None:
        self.g = EGraph(backend)
        self.rules: list[Rule] = []
        self.out = out
        self.failed_checks = 0

    def execute(self, cmd: Command) -> None:
        g = self.g
        if isinstance(cmd, SortCmd):
            g.declare_sort(cmd.name, cmd.theory, **dict(cmd.options))
        elif isinstance(cmd, FunctionCmd):
            g.declare_func(cmd.name, cmd.arg_sorts, cmd.result, constructor=cmd.constructor)
        elif isinstance(cmd, RewriteCmd):
            self.rules.append(Rule.parse(g, cmd.lhs, cmd.rhs, name=str(cmd)))
        elif isinstance(cmd, AddCmd):
            g.add_term(cmd.term)
        elif isinstance(cmd, AssertCmd):
            g.assert_equal(cmd.lhs, cmd.rhs)
        elif isinstance(cmd, RunCmd):
            saturate(g, self.rules, iters=cmd.iters)
        elif isinstance(cmd, CheckCmd):
            ok = g.is_equal(cmd.lhs, cmd.rhs)
            if not ok:
                self.failed_checks += 1
            self.out("yes" if ok else "no")
        elif isinstance(cmd, ExtractCmd):
            self.out(extract(g, cmd.term).term)
        elif isinstance(cmd, BenchCmd):
            buf = io.StringIO()
            write_csv(run_bench(cmd.depth, cmd.width, cmd.classes), buf)
            for line in buf.getvalue().splitlines():
                self.out(line)
        else:  # pragma: no cover
            raise TypeError(cmd)


def run_script(source: Union[str, Script], out: Callable[[str], None] = print,
               err: TextIO | None = None, backend: str | None = None) -> int:
    """Run a script; returns the process exit code."""
    err = sys.stderr if err is None else err
    try:
        script = parse(source) if isinstance(source, str) else source
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_ERROR
    interp = Interpreter(out, backend)
    for cmd in script.commands:
        try:
            interp.execute(cmd)
        except (TheoryInconsistency, CompletionBudget) as exc:
            print(f"inconsistent: {cmd}: {exc}", file=err)
            return EXIT_INCONSISTENT
        except EMTError as exc:
            print(f"error: {cmd}: {exc}", file=err)
            return EXIT_ERROR
    return EXIT_CHECK_FAILED if interp.failed_checks else EXIT_OK
