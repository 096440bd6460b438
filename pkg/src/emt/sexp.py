"""S-expression reader with line/column tracking."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError
from .terms import Call, Lit, Term, Var


@dataclass(frozen=True)
class Atom:
    value: object  # int | Fraction | str (symbol) | Str | Keyword
    line: int
    col: int


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int
    col: int


class Str(str):
    """A string literal, as opposed to a symbol."""


class Keyword(str):
    pass


SExpr = Union[Atom, SList]

_INT = re.compile(r"[+-]?\d+\Z")
_RAT = re.compile(r"([+-]?\d+)/(\d+)\Z")
_DELIMS = set("();\"") | set(" \t\r\n")


def read(text: str) -> list[SExpr]:
    """Read every top-level form in ``text``."""
    stack: list[tuple[list, int, int]] = []
    top: list[SExpr] = []
    i, n = 0, len(text)
    line, col = 1, 1

    def advance(k: int = 1):
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line, col = line + 1, 1
            else:
                col += 1
            i += 1

    def emit(node):
        (stack[-1][0] if stack else top).append(node)

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            advance()
        elif ch == ";":
            while i < n and text[i] != "\n":
                advance()
        elif ch == "(":
            stack.append(([], line, col))
            advance()
        elif ch == ")":
            if not stack:
                raise ParseError(line, col, "unexpected ')'")
            items, l0, c0 = stack.pop()
            advance()
            emit(SList(tuple(items), l0, c0))
        elif ch == '"':
            l0, c0 = line, col
            advance()
            buf = []
            while True:
                if i >= n:
                    raise ParseError(l0, c0, "unterminated string")
                c = text[i]
                if c == "\\":
                    if i + 1 >= n:
                        raise ParseError(line, col, "dangling escape")
                    advance()
                    buf.append({"n": "\n", "t": "\t"}.get(text[i], text[i]))
                    advance()
                elif c == '"':
                    advance()
                    break
                else:
                    buf.append(c)
                    advance()
            emit(Atom(Str("".join(buf)), l0, c0))
        else:
            l0, c0 = line, col
            start = i
            while i < n and text[i] not in _DELIMS:
                advance()
            try:
                value = _atom(text[start:i])
            except ValueError as exc:
                raise ParseError(l0, c0, str(exc)) from None
            emit(Atom(value, l0, c0))
    if stack:
        _, l0, c0 = stack[-1]
        raise ParseError(l0, c0, "unbalanced '(' (missing ')')")
    return top


def _atom(tok: str):
    if _INT.match(tok):
        return int(tok)
    m = _RAT.match(tok)
    if m:
        if int(m.group(2)) == 0:
            raise ValueError("zero denominator")
        return Fraction(int(m.group(1)), int(m.group(2)))
    if tok.startswith(":") and len(tok) > 1:
        return Keyword(tok[1:])
    return tok


def to_term(x: SExpr) -> Term:
    if isinstance(x, Atom):
        v = x.value
        if isinstance(v, Keyword):
            raise ParseError(x.line, x.col, f"unexpected keyword :{v}")
        if isinstance(v, Str) or not isinstance(v, str):
            return Lit(str(v) if isinstance(v, Str) else v)
        if v.startswith("?"):
            if len(v) == 1:
                raise ParseError(x.line, x.col, "empty variable name")
            return Var(v[1:])
        return Call(v)
    if not x.items:
        raise ParseError(x.line, x.col, "empty application")
    head = x.items[0]
    if not isinstance(head, Atom) or isinstance(head.value, (Str, Keyword)) or not isinstance(head.value, str):
        raise ParseError(x.line, x.col, "application head must be a symbol")
    if head.value.startswith("?"):
        raise ParseError(head.line, head.col, "variables cannot be applied")
    return Call(head.value, tuple(to_term(a) for a in x.items[1:]))


def parse_term(text: str) -> Term:
    forms = read(text)
    if len(forms) != 1:
        raise ParseError(1, 1, f"expected exactly one term, got {len(forms)}")
    return to_term(forms[0])
