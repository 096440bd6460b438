"""Sparse exponent vectors: sorted tuples of ``(generator, exponent)``.

Used as monomials by the polynomial solver and as multisets by the
multiset solver. Generators with larger indices are larger variables.
"""
from __future__ import annotations

Mono = tuple  # tuple[tuple[int, int], ...]

ONE: Mono = ()


def mono(d) -> Mono:
    if isinstance(d, dict):
        d = d.items()
    return tuple(sorted((i, e) for i, e in d if e))


def degree(m: Mono) -> int:
    return sum(e for _, e in m)


def mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def divides(a: Mono, b: Mono) -> bool:
    """True when ``a`` is a sub-multiset of ``b``."""
    if len(a) > len(b):
        return False
    db = dict(b)
    return all(db.get(i, 0) >= e for i, e in a)


def div(b: Mono, a: Mono) -> Mono:
    """``b / a``; assumes ``divides(a, b)``."""
    d = dict(b)
    for i, e in a:
        d[i] -= e
    return tuple(sorted((i, e) for i, e in d.items() if e))


def lcm(a: Mono, b: Mono) -> Mono:
    d = dict(a)
    for i, e in b:
        if e > d.get(i, 0):
            d[i] = e
    return tuple(sorted(d.items()))


def meet(a: Mono, b: Mono) -> Mono:
    """Pointwise minimum (multiset intersection)."""
    db = dict(b)
    return tuple((i, min(e, db[i])) for i, e in a if i in db)


def coprime(a: Mono, b: Mono) -> bool:
    db = dict(b)
    return not any(i in db for i, _ in a)


def grevlex_key(m: Mono):
    # equal degree: the smaller exponent at the smallest differing index wins
    return (degree(m), tuple((i, -e) for i, e in m))


def lex_key(m: Mono):
    return tuple(reversed(m))


ORDERS = {"grevlex": grevlex_key, "lex": lex_key}
