"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they
happen (they are also repeated in the terminal summary), or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import os
import random
import sys
import time
import traceback
from fractions import Fraction as F

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from emt import EGraph, Rule, match_naive, match_opt, saturate  # noqa: E402
from emt.bench import deep_termbank, time_match, wide_termbank  # noqa: E402
from emt.errors import InconsistentConstant, TheoryInconsistency  # noqa: E402
from emt.solvers import THEORIES, AtomicSolver, LinearSolver, MultisetSolver, OffsetSolver, PolySolver, create  # noqa: E402
from emt.solvers.conformance import SAMPLERS, run_sequence  # noqa: E402
from emt.solvers.linear import LinExpr  # noqa: E402
from emt.solvers.multiset import MSet  # noqa: E402
from emt.solvers.offset import OffsetValue  # noqa: E402
from emt.solvers.poly import Poly  # noqa: E402
from emt.solvers.primitive import Ctor, IntLit  # noqa: E402

from helpers import (  # noqa: E402
    ctor_system, load_bank, offset_system, pattern_term, random_bank, random_ctor_term, random_pattern,
)
from oracles import (  # noqa: E402
    DensePoly, brute_force_matches, dense, in_span, offset_assignment, offset_components, rank, resolve,
    top_down_matches, unify_all,
)

RESULTS: list[str] = []


def report(number: int, title: str, fn) -> None:
    t0 = time.perf_counter()
    try:
        detail = fn() or ""
    except Exception as exc:
        line = f"FAIL criterion {number:2d} {title}: {type(exc).__name__}: {exc}"
        RESULTS.append(line)
        print(line)
        raise
    line = f"PASS criterion {number:2d} {title} ({time.perf_counter() - t0:.2f}s) {detail}".rstrip()
    RESULTS.append(line)
    print(line)


GOLDEN_SYSTEM = [(1, 2), (2, 3), (2, 1), (3, 1), (4, 5)]


# 1 -------------------------------------------------------------------------------------


def atomic_golden():
    s = AtomicSolver()
    for _ in range(6):  # index 0 unused: e_i is generator i
        s.fresh()
    for i, j in GOLDEN_SYSTEM:
        s.assert_eq(i, j)
    return s.rules()


def criterion_1():
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        rules = atomic_golden()
        best = min(best, time.perf_counter() - t0)
    assert rules == {2: 1, 3: 1, 5: 4}, rules
    assert best < 1e-3, f"{best * 1e6:.0f} us"
    return f"rules e2->e1 e3->e1 e5->e4 in {best * 1e6:.0f} us"


# 2, 3 -------------------------------------------------------------------------------------


def linear_golden():
    s = LinearSolver()
    e = [s.fresh() for _ in range(6)]
    for i, j in GOLDEN_SYSTEM:
        s.insert_eq(e[i], e[j])
    return s, e


def criterion_2():
    s, e = linear_golden()
    assert len(s.rows) == 3 and s.pivots() == [2, 3, 5]
    displayed = [e[1] - e[2], e[2] - e[3], e[4] - e[5]]
    assert all(s.reduce(r).is_zero() for r in displayed)
    probe = LinearSolver()
    [probe.fresh() for _ in range(6)]
    for r in displayed:
        probe.insert_eq(r, LinExpr())
    assert all(probe.reduce(r).is_zero() for r in s.basis())
    got = s.reduce(e[1] + e[3].scale(3) + e[5].scale(5))
    assert got == e[1].scale(4) + e[4].scale(5), got
    return "pivots {e2,e3,e5}; canon = 4e1+5e4"


def criterion_3():
    s, e = linear_golden()
    extra = (e[1].scale(4) + e[4].scale(5), e[2].scale(13) + e[3].scale(2))
    s.insert_eq(*extra)
    eqs = [(e[i], e[j]) for i, j in GOLDEN_SYSTEM] + [extra]
    rows = [dense((l - r).as_dict(), 6) for l, r in eqs]
    rng = random.Random(3)
    agree = trues = 0
    for _ in range(200):
        u = LinExpr({i: rng.randint(-5, 5) for i in range(1, 6)})
        if rng.random() < 0.5:
            v = u
            for l, r in rng.sample(eqs, 2):
                v = v + (l - r).scale(F(rng.randint(-4, 4), rng.randint(1, 3)))
        else:
            v = LinExpr({i: rng.randint(-5, 5) for i in range(1, 6)})
        want = in_span(rows, dense((u - v).as_dict(), 6))
        assert s.eq(u, v) == want, (u, v)
        agree += 1
        trues += want
    return f"{agree}/200 agree with dense elimination ({trues} equal)"


# 4 -------------------------------------------------------------------------------------------


def random_poly(rng, n):
    d = {}
    for _ in range(rng.randint(1, 3)):
        e = [0] * n
        for _ in range(rng.randint(0, 3)):
            e[rng.randrange(n)] += 1
        d[tuple(e)] = d.get(tuple(e), 0) + F(rng.choice([-3, -2, -1, 1, 2, 3]))
    return {e: c for e, c in d.items() if c}


def from_dense(d):
    return Poly({tuple((i, k) for i, k in enumerate(e) if k): c for e, c in d.items()})


def to_dense(p, n):
    out = {}
    for m, c in p.items:
        e = [0] * n
        for i, k in m:
            e[i] = k
        out[tuple(e)] = c
    return out


def criterion_4():
    s = PolySolver()
    sn, cs = s.fresh(), s.fresh()
    s.buchberger(sn * sn + cs * cs, Poly.const(1))
    assert s.poly_reduce(sn * sn + cs * cs) == Poly.const(1)
    rng = random.Random(4)
    done = slowest = 0
    while done < 50:
        n = rng.randint(1, 3)
        system = [p for p in (random_poly(rng, n) for _ in range(rng.randint(1, 3))) if any(sum(e) for e in p)]
        if not system or DensePoly(n).groebner(system) == [{(0,) * n: F(1)}]:
            continue  # empty or inconsistent; the criterion concerns proper ideals
        s = PolySolver()
        [s.fresh() for _ in range(n)]
        t0 = time.perf_counter()
        for p in system:
            s.buchberger(from_dense(p), Poly())
        elapsed = time.perf_counter() - t0
        assert elapsed < 5, elapsed
        slowest = max(slowest, elapsed)
        G = [to_dense(p, n) for p in s.basis()]
        assert DensePoly(n).is_groebner(G)
        done += 1
    return f"50 systems; all S-polynomials reduce to 0; slowest {slowest * 1e3:.1f} ms"


# 5 ------------------------------------------------------------------------------------------


def criterion_5():
    rng = random.Random(5)
    queries = equal = 0
    for _ in range(100):
        n = rng.randint(1, 5)

        def rm():
            return MSet.of(*(rng.randrange(n) for _ in range(rng.randint(1, 4))))

        eqs = [(rm(), rm()) for _ in range(rng.randint(1, 4))]
        ms = MultisetSolver()
        ps = PolySolver()
        for _ in range(n):
            ms.fresh()
            ps.fresh()
        for l, r in eqs:
            ms.complete(l, r)
            ps.buchberger(Poly({l.items: 1}), Poly({r.items: 1}))
        for _ in range(20):
            u, v = rm(), rm()
            if rng.random() < 0.5:
                l, r = rng.choice(eqs)
                w = rm()
                u, v = w + l, w + r
            a = ms.eq(u, v)
            assert a == ps.eq(Poly({u.items: 1}), Poly({v.items: 1})), (eqs, u, v)
            queries += 1
            equal += a
    return f"{queries} queries agree ({equal} equal)"


# 6 ------------------------------------------------------------------------------------------


def criterion_6():
    s = OffsetSolver()
    x, y = s.fresh(), s.fresh()
    s.union_offset(OffsetValue(x.gen, 6), OffsetValue(y.gen, -3))
    assert s.find_offset(y.gen) == (x.gen, 9)
    try:
        s.assert_eq(x, OffsetValue(x.gen, 1))
        raise AssertionError("x = x+1 accepted")
    except TheoryInconsistency:
        pass
    rng = random.Random(6)
    inconsistent = 0
    for _ in range(100):
        n = rng.randint(1, 10)
        rels = offset_system(rng, n, rng.randint(0, 15))
        s = OffsetSolver()
        [s.fresh() for _ in range(n)]
        try:
            for i, a, j, b in rels:
                s.assert_eq(OffsetValue(i, a), OffsetValue(j, b))
            ok = True
        except TheoryInconsistency:
            ok = False
        val = offset_assignment(n, rels)
        assert ok == (val is not None)
        if not ok:
            inconsistent += 1
            continue
        comp = offset_components(n, rels)
        for i in range(n):
            for j in range(n):
                k = val[j] - val[i] if rng.random() < 0.5 else rng.randint(-9, 9)
                want = comp[i] == comp[j] and val[i] + k == val[j]
                assert s.eq(OffsetValue(i, k), OffsetValue(j, 0)) == want
    return f"100 systems match ({inconsistent} inconsistent)"


# 7 ----------------------------------------------------------------------------------------------


def criterion_7():
    from emt.solvers.primitive import Gen, PrimitiveSolver

    def solver(n):
        s = PrimitiveSolver()
        s.declare_ctor("nil", 0)
        s.declare_ctor("cons", 2)
        return s, [s.fresh() for _ in range(n)]

    s, (e,) = solver(1)
    s.union_prim(e, IntLit(42))
    assert s.canon(e) == IntLit(42)
    s, (a, b) = solver(2)
    s.union_prim(Ctor("cons", (a, Ctor("nil"))), Ctor("cons", (b, Ctor("nil"))))
    assert s.eq(a, b)
    try:
        s.union_prim(Ctor("nil"), Ctor("cons", (a, b)))
        raise AssertionError("nil = cons accepted")
    except TheoryInconsistency:
        pass

    rng = random.Random(7)

    def value(t):
        if t[0] == "v":
            return Gen(t[1])
        if t[0] == "i":
            return IntLit(t[1])
        return Ctor(t[1], tuple(value(x) for x in t[2]))

    failures = 0
    for _ in range(100):
        n = rng.randint(1, 5)
        eqs = ctor_system(rng, n, rng.randint(1, 4))
        s, _ = solver(n)
        try:
            for u, v in eqs:
                s.union_prim(value(u), value(v))
            ok = True
        except TheoryInconsistency:
            ok = False
        mgu = unify_all(eqs)
        assert ok == (mgu is not None)
        failures += not ok
        if ok:
            for _ in range(10):
                u, v = random_ctor_term(rng, n, 2), random_ctor_term(rng, n, 2)
                assert s.eq(value(u), value(v)) == (resolve(u, mgu) == resolve(v, mgu))
    return f"100 systems match unification ({failures} clashes)"


# 8, 9 ------------------------------------------------------------------------------------------------


def random_match_instance(rng, max_nodes):
    bank, eqs = random_bank(rng, rng.randint(1, max_nodes), rng.randint(0, 6))
    pat = random_pattern(rng, rng.randint(1, 3))
    while pat[0] == "?":
        pat = random_pattern(rng, rng.randint(1, 3))
    g, terms = load_bank(bank, eqs)
    label = bank.closure(eqs)
    s = g.solvers["T"]
    to_label = {s.canon(g.add_term(t)): label[i] for i, t in enumerate(terms)}
    p = g.elaborate(pattern_term(pat), "T")
    return g, p, bank, label, pat, to_label


def criterion_8():
    rng = random.Random(8)
    total = 0
    for _ in range(500):
        g, p, bank, label, pat, to_label = random_match_instance(rng, 20)
        assert g.num_enodes() <= 20
        opt, naive = match_opt(g, p), match_naive(g, p)
        assert opt == naive
        mapped = {(tuple((k, to_label[v]) for k, v in m.subst), to_label[m.value]) for m in opt}
        assert mapped == brute_force_matches(bank, label, pat)
        total += len(opt)
    return f"500 e-graphs, {total} matches, identical sets"


def criterion_9():
    rng = random.Random(9)
    total = 0
    for _ in range(300):
        g, p, bank, label, pat, to_label = random_match_instance(rng, 15)
        mapped = {(tuple((k, to_label[v]) for k, v in m.subst), to_label[m.value]) for m in match_opt(g, p)}
        assert mapped == top_down_matches(bank, label, pat)
        total += len(mapped)
    return f"300 instances, {total} matches equal top-down"


# 10 -----------------------------------------------------------------------------------------------


def criterion_10():
    g = EGraph()
    g.declare_sort("T")
    for c in ("a", "b"):
        g.declare_func(c, [], "T")
    g.declare_func("foo", ["T", "T"], "T")
    g.declare_func("bar", ["T"], "T")
    g.declare_func("biz", ["T"], "T")
    g.add_term("(foo (bar a) b)")
    g.add_term("(foo (bar b) a)")
    rep = saturate(g, [Rule.parse(g, "(foo (bar ?x) ?y)", "(biz ?x)")])
    assert rep.saturated
    assert g.is_equal("(foo (bar a) b)", "(biz a)")
    m = EGraph()
    m.declare_sort("M", "multiset")
    for c in "abc":
        m.declare_func(c, [], "M")
    assert saturate(m, []).saturated
    assert m.is_equal("(mul (mul a b) c)", "(mul a (mul c b))")
    return f"saturated after {rep.iterations} rounds; AC equal with zero rules"


# 11 -------------------------------------------------------------------------------------------------


def criterion_11():
    t0 = time.perf_counter()
    deep = {}
    for E in (100, 1000, 10000):
        g, p = deep_termbank(E, 6)
        deep[E] = time_match(g, p, repeat=5)
    for lo, hi in ((100, 1000), (1000, 10000)):
        growth = deep[hi] / deep[lo]
        assert growth <= 2 * (hi / lo), f"deep E {lo}->{hi} grew {growth:.1f}x"
    wide = {}
    for v in (2, 3):
        g, p = wide_termbank(100, v)
        wide[v] = time_match(g, p, repeat=3)
    ratio = wide[3] / wide[2]
    assert 100 / 4 <= ratio <= 4 * 100, f"wide V2->V3 ratio {ratio:.1f}"
    total = time.perf_counter() - t0
    assert total < 60, total
    return (f"deep growth {deep[1000] / deep[100]:.1f}x, {deep[10000] / deep[1000]:.1f}x per decade; "
            f"wide V2->V3 {ratio:.0f}x at E=100; {total:.1f}s total")


# 12 --------------------------------------------------------------------------------------------------


def criterion_12():
    counts = []
    for theory in sorted(THEORIES):
        rng = random.Random(12)
        for _ in range(1000):
            s = create(theory)
            if theory == "primitive":
                s.declare_ctor("nil", 0)
                s.declare_ctor("cons", 2)
            run_sequence(s, SAMPLERS[theory], rng)
        counts.append(theory)
    return f"1000 sequences each: {', '.join(counts)}"


CRITERIA = [
    (1, "atomic golden rules", criterion_1),
    (2, "linear golden basis and canon", criterion_2),
    (3, "non-atomic linear vs dense elimination", criterion_3),
    (4, "Groebner golden and Buchberger criterion", criterion_4),
    (5, "multiset vs binomial ideal", criterion_5),
    (6, "offset golden and assignment oracle", criterion_6),
    (7, "primitive behaviors and unification oracle", criterion_7),
    (8, "match_opt = match_naive = brute force", criterion_8),
    (9, "bottom-up emulates top-down", criterion_9),
    (10, "saturation smoke and AC by theory", criterion_10),
    (11, "bench asymptotics", criterion_11),
    (12, "solver conformance", criterion_12),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_acceptance(number, title, fn):
    report(number, title, fn)


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        try:
            report(number, title, fn)
        except Exception:
            failed += 1
            traceback.print_exc(limit=2)
    sys.exit(1 if failed else 0)
