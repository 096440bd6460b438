import random

from hypothesis import given, settings
from hypothesis import strategies as st

from emt.solvers import MultisetSolver, PolySolver
from emt.solvers.monomial import div, divides, grevlex_key, mul
from emt.solvers.multiset import MSet
from emt.solvers.poly import Poly

from oracles import multiset_closure


def solver(n):
    s = MultisetSolver()
    return s, [s.fresh() for _ in range(n)]


def test_golden_normal_form():
    s, (a, b) = solver(2)
    s.complete(a + a, b)
    assert s.normalize(a + a + a) == a + b
    # closure oracle agrees that aaa ~ ab and that ab is the only degree-2 member
    cl = multiset_closure((0, 0, 0), [((0, 0), (1,))], 4)
    assert (0, 1) in cl and {m for m in cl if len(m) == 2} == {(0, 1)}


def test_two_equations_chain():
    s, (a, b, c) = solver(3)
    s.complete(a + a, b)
    s.complete(a + b, c)
    assert s.eq(a + a + a, c)
    assert (2,) in multiset_closure((0, 0, 0), [((0, 0), (1,)), ((0, 1), (2,))], 3)


def test_trivial_cases():
    s, (a, b) = solver(2)
    empty = MSet()
    assert s.normalize(empty) == empty
    assert s.normalize(a + b) == a + b
    assert s.complete(a + b, b + a) == []
    assert s.rules == {}


def random_system(rng, n, k, deg=4):
    def rand_mset():
        return tuple(sorted(rng.randrange(n) for _ in range(rng.randint(1, deg))))
    return [(rand_mset(), rand_mset()) for _ in range(k)]


def mset(t):
    return MSet.of(*t)


def all_msets(n, deg):
    out = [()]
    frontier = [()]
    for _ in range(deg):
        frontier = sorted({tuple(sorted(m + (i,))) for m in frontier for i in range(n)})
        out += frontier
    return out


def test_rule_set_invariants():
    rng = random.Random(4)
    for _ in range(60):
        s, _ = solver(5)
        for l, r in random_system(rng, 5, rng.randint(1, 4)):
            s.complete(mset(l), mset(r))
        lhss = list(s.rules)
        for l, r in s.rules.items():
            assert grevlex_key(l) > grevlex_key(r)
            assert not any(divides(l2, l) for l2 in lhss if l2 != l)
            assert not any(divides(l2, r) for l2 in lhss)


def test_shuffled_orders_agree():
    rng = random.Random(8)
    probes = all_msets(3, 4)
    for _ in range(15):
        eqs = random_system(rng, 3, 3)
        seen = set()
        for _ in range(10):
            rng.shuffle(eqs)
            s, _ = solver(3)
            for l, r in eqs:
                s.complete(mset(l), mset(r))
            seen.add(tuple(s.normalize(mset(p)) for p in probes))
        assert len(seen) == 1


def test_sound_against_bounded_closure():
    rng = random.Random(9)
    for _ in range(30):
        eqs = random_system(rng, 3, 2, deg=3)
        s, _ = solver(3)
        for l, r in eqs:
            s.complete(mset(l), mset(r))
        for m in all_msets(3, 3):
            for other in multiset_closure(m, eqs, 5):
                assert s.eq(mset(m), mset(other))


def test_confluence_any_rule_choice():
    rng = random.Random(12)
    for _ in range(30):
        s, _ = solver(4)
        for l, r in random_system(rng, 4, 3):
            s.complete(mset(l), mset(r))
        rules = list(s.rules.items())
        for m in all_msets(4, 4)[:60]:
            cur = mset(m).items
            while True:
                hits = [(l, r) for l, r in rules if divides(l, cur)]
                if not hits:
                    break
                l, r = rng.choice(hits)
                cur = mul(div(cur, l), r)
            assert MSet._raw(cur) == s.normalize(mset(m))


def test_notifications_name_new_rules():
    s, (a, b, c) = solver(3)
    notes = s.complete(a + a, b)
    assert [(n.before, n.after) for n in notes] == [(a + a, b)]


def binomial_agreement(rng, n_systems):
    for _ in range(n_systems):
        n = rng.randint(1, 5)
        eqs = random_system(rng, n, rng.randint(1, 4))
        ms, _ = solver(n)
        ps = PolySolver()
        for _ in range(n):
            ps.fresh()
        for l, r in eqs:
            ms.complete(mset(l), mset(r))
            ps.buchberger(Poly({mset(l).items: 1}), Poly({mset(r).items: 1}))
        probes = all_msets(n, 3)
        for _ in range(30):
            u, v = mset(rng.choice(probes)), mset(rng.choice(probes))
            if rng.random() < 0.5:
                l, r = rng.choice(eqs)
                w = mset(rng.choice(probes))
                u, v = w + mset(l), w + mset(r)
            mu, mv = Poly({u.items: 1}), Poly({v.items: 1})
            if ms.eq(u, v) != ps.eq(mu, mv):
                return False
    return True


def test_agrees_with_binomial_ideal():
    assert binomial_agreement(random.Random(21), 30)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=4), st.lists(st.integers(0, 3), max_size=4),
       st.lists(st.integers(0, 3), max_size=4))
def test_ac_laws_observational(x, y, z):
    s, _ = solver(4)
    s.complete(MSet.of(0, 1), MSet.of(2))
    X, Y, Z = (s.normalize(MSet.of(*t)) for t in (x, y, z))
    def op(*a):
        return s.apply_op("mul", (), list(a))
    assert s.eq(op(X, Y), op(Y, X))
    assert s.eq(op(op(X, Y), Z), op(X, op(Y, Z)))
