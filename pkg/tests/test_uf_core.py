import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emt._core import BACKENDS, DEFAULT_BACKEND, get_backend


def test_default_backend_is_available():
    assert DEFAULT_BACKEND in BACKENDS
    assert get_backend("auto") is BACKENDS[DEFAULT_BACKEND]
    with pytest.raises(ValueError):
        get_backend("fortran")


def test_atomic_index_order(backend):
    uf = get_backend(backend).AtomicUF()
    for _ in range(6):
        uf.make_set()
    assert uf.union(1, 2) == (2, 1)
    assert uf.union(2, 3) == (3, 1)
    assert uf.union(2, 1) is None
    assert uf.union(5, 4) == (5, 4)
    assert [uf.find(i) for i in range(6)] == [0, 1, 1, 1, 4, 4]
    assert len(uf) == 6


def test_offset_labels(backend):
    uf = get_backend(backend).OffsetUF()
    x, y = uf.make_set(), uf.make_set()
    # x + 6 = y - 3
    assert uf.union(x, 6, y, -3) == (y, x, 9)
    assert uf.find(y) == (x, 9)
    assert uf.union(y, 0, x, 9) is None
    with pytest.raises(ValueError):
        uf.union(x, 0, x, 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 19), st.integers(0, 19)), max_size=40))
def test_atomic_backends_agree(pairs):
    ufs = [b.AtomicUF() for b in BACKENDS.values()]
    for uf in ufs:
        for _ in range(20):
            uf.make_set()
    for i, j in pairs:
        results = {uf.union(i, j) for uf in ufs}
        assert len(results) == 1
    assert len({tuple(uf.find(i) for i in range(20)) for uf in ufs}) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 9), st.integers(-5, 5), st.integers(0, 9), st.integers(-5, 5)), max_size=25))
def test_offset_backends_agree(rels):
    ufs = [b.OffsetUF(c) for b in BACKENDS.values() for c in (True, False)]
    for uf in ufs:
        for _ in range(10):
            uf.make_set()
    for r in rels:
        outcomes = set()
        for uf in ufs:
            try:
                outcomes.add(uf.union(*r))
            except ValueError:
                outcomes.add("clash")
        assert len(outcomes) == 1
    assert len({tuple(uf.find(i) for i in range(10)) for uf in ufs}) == 1


@pytest.mark.skipif("cython" not in BACKENDS, reason="extension not built")
def test_compiled_offsets_detect_overflow():
    uf = BACKENDS["cython"].OffsetUF()
    a, b = uf.make_set(), uf.make_set()
    uf.union(a, 0, b, 2**62)
    with pytest.raises(OverflowError):
        # find(b) = (a, -2**62); one more step below overflows a signed 64-bit label
        uf.union(b, -(2**62) - 1, a, 0)


def test_deep_chain_find_compresses(backend):
    uf = get_backend(backend).AtomicUF()
    n = 5000
    for _ in range(n):
        uf.make_set()
    for i in range(1, n):
        uf.union(i, i - 1)
    assert uf.find(n - 1) == 0
    assert all(p == 0 for p in uf.parents())
