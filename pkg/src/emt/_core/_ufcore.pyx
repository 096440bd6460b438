# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled union-find kernels; same API as ``emt._core._ufpy``."""
from cpython.mem cimport PyMem_Realloc, PyMem_Free


cdef extern from *:
    bint __builtin_add_overflow(long long a, long long b, long long* res) nogil
    bint __builtin_sub_overflow(long long a, long long b, long long* res) nogil


cdef inline long long _add(long long a, long long b) except? -1:
    cdef long long r
    if __builtin_add_overflow(a, b, &r):
        raise OverflowError("offset overflow")
    return r


cdef inline long long _sub(long long a, long long b) except? -1:
    cdef long long r
    if __builtin_sub_overflow(a, b, &r):
        raise OverflowError("offset overflow")
    return r


cdef class AtomicUF:
    cdef Py_ssize_t* parent
    cdef Py_ssize_t n
    cdef Py_ssize_t cap

    def __cinit__(self):
        self.parent = NULL
        self.n = 0
        self.cap = 0

    def __dealloc__(self):
        PyMem_Free(self.parent)

    def __len__(self):
        return self.n

    cdef int _grow(self) except -1:
        cdef Py_ssize_t newcap = self.cap * 2 if self.cap else 16
        cdef Py_ssize_t* mem = <Py_ssize_t*> PyMem_Realloc(self.parent, newcap * sizeof(Py_ssize_t))
        if mem == NULL:
            raise MemoryError()
        self.parent = mem
        self.cap = newcap
        return 0

    cpdef Py_ssize_t make_set(self) except -1:
        if self.n == self.cap:
            self._grow()
        self.parent[self.n] = self.n
        self.n += 1
        return self.n - 1

    cdef inline Py_ssize_t _find(self, Py_ssize_t i) nogil:
        cdef Py_ssize_t root = i, nxt
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            nxt = self.parent[i]
            self.parent[i] = root
            i = nxt
        return root

    cpdef Py_ssize_t find(self, Py_ssize_t i) except -1:
        if i < 0 or i >= self.n:
            raise IndexError(i)
        return self._find(i)

    def union(self, Py_ssize_t i, Py_ssize_t j):
        if i < 0 or i >= self.n:
            raise IndexError(i)
        if j < 0 or j >= self.n:
            raise IndexError(j)
        cdef Py_ssize_t ri = self._find(i), rj = self._find(j), t
        if ri == rj:
            return None
        if rj < ri:
            t = ri
            ri = rj
            rj = t
        self.parent[rj] = ri
        return (rj, ri)

    def parents(self):
        return [self.parent[k] for k in range(self.n)]


cdef class OffsetUF:
    cdef Py_ssize_t* parent
    cdef long long* edge
    cdef Py_ssize_t n
    cdef Py_ssize_t cap
    cdef public bint compress

    def __cinit__(self, bint compress=True):
        self.parent = NULL
        self.edge = NULL
        self.n = 0
        self.cap = 0
        self.compress = compress

    def __dealloc__(self):
        PyMem_Free(self.parent)
        PyMem_Free(self.edge)

    def __len__(self):
        return self.n

    cdef int _grow(self) except -1:
        cdef Py_ssize_t newcap = self.cap * 2 if self.cap else 16
        cdef Py_ssize_t* p = <Py_ssize_t*> PyMem_Realloc(self.parent, newcap * sizeof(Py_ssize_t))
        if p == NULL:
            raise MemoryError()
        self.parent = p
        cdef long long* e = <long long*> PyMem_Realloc(self.edge, newcap * sizeof(long long))
        if e == NULL:
            raise MemoryError()
        self.edge = e
        self.cap = newcap
        return 0

    cpdef Py_ssize_t make_set(self) except -1:
        if self.n == self.cap:
            self._grow()
        self.parent[self.n] = self.n
        self.edge[self.n] = 0
        self.n += 1
        return self.n - 1

    cdef Py_ssize_t _find(self, Py_ssize_t i, long long* shift) except -1:
        cdef Py_ssize_t root = i, node, nxt
        cdef long long total = 0, acc, e
        while self.parent[root] != root:
            total = _add(total, self.edge[root])
            root = self.parent[root]
        if self.compress:
            node = i
            acc = total
            while node != root:
                nxt = self.parent[node]
                e = self.edge[node]
                self.parent[node] = root
                self.edge[node] = acc
                acc -= e
                node = nxt
        shift[0] = total
        return root

    def find(self, Py_ssize_t i):
        if i < 0 or i >= self.n:
            raise IndexError(i)
        cdef long long k
        cdef Py_ssize_t r = self._find(i, &k)
        return (r, k)

    def union(self, Py_ssize_t gu, long long su, Py_ssize_t gv, long long sv):
        if gu < 0 or gu >= self.n:
            raise IndexError(gu)
        if gv < 0 or gv >= self.n:
            raise IndexError(gv)
        cdef long long ku, kv, du, dv, d
        cdef Py_ssize_t ru = self._find(gu, &ku)
        cdef Py_ssize_t rv = self._find(gv, &kv)
        du = _add(ku, su)
        dv = _add(kv, sv)
        if ru == rv:
            if du != dv:
                raise ValueError(f"offset clash: {du} != {dv}")
            return None
        if ru < rv:
            d = _sub(du, dv)
            self.parent[rv] = ru
            self.edge[rv] = d
            return (rv, ru, d)
        d = _sub(dv, du)
        self.parent[ru] = rv
        self.edge[ru] = d
        return (ru, rv, d)

    def parents(self):
        return [(self.parent[k], self.edge[k]) for k in range(self.n)]
