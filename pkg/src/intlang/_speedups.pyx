# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled trace kernels; same contract as ``intlang._pykernels``."""

cdef int STRICT = 0
cdef int WEAK = 1
cdef int INTERLEAVE = 2


cdef list _suffix_lifelines(tuple t1):
    cdef Py_ssize_t n = len(t1)
    cdef Py_ssize_t k
    cdef list out = [frozenset()] * (n + 1)
    cdef set acc = set()
    for k in range(n - 1, -1, -1):
        acc.add((<tuple>t1[k])[0])
        out[k] = frozenset(acc)
    return out


cdef class _Merger:
    cdef tuple t1
    cdef tuple t2
    cdef Py_ssize_t n1, n2
    cdef bint weak
    cdef list blocked
    cdef dict memo

    def __init__(self, tuple t1, tuple t2, bint weak):
        self.t1 = t1
        self.t2 = t2
        self.n1 = len(t1)
        self.n2 = len(t2)
        self.weak = weak
        self.blocked = _suffix_lifelines(t1) if weak else None
        self.memo = {}

    cdef list rec(self, Py_ssize_t i, Py_ssize_t j):
        cdef list res, sub
        cdef object a, b, u
        cdef Py_ssize_t key
        if i == self.n1:
            return [self.t2[j:]]
        if j == self.n2:
            return [self.t1[i:]]
        key = i * (self.n2 + 1) + j
        got = self.memo.get(key)
        if got is not None:
            return <list>got
        a = self.t1[i]
        sub = self.rec(i + 1, j)
        res = [(a,) + <tuple>u for u in sub]
        b = self.t2[j]
        if not self.weak or (<tuple>b)[0] not in <frozenset>self.blocked[i]:
            sub = self.rec(i, j + 1)
            for u in sub:
                res.append((b,) + <tuple>u)
        self.memo[key] = res
        return res


cdef list _merge(tuple t1, tuple t2, bint weak):
    if len(t1) == 0:
        return [t2]
    if len(t2) == 0:
        return [t1]
    return _Merger(t1, t2, weak).rec(0, 0)


def interleave(tuple t1, tuple t2):
    return set(_merge(t1, t2, False))


def weak_seq(tuple t1, tuple t2):
    return set(_merge(t1, t2, True))


def combine(int op, tuple t1, tuple t2):
    if op == STRICT:
        return {t1 + t2}
    return set(_merge(t1, t2, op == WEAK))


def lift(int op, left, right, Py_ssize_t max_len=-1):
    cdef set out = set()
    cdef tuple t1, t2
    cdef Py_ssize_t n1
    cdef bint weak = op == WEAK
    for t1 in left:
        n1 = len(t1)
        for t2 in right:
            if max_len >= 0 and n1 + len(t2) > max_len:
                continue
            if op == STRICT:
                out.add(t1 + t2)
            else:
                out.update(_merge(t1, t2, weak))
    return out


def lift_restricted(int op, left, right, Py_ssize_t max_len=-1):
    cdef set out = set()
    cdef tuple t1, t2, tail, u
    cdef tuple head
    cdef Py_ssize_t n1
    cdef bint weak = op == WEAK
    for t1 in left:
        n1 = len(t1)
        if n1 == 0:
            if () in right:
                out.add(())
            continue
        head = (t1[0],)
        tail = t1[1:]
        for t2 in right:
            if max_len >= 0 and n1 + len(t2) > max_len:
                continue
            if op == STRICT:
                out.add(t1 + t2)
            else:
                for u in _merge(tail, t2, weak):
                    out.add(head + u)
    return out
