# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_kernel_py``: the hot multiplication-table loops.

Same entry points, same search order, same return conventions as the
pure-Python fallback; ``kernels.py`` selects whichever imports.
"""

from libc.stdlib cimport free, malloc


cdef int* _as_c_array(object seq, Py_ssize_t n) except NULL:
    cdef int* buf = <int*> malloc(n * sizeof(int))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = seq[i]
    return buf


def find_assoc_violation(table, size):
    """Return (a, b, c) with (ab)c != a(bc), or None."""
    cdef Py_ssize_t n = size
    cdef int* t = _as_c_array(table, n * n)
    cdef Py_ssize_t a, b, c
    cdef int ab
    try:
        for a in range(n):
            for b in range(n):
                ab = t[a * n + b]
                for c in range(n):
                    if t[ab * n + c] != t[a * n + t[b * n + c]]:
                        return (a, b, c)
        return None
    finally:
        free(t)


def find_zero(table, size):
    """Id of a two-sided zero element, or -1."""
    cdef Py_ssize_t n = size
    cdef int* t = _as_c_array(table, n * n)
    cdef Py_ssize_t z, x
    cdef bint ok
    try:
        for z in range(n):
            ok = True
            for x in range(n):
                if t[z * n + x] != z or t[x * n + z] != z:
                    ok = False
                    break
            if ok:
                return z
        return -1
    finally:
        free(t)


cdef struct _Search:
    int* table
    int size
    int one
    int zero
    int nletters
    int* lhs
    Py_ssize_t lhs_len
    int* rhs
    Py_ssize_t rhs_len
    int* assign


cdef inline int _prefix(_Search* s, int* word, Py_ssize_t wlen, bint* done):
    cdef int val = s.one
    cdef Py_ssize_t i
    cdef int img
    for i in range(wlen):
        img = s.assign[word[i]]
        if img < 0:
            done[0] = False
            return val
        val = s.table[val * s.size + img]
        if val == s.zero:
            done[0] = True
            return val
    done[0] = True
    return val


cdef long long _encode(_Search* s):
    cdef long long a = 0
    cdef int k
    for k in range(s.nletters - 1, -1, -1):
        a = a * s.size + (s.assign[k] if s.assign[k] >= 0 else 0)
    return a


cdef long long _rec(_Search* s, int k):
    cdef bint ldone, rdone
    cdef int lval, rval, v
    cdef long long res
    lval = _prefix(s, s.lhs, s.lhs_len, &ldone)
    rval = _prefix(s, s.rhs, s.rhs_len, &rdone)
    if ldone and rdone:
        return _encode(s) if lval != rval else -1
    for v in range(s.size):
        s.assign[k] = v
        res = _rec(s, k + 1)
        if res >= 0:
            return res
    s.assign[k] = -1
    return -1


def check_identity(table, size, one, lhs, rhs, nletters, zero):
    """-1 if the identity holds under every assignment, else an
    encoding of the first violating assignment found."""
    cdef _Search s
    cdef Py_ssize_t i
    cdef long long res
    s.size = size
    s.one = one
    s.zero = zero
    s.nletters = nletters
    s.table = _as_c_array(table, size * size)
    s.lhs_len = len(lhs)
    s.rhs_len = len(rhs)
    s.lhs = _as_c_array(lhs, s.lhs_len) if s.lhs_len else <int*> malloc(sizeof(int))
    s.rhs = _as_c_array(rhs, s.rhs_len) if s.rhs_len else <int*> malloc(sizeof(int))
    s.assign = <int*> malloc((nletters if nletters else 1) * sizeof(int))
    if s.assign == NULL or s.lhs == NULL or s.rhs == NULL:
        raise MemoryError()
    for i in range(nletters):
        s.assign[i] = -1
    try:
        res = _rec(&s, 0)
        return res
    finally:
        free(s.table)
        free(s.lhs)
        free(s.rhs)
        free(s.assign)
