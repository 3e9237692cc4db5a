# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free elimination kernels.

Entries are arbitrary-precision Python ints; the speedup comes from typed
loop indices and direct list access, not from machine arithmetic.
"""


cdef tuple _find_pivot(list a, Py_ssize_t k, Py_ssize_t nrows, Py_ssize_t ncols):
    cdef Py_ssize_t i, j
    cdef list row
    for i in range(k, nrows):
        row = <list>a[i]
        for j in range(k, ncols):
            if row[j]:
                return i, j
    return -1, -1


cdef void _swap_cols(list a, Py_ssize_t c1, Py_ssize_t c2):
    cdef list row
    for row in a:
        row[c1], row[c2] = row[c2], row[c1]


def bareiss_det(rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t k, i, j, pi, pj
    cdef list a, rk, ri
    cdef object akk, aik, prev
    cdef int sign = 1
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    prev = 1
    for k in range(n - 1):
        pi, pj = _find_pivot(a, k, n, n)
        if pi < 0:
            return 0
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            sign = -sign
        if pj != k:
            _swap_cols(a, k, pj)
            sign = -sign
        rk = <list>a[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = <list>a[i]
            aik = ri[k]
            if aik:
                for j in range(k + 1, n):
                    ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (akk * ri[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * (<list>a[n - 1])[n - 1]


def bareiss_solve(rows, rhs):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t k, i, j, pi, pj
    cdef list a, rk, ri, perm, x
    cdef object akk, aik, prev
    if n == 0:
        return [], 1
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    perm = list(range(n))
    prev = 1
    for k in range(n):
        pi, pj = _find_pivot(a, k, n, n)
        if pi < 0:
            return None
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
        if pj != k:
            _swap_cols(a, k, pj)
            perm[k], perm[pj] = perm[pj], perm[k]
        rk = <list>a[k]
        akk = rk[k]
        for i in range(n):
            if i == k:
                continue
            ri = <list>a[i]
            aik = ri[k]
            for j in range(n + 1):
                if j != k:
                    ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    x = [0] * n
    for i in range(n):
        x[perm[i]] = (<list>a[i])[n]
    return x, prev


def bareiss_rank(rows):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols, k, i, j, pi, pj
    cdef list a, rk, ri
    cdef object akk, aik, prev
    cdef Py_ssize_t rank = 0
    if nrows == 0:
        return 0
    ncols = len(rows[0])
    a = [list(r) for r in rows]
    prev = 1
    for k in range(min(nrows, ncols)):
        pi, pj = _find_pivot(a, k, nrows, ncols)
        if pi < 0:
            break
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
        if pj != k:
            _swap_cols(a, k, pj)
        rk = <list>a[k]
        akk = rk[k]
        for i in range(k + 1, nrows):
            ri = <list>a[i]
            aik = ri[k]
            for j in range(k + 1, ncols):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
        rank += 1
    return rank
