"""Pure-Python fraction-free elimination kernels.

Same contract as the compiled ``_kernels`` extension; used when the extension
is not built or when ``MOPRS_PURE_PYTHON`` is set.  All matrices are lists of
rows of Python ints and are never modified in place.
"""


def _find_pivot(a, k, nrows, ncols):
    # row-major scan of the trailing block: first row, then first column
    for i in range(k, nrows):
        row = a[i]
        for j in range(k, ncols):
            if row[j]:
                return i, j
    return -1, -1


def bareiss_det(rows):
    """Determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        pi, pj = _find_pivot(a, k, n, n)
        if pi < 0:
            return 0
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            sign = -sign
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def bareiss_solve(rows, rhs):
    """Solve ``A x = b`` for square integer ``A``.

    Returns ``(numerators, denominator)`` with ``x[i] = numerators[i] / denominator``
    and ``denominator = ±det(A)``, or ``None`` when ``A`` is singular.
    Fraction-free Gauss-Jordan with full pivoting.
    """
    n = len(rows)
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
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            perm[k], perm[pj] = perm[pj], perm[k]
        akk = a[k][k]
        rk = a[k]
        for i in range(n):
            if i == k:
                continue
            ri = a[i]
            aik = ri[k]
            for j in range(n + 1):
                if j != k:
                    ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    x = [0] * n
    for i in range(n):
        x[perm[i]] = a[i][n]
    return x, prev


def bareiss_rank(rows):
    """Rank of a rectangular integer matrix."""
    nrows = len(rows)
    if nrows == 0:
        return 0
    ncols = len(rows[0])
    a = [list(r) for r in rows]
    prev = 1
    rank = 0
    for k in range(min(nrows, ncols)):
        pi, pj = _find_pivot(a, k, nrows, ncols)
        if pi < 0:
            break
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, nrows):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, ncols):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
        rank += 1
    return rank
