"""Pure-Python integer row-reduction kernels.

These mirror ``_kernels.pyx`` line for line and are used whenever the
compiled module is unavailable (or ``NILEXT_PURE=1`` is set).

Rows are lists of Python ints.  The reduced form is *fraction free*: every
row is primitive (gcd of entries is 1), its pivot is positive, and every
other row has a zero in that pivot column.  Dividing each row by its pivot
gives the usual reduced row echelon form over Q.
"""
from math import gcd


def _primitive(row):
    g = 0
    for a in row:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if g > 1:
        row = [a // g for a in row]
    return row


def rref_int(rows, ncols):
    """Fraction-free reduced row echelon form of integer ``rows``.

    Returns ``(reduced_rows, pivots)`` with zero rows dropped and rows sorted
    by pivot column.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        best = 0
        for i in range(r, nrows):
            a = work[i][c]
            if a:
                # smallest magnitude pivot keeps the intermediate entries small
                if p < 0 or abs(a) < best:
                    p = i
                    best = abs(a)
                    if best == 1:
                        break
        if p < 0:
            continue
        if p != r:
            work[p], work[r] = work[r], work[p]
        prow = work[r]
        if prow[c] < 0:
            prow = [-a for a in prow]
        prow = _primitive(prow)
        work[r] = prow
        pv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = work[i]
            a = row[c]
            if not a:
                continue
            g = gcd(pv, a)
            mp = pv // g
            ma = a // g
            work[i] = _primitive([mp * x - ma * y for x, y in zip(row, prow)])
        pivots.append(c)
        r += 1
    return work[:r], pivots


def reduce_int(basis, pivots, vec):
    """Residual of integer ``vec`` against a fraction-free reduced basis.

    The residual is a positive multiple of ``vec - proj``; it is the zero
    vector iff ``vec`` lies in the row space of ``basis``.
    """
    v = list(vec)
    for row, c in zip(basis, pivots):
        a = v[c]
        if not a:
            continue
        pv = row[c]
        g = gcd(pv, a)
        mp = pv // g
        ma = a // g
        v = [mp * x - ma * y for x, y in zip(v, row)]
    return _primitive(v)


def insert_int(basis, pivots, vec):
    """Add integer ``vec`` to a fraction-free reduced basis, in place.

    Returns the new pivot column, or -1 when ``vec`` is already in the row
    space.  ``basis`` and ``pivots`` stay sorted by pivot and fully reduced.
    """
    v = reduce_int(basis, pivots, vec)
    c = -1
    for k, a in enumerate(v):
        if a:
            c = k
            break
    if c < 0:
        return -1
    if v[c] < 0:
        v = [-a for a in v]
    pv = v[c]
    for i, row in enumerate(basis):
        a = row[c]
        if not a:
            continue
        g = gcd(pv, a)
        mp = pv // g
        ma = a // g
        basis[i] = _primitive([mp * x - ma * y for x, y in zip(row, v)])
    pos = 0
    while pos < len(pivots) and pivots[pos] < c:
        pos += 1
    basis.insert(pos, v)
    pivots.insert(pos, c)
    return c
