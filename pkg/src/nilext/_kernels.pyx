# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer row-reduction kernels (see ``_kernels_py`` for the contract)."""
from math import gcd


cdef list _primitive(list row):
    cdef object g = 0
    cdef object a
    for a in row:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if g > 1:
        row = [a // g for a in row]
    return row


cdef list _combine(list row, list prow, object mp, object ma):
    cdef Py_ssize_t k, n = len(row)
    cdef list out = [None] * n
    cdef object x, y
    for k in range(n):
        x = row[k]
        y = prow[k]
        if y:
            out[k] = mp * x - ma * y
        elif x:
            out[k] = mp * x
        else:
            out[k] = 0
    return out


def rref_int(rows, Py_ssize_t ncols):
    cdef list work = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(work)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, p
    cdef object a, best, pv, g
    cdef list prow, row
    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        best = 0
        for i in range(r, nrows):
            a = (<list>work[i])[c]
            if a:
                if p < 0 or abs(a) < best:
                    p = i
                    best = abs(a)
                    if best == 1:
                        break
        if p < 0:
            continue
        if p != r:
            work[p], work[r] = work[r], work[p]
        prow = <list>work[r]
        if prow[c] < 0:
            prow = [-a for a in prow]
        prow = _primitive(prow)
        work[r] = prow
        pv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>work[i]
            a = row[c]
            if not a:
                continue
            g = gcd(pv, a)
            work[i] = _primitive(_combine(row, prow, pv // g, a // g))
        pivots.append(c)
        r += 1
    return work[:r], pivots


def reduce_int(basis, pivots, vec):
    cdef list v = list(vec)
    cdef list row
    cdef Py_ssize_t k, c, n = len(pivots)
    cdef object a, pv, g
    for k in range(n):
        row = <list>basis[k]
        c = pivots[k]
        a = v[c]
        if not a:
            continue
        pv = row[c]
        g = gcd(pv, a)
        v = _combine(v, row, pv // g, a // g)
    return _primitive(v)


def insert_int(list basis, list pivots, vec):
    cdef list v = reduce_int(basis, pivots, vec)
    cdef Py_ssize_t k, i, pos, n = len(v), c = -1
    cdef object a, pv, g
    cdef list row
    for k in range(n):
        if v[k]:
            c = k
            break
    if c < 0:
        return -1
    if v[c] < 0:
        v = [-a for a in v]
    pv = v[c]
    for i in range(len(basis)):
        row = <list>basis[i]
        a = row[c]
        if not a:
            continue
        g = gcd(pv, a)
        basis[i] = _primitive(_combine(row, v, pv // g, a // g))
    pos = 0
    while pos < len(pivots) and <Py_ssize_t>pivots[pos] < c:
        pos += 1
    basis.insert(pos, v)
    pivots.insert(pos, c)
    return c
