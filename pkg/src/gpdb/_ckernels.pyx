# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled simplex kernels; same contract as ``gpdb._pykernels``."""


def pivot(list rows, Py_ssize_t r, Py_ssize_t c, object d):
    cdef list prow = <list>rows[r]
    cdef list row
    cdef object p = prow[c]
    cdef object f
    cdef Py_ssize_t i, j
    cdef Py_ssize_t ncols = len(prow)
    cdef Py_ssize_t nrows = len(rows)
    for i in range(nrows):
        if i == r:
            continue
        row = <list>rows[i]
        f = row[c]
        if f == 0:
            if p != d:
                for j in range(ncols):
                    row[j] = row[j] * p // d
        else:
            for j in range(ncols):
                row[j] = (row[j] * p - f * prow[j]) // d
    if p < 0:
        for i in range(nrows):
            row = <list>rows[i]
            for j in range(ncols):
                row[j] = -row[j]
        p = -p
    return p


def entering(list obj, Py_ssize_t ncols):
    cdef Py_ssize_t j
    for j in range(ncols):
        if obj[j] < 0:
            return j
    return -1


def leaving(list rows, Py_ssize_t m, Py_ssize_t c, list basis):
    cdef Py_ssize_t i
    cdef Py_ssize_t best = -1
    cdef object a, b, lhs, rhs
    cdef object best_a = 0
    cdef object best_b = 0
    cdef list row
    for i in range(m):
        row = <list>rows[i]
        a = row[c]
        if a > 0:
            b = row[len(row) - 1]
            if best < 0:
                best = i
                best_a = a
                best_b = b
                continue
            lhs = b * best_a
            rhs = best_b * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[best]):
                best = i
                best_a = a
                best_b = b
    return best
