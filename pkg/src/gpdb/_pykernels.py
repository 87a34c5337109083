"""Pure-Python simplex kernels; reference behaviour for ``_ckernels``.

The tableau is a list of rows of Python ints that all share one positive
denominator ``d``: the real tableau is ``rows / d``.  Pivoting keeps every
entry integral (each is a minor of the original system), so the division
in :func:`pivot` is exact.
"""


def pivot(rows, r, c, d):
    """Pivot on ``rows[r][c]`` in place and return the new denominator."""
    prow = rows[r]
    p = prow[c]
    ncols = len(prow)
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f == 0:
            if p != d:
                for j in range(ncols):
                    row[j] = row[j] * p // d
        else:
            for j in range(ncols):
                row[j] = (row[j] * p - f * prow[j]) // d
    if p < 0:
        for row in rows:
            for j in range(ncols):
                row[j] = -row[j]
        p = -p
    return p


def entering(obj, ncols):
    """Bland's rule: first column with a negative reduced cost, else -1."""
    for j in range(ncols):
        if obj[j] < 0:
            return j
    return -1


def leaving(rows, m, c, basis):
    """Minimum-ratio row for entering column ``c``; ties go to the smallest basic index."""
    best = -1
    best_a = best_b = 0
    for i in range(m):
        a = rows[i][c]
        if a > 0:
            b = rows[i][-1]
            if best < 0:
                best, best_a, best_b = i, a, b
                continue
            lhs = b * best_a
            rhs = best_b * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[best]):
                best, best_a, best_b = i, a, b
    return best
