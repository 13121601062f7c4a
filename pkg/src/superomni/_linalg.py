"""Dense exact row reduction over an arbitrary field.

Matrices are lists of rows; entries are field scalars supporting ``+ - * /``
and truthiness for the zero test.
"""

from __future__ import annotations


def rref(rows, ncols, zero):
    """Return ``(reduced_rows, pivots)``; zero rows are dropped."""
    m = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [v / lead for v in m[r]]
        row_r = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def nullspace(rows, ncols, zero, one):
    """Basis of ``{v : rows @ v = 0}`` as a list of tuples."""
    red, pivots = rref(rows, ncols, zero)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(red, pivots):
            if row[free]:
                v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


def rank(rows, ncols, zero):
    return len(rref(rows, ncols, zero)[1])


def inverse(matrix, zero, one):
    """Inverse of a square matrix; raises ValueError if singular."""
    n = len(matrix)
    aug = [list(row) + [one if i == j else zero for j in range(n)]
           for i, row in enumerate(matrix)]
    red, pivots = rref(aug, 2 * n, zero)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [tuple(row[n:]) for row in red]


def matmul(a, b, zero):
    """Product of dense matrices, skipping zero entries."""
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [zero] * ncols
        for t, c in enumerate(row):
            if c:
                for j, d in enumerate(b[t]):
                    if d:
                        acc[j] += c * d
        out.append(acc)
    return out
