"""Exact row reduction over a FieldSpec.

Matrices are lists of rows of field elements. Nothing here touches floats.
"""

from __future__ import annotations

from .field import FieldSpec


def row_reduce(rows, field: FieldSpec):
    """Reduced row echelon form.

    Returns ``(rref_rows, pivots)`` where ``rref_rows`` holds only the nonzero
    rows and ``pivots[i]`` is the pivot column of row ``i``.
    """
    norm = field.norm
    m = [[norm(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][col])
        m[r] = [norm(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field: FieldSpec) -> int:
    return len(row_reduce(rows, field)[1])


def nullspace(rows, ncols: int, field: FieldSpec):
    """Basis of ``{v : rows @ v = 0}`` as a list of vectors."""
    rref, pivots = row_reduce(rows, field) if rows else ([], [])
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(rref, pivots):
            v[pc] = field.norm(-row[f])
        basis.append(v)
    return basis
