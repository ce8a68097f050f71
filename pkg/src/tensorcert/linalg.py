"""Exact Gaussian elimination over a Field, on integer-code matrices."""

from __future__ import annotations

import numpy as np

from .fields import Field


def row_echelon(field: Field, mat) -> tuple[list[list[int]], int]:
    """Reduced row echelon form and rank. `mat` is a 2-d array of codes."""
    rows = [list(int(c) for c in r) for r in np.asarray(mat, dtype=np.int64)]
    if not rows:
        return rows, 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv_code(rows[r][c])
        rows[r] = [field.mul_code(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i == r or rows[i][c] == 0:
                continue
            factor = rows[i][c]
            rows[i] = [
                field.sub_code(x, field.mul_code(factor, y))
                for x, y in zip(rows[i], rows[r])
            ]
        r += 1
        if r == len(rows):
            break
    return rows, r


def matrix_rank(field: Field, mat) -> int:
    """Rank of a matrix of element codes over `field`."""
    m = np.asarray(mat, dtype=np.int64)
    if m.size == 0:
        return 0
    return row_echelon(field, m)[1]


def flattening_rank(codes: np.ndarray, field: Field) -> int:
    """Max over legs of the matrix rank of the leg-vs-rest flattening.

    This is the standard lower bound on tensor rank.
    """
    if codes.size == 0 or codes.ndim == 0:
        return 0
    best = 0
    for axis in range(codes.ndim):
        flat = np.moveaxis(codes, axis, 0).reshape(codes.shape[axis], -1)
        best = max(best, matrix_rank(field, flat))
    return best
