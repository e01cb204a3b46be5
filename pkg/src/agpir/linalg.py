"""Dense exact linear algebra over F_p.

Matrices are sequences of rows of ints. All routines copy their input and
reduce mod p as they go; nothing here mutates caller data.
"""

from __future__ import annotations

from typing import Sequence

Matrix = Sequence[Sequence[int]]


def _copy(rows: Matrix, p: int) -> list[list[int]]:
    return [[v % p for v in row] for row in rows]


def rref(rows: Matrix, p: int) -> tuple[list[list[int]], tuple[int, ...]]:
    """Reduced row echelon form with leftmost pivoting; returns (R, pivot columns)."""
    m = _copy(rows, p)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        lead = m[r]
        for i in range(nrows):
            f = m[i][c]
            if i != r and f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], lead)]
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rank(rows: Matrix, p: int) -> int:
    return len(rref(rows, p)[1])


def rank_column_pivot(rows: Matrix, p: int) -> int:
    """Rank by elimination scanning columns right-to-left (independent check)."""
    m = _copy(rows, p)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols - 1, -1, -1):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        lead = m[r]
        for i in range(r + 1, nrows):
            f = m[i][c]
            if f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], lead)]
        r += 1
    return r


def nullspace(rows: Matrix, ncols: int, p: int) -> list[list[int]]:
    """Basis of the right nullspace {v : rows @ v = 0}, as a list of vectors."""
    reduced, pivots = rref(rows, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -reduced[i][f] % p
        basis.append(v)
    return basis


def invert(rows: Matrix, p: int) -> list[list[int]]:
    """Inverse of a square nonsingular matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    aug = [[v % p for v in row] + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    reduced, pivots = rref(aug, p)
    if list(pivots[:n]) != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced[:n]]


def mat_vec(rows: Matrix, vec: Sequence[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, vec)) % p for row in rows]


def transpose(rows: Matrix) -> list[list[int]]:
    return [list(col) for col in zip(*rows)] if rows else []


def columns(rows: Matrix, cols: Sequence[int]) -> list[list[int]]:
    return [[row[c] for c in cols] for row in rows]


def row_space_equal(a: Matrix, b: Matrix, p: int) -> bool:
    ra, rb = rank(a, p), rank(b, p)
    if ra != rb:
        return False
    return rank(list(a) + list(b), p) == ra
