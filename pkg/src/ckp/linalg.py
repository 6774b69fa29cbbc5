"""Exact Gaussian elimination over any field of Python scalars.

Entries only need ``+ - * /`` and comparison with 0, so the same routines
serve ``Fraction`` matrices and Gaussian-rational matrices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

Matrix = list[list[Any]]


def rref(matrix: Sequence[Sequence[Any]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are chosen as the first nonzero entry scanning columns left to
    right, so the result depends only on the column order.
    """
    rows = [list(r) for r in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def exact_kernel(matrix: Sequence[Sequence[Any]], ncols: int | None = None) -> list[list[Any]]:
    """Basis of the right kernel, one vector per free column (in column order).

    >>> exact_kernel([[1, 1], [2, 2]])
    [[Fraction(-1, 1), Fraction(1, 1)]]
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    reduced, pivots = rref([[Fraction(x) if isinstance(x, int) else x for x in row] for row in matrix], ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec: list[Any] = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[free]
        basis.append(vec)
    return basis


def rank(matrix: Sequence[Sequence[Any]], ncols: int | None = None) -> int:
    if not matrix:
        return 0
    return len(rref(matrix, ncols)[1])
