"""Exact dense linear algebra over field-like coefficients.

Works with any entries supporting +, -, *, /, bool (Fraction and Cyclotomic
mix freely).  Matrices are lists of row lists; nothing here mutates its
arguments.
"""

from __future__ import annotations


def _echelon(rows: list[list]) -> tuple[list[list], list[int]]:
    """Row echelon form with normalized pivots; returns (rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    row = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot_row = None
        for r in range(row, len(mat)):
            if mat[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        inv = mat[row][col]
        mat[row] = [x / inv for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return mat, pivots


def rank(rows: list[list]) -> int:
    if not rows:
        return 0
    return len(_echelon(rows)[1])


def solve_combination(vectors: list, target) -> list | None:
    """Coefficients c with sum(c_i * vectors[i]) == target, or None.

    Vectors and target are equal-length sequences.  Free variables are set
    to zero, so the answer is deterministic.
    """
    n = len(target)
    k = len(vectors)
    if k == 0:
        return [] if not any(target) else None
    zero = target[0] - target[0] if n else 0
    aug = [[vectors[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    mat, pivots = _echelon(aug)
    if k in pivots:
        return None
    combo = [zero] * k
    for r, col in enumerate(pivots):
        combo[col] = mat[r][k]
    return combo


def in_span(vectors: list, target) -> bool:
    return solve_combination(vectors, target) is not None
