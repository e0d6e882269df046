"""Small exact linear algebra helpers over the rationals."""

from __future__ import annotations

from fractions import Fraction


def rref(rows: list) -> tuple:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    matrix = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(matrix[0]) if matrix else 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(matrix)) if matrix[i][c] != 0), None)
        if pivot_row is None:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        inv = 1 / matrix[r][c]
        matrix[r] = [x * inv for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][c] != 0:
                factor = matrix[i][c]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
        if r == len(matrix):
            break
    return matrix[:r], pivots


def rank(rows: list) -> int:
    return len(rref(rows)[0])


def kernel_basis(rows: list, ncols: int) -> list:
    """Basis of the right kernel of the matrix (rows of length ncols)."""
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def in_row_space(rows: list, vector: list) -> bool:
    """True when the vector is a linear combination of the rows."""
    if all(x == 0 for x in vector):
        return True
    if not rows:
        return False
    base_rank = rank(rows)
    return rank(rows + [vector]) == base_rank


def solve_linear(rows: list, rhs: list):
    """One solution x of (rows) x = rhs, or None when inconsistent.

    Free variables are set to zero.
    """
    if not rows:
        return None if any(b != 0 for b in rhs) else []
    ncols = len(rows[0])
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    solution = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        if p == ncols:
            return None  # pivot in the constant column: inconsistent
        solution[p] = row[-1]
    return solution


def reduce_against(rows: list, vector: list) -> list:
    """Reduce vector against the row space spanned by rref rows (in place copy)."""
    reduced, pivots = rref(rows) if rows else ([], [])
    vec = [Fraction(x) for x in vector]
    for row, p in zip(reduced, pivots):
        if vec[p] != 0:
            factor = vec[p]
            vec = [a - factor * b for a, b in zip(vec, row)]
    return vec
