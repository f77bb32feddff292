"""Small dense linear algebra over the scalar backends.

Row operations use the scalar operators directly, so one routine serves the
rational, quadratic, and float fields.  Exact fields pivot on any nonzero
entry; the float field pivots on the largest magnitude with a fixed
tolerance.
"""

from __future__ import annotations

from .scalar import Field, Scalar, sign_of

FLOAT_PIVOT_TOL = 1e-9


def _is_pivot(x: Scalar, field: Field, scale: float = 1.0) -> bool:
    if field.is_exact:
        return sign_of(x) != 0
    return abs(x) > FLOAT_PIVOT_TOL * max(scale, 1.0)


def rank(rows, field: Field) -> int:
    """Rank of a list of equal-length scalar vectors."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        pivot_row = None
        if field.is_exact:
            for i in range(r, len(work)):
                if sign_of(work[i][col]) != 0:
                    pivot_row = i
                    break
        else:
            best = FLOAT_PIVOT_TOL
            for i in range(r, len(work)):
                if abs(work[i][col]) > best:
                    best = abs(work[i][col])
                    pivot_row = i
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pivot = work[r][col]
        for i in range(r + 1, len(work)):
            factor = work[i][col] / pivot
            if field.is_exact and sign_of(factor) == 0:
                continue
            for j in range(col, ncols):
                work[i][j] = work[i][j] - factor * work[r][j]
        r += 1
        if r == len(work):
            break
    return r


def solve_square(matrix, rhs, field: Field):
    """Solve an n-by-n system; returns None when the matrix is singular."""
    n = len(matrix)
    work = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = None
        if field.is_exact:
            for i in range(col, n):
                if sign_of(work[i][col]) != 0:
                    pivot_row = i
                    break
        else:
            best = FLOAT_PIVOT_TOL
            for i in range(col, n):
                if abs(work[i][col]) > best:
                    best = abs(work[i][col])
                    pivot_row = i
        if pivot_row is None:
            return None
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        for i in range(n):
            if i == col:
                continue
            factor = work[i][col] / pivot
            if field.is_exact and sign_of(factor) == 0:
                continue
            for j in range(col, n + 1):
                work[i][j] = work[i][j] - factor * work[col][j]
    return tuple(work[i][n] / work[i][i] for i in range(n))


def invert(matrix, field: Field):
    """Inverse of an n-by-n scalar matrix; None when singular."""
    n = len(matrix)
    one, zero = field.one, field.zero
    work = [
        list(row) + [one if i == j else zero for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot_row = None
        if field.is_exact:
            for i in range(col, n):
                if sign_of(work[i][col]) != 0:
                    pivot_row = i
                    break
        else:
            best = FLOAT_PIVOT_TOL
            for i in range(col, n):
                if abs(work[i][col]) > best:
                    best = abs(work[i][col])
                    pivot_row = i
        if pivot_row is None:
            return None
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        work[col] = [x / pivot for x in work[col]]
        for i in range(n):
            if i == col:
                continue
            factor = work[i][col]
            if field.is_exact and sign_of(factor) == 0:
                continue
            work[i] = [x - factor * y for x, y in zip(work[i], work[col])]
    return [tuple(row[n:]) for row in work]
