"""
Exact linear algebra for amscheme
Gauss-Jordan elimination over any exact field type (Fraction, CyclotomicNumber)
"""
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

Matrix = List[List[Any]]


class SingularMatrixError(ArithmeticError):
    """Raised when an exact solve meets a singular system"""


def identity(size: int, one: Any = Fraction(1), zero: Any = Fraction(0)) -> Matrix:
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def copy_matrix(matrix: Sequence[Sequence[Any]]) -> Matrix:
    return [list(row) for row in matrix]


def mat_mul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError(f"Cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0]) if b else 0}")
    columns = len(b[0]) if b else 0
    result = []
    for row in a:
        out = []
        for j in range(columns):
            total: Any = 0
            for i, value in enumerate(row):
                if value and b[i][j]:
                    total = total + value * b[i][j]
            out.append(total)
        result.append(out)
    return result


def transpose(matrix: Sequence[Sequence[Any]]) -> Matrix:
    return [list(column) for column in zip(*matrix)]


def row_reduce(matrix: Sequence[Sequence[Any]],
               pivot_limit: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """
    Reduced row echelon form

    Args:
        matrix: Rows of exact field elements
        pivot_limit: Only columns below this index may hold pivots; the
            remaining columns are carried along as an augmented block

    Returns:
        Tuple of (reduced rows, pivot column list). Pivot rows come first in
        pivot order, the non-pivot rows follow.
    """
    rows = copy_matrix(matrix)
    if not rows:
        return rows, []
    width = len(rows[0])
    limit = width if pivot_limit is None else min(pivot_limit, width)
    pivots: List[int] = []
    pivot_row = 0
    for column in range(limit):
        if pivot_row == len(rows):
            break
        found = None
        for r in range(pivot_row, len(rows)):
            if rows[r][column]:
                found = r
                break
        if found is None:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        lead = rows[pivot_row][column]
        rows[pivot_row] = [value / lead if value else value for value in rows[pivot_row]]
        for r in range(len(rows)):
            if r == pivot_row:
                continue
            factor = rows[r][column]
            if not factor:
                continue
            rows[r] = [
                value - factor * p if p else value
                for value, p in zip(rows[r], rows[pivot_row])
            ]
        pivots.append(column)
        pivot_row += 1
    return rows, pivots


def rank(matrix: Sequence[Sequence[Any]]) -> int:
    return len(row_reduce(matrix)[1])


def solve(matrix: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> List[Any]:
    """
    Unique solution of a square system

    Raises:
        SingularMatrixError: If the system has no unique solution
    """
    size = len(matrix)
    if any(len(row) != size for row in matrix) or len(rhs) != size:
        raise ValueError("solve needs a square system with a matching right-hand side")
    augmented = [list(row) + [value] for row, value in zip(matrix, rhs)]
    reduced, pivots = row_reduce(augmented, pivot_limit=size)
    if len(pivots) < size:
        raise SingularMatrixError(f"Singular {size}x{size} system (rank {len(pivots)})")
    return [reduced[i][size] for i in range(size)]


def inverse(matrix: Sequence[Sequence[Any]], one: Any = Fraction(1), zero: Any = Fraction(0)) -> Matrix:
    """
    Exact inverse

    Raises:
        SingularMatrixError: If the matrix is not invertible
    """
    size = len(matrix)
    augmented = [list(row) + unit for row, unit in zip(matrix, identity(size, one, zero))]
    reduced, pivots = row_reduce(augmented, pivot_limit=size)
    if len(pivots) < size:
        raise SingularMatrixError(f"Matrix of size {size} is singular (rank {len(pivots)})")
    return [row[size:] for row in reduced]


def null_space(matrix: Sequence[Sequence[Any]], one: Any = Fraction(1),
               zero: Any = Fraction(0)) -> Matrix:
    """Basis of the right kernel, one vector per free column."""
    if not matrix:
        return []
    width = len(matrix[0])
    reduced, pivots = row_reduce(matrix)
    basis = []
    for free in (c for c in range(width) if c not in pivots):
        vector = [zero] * width
        vector[free] = one
        for row_index, column in enumerate(pivots):
            value = reduced[row_index][free]
            if value:
                vector[column] = -value
        basis.append(vector)
    return basis
