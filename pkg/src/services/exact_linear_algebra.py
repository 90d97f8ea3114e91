"""
Exact linear algebra over the rationals.

Gauss-Jordan elimination on Fraction rows, nullspaces with a fixed
normalization, and affine solution families. Elimination skips zero
entries of the pivot row, which keeps the sparse derivation systems fast.
"""

import logging
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from ..models.matrix import Inconsistent, QMatrix, SolutionFamily, Vector, as_vector, dot
from ..models.rational import RationalLike


logger = logging.getLogger(__name__)


class DimensionMismatchError(Exception):
    """Custom exception for incompatible matrix and vector shapes."""

    pass


class SingularMatrixError(Exception):
    """Custom exception for inverting a singular matrix."""

    pass


def _reduce_rows(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    rows = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        if pivot != 1:
            rows[r] = [v / pivot for v in rows[r]]
        prow = rows[r]
        support = [j for j in range(c, len(prow)) if prow[j] != 0]
        for i, row in enumerate(rows):
            if i == r:
                continue
            factor = row[c]
            if factor != 0:
                for j in support:
                    row[j] -= factor * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(matrix: QMatrix) -> Tuple[QMatrix, Tuple[int, ...]]:
    """
    Reduced row echelon form.

    Args:
        matrix: Input matrix

    Returns:
        Tuple of the reduced matrix and its pivot columns in increasing order
    """
    rows, pivots = _reduce_rows(matrix.to_rows(), matrix.cols)
    return QMatrix.from_rows(rows, cols=matrix.cols), tuple(pivots)


def rank(matrix: QMatrix) -> int:
    return len(rref(matrix)[1])


def _nullspace_from_reduced(rows: List[List[Fraction]], pivots: Sequence[int], ncols: int) -> List[Vector]:
    pivot_set = set(pivots)
    basis: List[Vector] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for r, p in enumerate(pivots):
            vector[p] = -rows[r][free]
        lead = next(v for v in vector if v != 0)
        basis.append(tuple(v / lead for v in vector))
    return basis


def nullspace(matrix: QMatrix) -> List[Vector]:
    """
    Basis of {v : Mv = 0}.

    One vector per free column, free columns in increasing order, each
    scaled so its first nonzero coordinate is 1. Empty for injective M.
    """
    rows, pivots = _reduce_rows(matrix.to_rows(), matrix.cols)
    return _nullspace_from_reduced(rows, pivots, matrix.cols)


def solve_affine(a: QMatrix, b: Sequence[RationalLike]) -> Union[SolutionFamily, Inconsistent]:
    """
    Solve A·v = b exactly.

    Args:
        a: Coefficient matrix
        b: Right-hand side, one entry per row of ``a``

    Returns:
        SolutionFamily describing every solution, or Inconsistent with a
        left null vector y of A such that yᵗb ≠ 0

    Raises:
        DimensionMismatchError: If ``b`` does not have one entry per row
    """
    rhs = as_vector(b)
    if len(rhs) != a.rows:
        raise DimensionMismatchError(
            f"Right-hand side has length {len(rhs)}, matrix has {a.rows} rows"
        )

    augmented = [row + [value] for row, value in zip(a.to_rows(), rhs)]
    rows, pivots = _reduce_rows(augmented, a.cols + 1)

    if pivots and pivots[-1] == a.cols:
        for y in nullspace(a.transpose()):
            value = dot(y, rhs)
            if value != 0:
                logger.debug(f"Inconsistent system: yᵗb = {value}")
                return Inconsistent(multipliers=list(y), value=value)
        raise AssertionError("Inconsistent system without a separating left null vector")

    particular = [Fraction(0)] * a.cols
    for r, p in enumerate(pivots):
        particular[p] = rows[r][a.cols]
    basis = _nullspace_from_reduced([row[:a.cols] for row in rows], pivots, a.cols)

    return SolutionFamily(
        dim=a.cols,
        particular=particular,
        basis=[list(v) for v in basis],
        param_names=[f"t{i + 1}" for i in range(len(basis))],
    )


def determinant(matrix: QMatrix) -> Fraction:
    """Exact determinant."""
    if not matrix.is_square:
        raise DimensionMismatchError(f"Determinant of non-square {matrix.rows}x{matrix.cols} matrix")
    return matrix.determinant()


def inverse(matrix: QMatrix) -> QMatrix:
    """
    Exact inverse.

    Raises:
        SingularMatrixError: If the matrix is not invertible
    """
    if not matrix.is_square:
        raise DimensionMismatchError(f"Inverse of non-square {matrix.rows}x{matrix.cols} matrix")
    n = matrix.rows
    augmented = [
        row + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix.to_rows())
    ]
    rows, pivots = _reduce_rows(augmented, n)
    if len(pivots) < n:
        raise SingularMatrixError(f"Matrix of rank {len(pivots)} < {n} is singular")
    return QMatrix.from_rows([row[n:] for row in rows])


def span_basis(vectors: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """
    Reduced echelon basis of the span of ``vectors``.

    Returns:
        Tuple of the nonzero reduced rows and their pivot columns
    """
    rows, pivots = _reduce_rows([[Fraction(x) for x in v] for v in vectors], ncols)
    return [tuple(rows[r]) for r in range(len(pivots))], tuple(pivots)
