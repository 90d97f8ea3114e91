"""
Structure computations on Lie algebras given by structure constants.

Jacobi residuals work on parametric algebras. Everything else needs a
grounded algebra, because ranks and central series change at special
parameter values (a_t at t = -1 loses two brackets, for example).
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..models.lie_algebra import BaseChange, JacobiResidual, LieAlgebra, LieAlgebraError
from ..models.matrix import QMatrix, Vector, as_vector
from ..models.polynomial import PolyQ
from ..models.rational import RationalLike
from .exact_linear_algebra import DimensionMismatchError, inverse, rank, span_basis


logger = logging.getLogger(__name__)


class UngroundedAlgebraError(Exception):
    """Custom exception for operations that need numeric structure constants."""

    pass


class NonNilpotentError(Exception):
    """Custom exception for an algebra whose central series does not reach zero."""

    pass


class QuotientIndexError(Exception):
    """Custom exception for a central series index outside the series."""

    pass


SparseTable = Dict[Tuple[int, int], Dict[int, Fraction]]


def _grounded_constants(alg: LieAlgebra, operation: str) -> SparseTable:
    if not alg.is_grounded:
        raise UngroundedAlgebraError(
            f"{operation} needs a grounded algebra; '{alg.name}' has parameters {list(alg.params)}"
        )
    return alg.constants()


def _full_table(table: Mapping[Tuple[int, int], Mapping[int, object]]) -> Dict[Tuple[int, int], Dict[int, object]]:
    """Both orientations of every stored bracket."""
    full: Dict[Tuple[int, int], Dict[int, object]] = {}
    for (i, j), row in table.items():
        full[(i, j)] = dict(row)
        full[(j, i)] = {k: -c for k, c in row.items()}
    return full


def jacobi_residuals(alg: LieAlgebra) -> List[JacobiResidual]:
    """
    Nonzero components of the Jacobi expression on every basis triple.

    For i < j < k the residual is the coefficient of e_m in
    [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]. Parametric
    coefficients give polynomial residuals; an empty list means the
    identity holds for every value of the parameters.
    """
    if alg.is_grounded:
        zero: object = Fraction(0)
        full = _full_table(alg.constants())
    else:
        zero = PolyQ()
        full = _full_table(alg.brackets)

    residuals: List[JacobiResidual] = []
    n = alg.dim
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                totals: Dict[int, object] = {}
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    for inner, c_inner in full.get((y, z), {}).items():
                        for m, c_outer in full.get((x, inner), {}).items():
                            totals[m] = totals.get(m, zero) + c_inner * c_outer
                for m in sorted(totals):
                    value = totals[m]
                    if value:
                        poly = value if isinstance(value, PolyQ) else PolyQ.constant(value)
                        residuals.append(JacobiResidual(triple=(i, j, k), component=m, value=poly))

    if residuals:
        logger.debug(f"Jacobi fails for '{alg.name}' on {len(residuals)} component(s)")
    return residuals


def bracket_vectors(alg: LieAlgebra, x: Sequence[RationalLike], y: Sequence[RationalLike]) -> Vector:
    """[x, y] for coordinate vectors x and y of a grounded algebra."""
    table = _grounded_constants(alg, "bracket_vectors")
    u, v = as_vector(x), as_vector(y)
    if len(u) != alg.dim or len(v) != alg.dim:
        raise DimensionMismatchError(f"Vectors of length {len(u)}, {len(v)} for dimension {alg.dim}")
    return _bracket(table, alg.dim, u, v)


def _bracket(table: SparseTable, n: int, u: Vector, v: Vector) -> Vector:
    out = [Fraction(0)] * n
    for (i, j), row in table.items():
        coefficient = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1]
        if coefficient:
            for k, c in row.items():
                out[k - 1] += coefficient * c
    return tuple(out)


def _unit(n: int, index: int) -> Vector:
    return tuple(Fraction(int(i == index)) for i in range(n))


def ad(alg: LieAlgebra, x: Sequence[RationalLike]) -> QMatrix:
    """
    Matrix of y ↦ [x, y].

    Args:
        alg: Grounded algebra
        x: Coordinates of x in the basis e_1..e_n

    Returns:
        QMatrix: n × n matrix whose column b holds [x, e_b]

    Raises:
        UngroundedAlgebraError: If the algebra still has parameters
    """
    table = _grounded_constants(alg, "ad")
    n = alg.dim
    u = as_vector(x)
    if len(u) != n:
        raise DimensionMismatchError(f"Vector of length {len(u)} for dimension {n}")
    columns = [_bracket(table, n, u, _unit(n, b)) for b in range(n)]
    return QMatrix.from_columns(columns, rows=n)


def _central_series(alg: LieAlgebra) -> List[Tuple[List[Vector], Tuple[int, ...]]]:
    table = _grounded_constants(alg, "descending_central_series")
    n = alg.dim
    current, pivots = span_basis([_unit(n, a) for a in range(n)], n)
    series = [(current, pivots)]
    for _ in range(n + 1):
        if not current:
            return series
        images = [_bracket(table, n, _unit(n, a), v) for a in range(n) for v in current]
        following, pivots = span_basis(images, n)
        if len(following) == len(current):
            raise NonNilpotentError(
                f"Central series of '{alg.name}' stabilizes at dimension {len(current)}"
            )
        current = following
        series.append((current, pivots))
    raise NonNilpotentError(f"Central series of '{alg.name}' does not reach 0 within {n} steps")


def descending_central_series(alg: LieAlgebra) -> Tuple[int, ...]:
    """
    Dimensions of C_0 ⊇ C_1 ⊇ … ⊇ 0 with C_{i+1} = [𝔫, C_i].

    Raises:
        UngroundedAlgebraError: If the algebra still has parameters
        NonNilpotentError: If the series stalls above zero
    """
    return tuple(len(basis) for basis, _ in _central_series(alg))


def is_filiform(alg: LieAlgebra) -> bool:
    """True iff the algebra is (n-1)-step nilpotent."""
    dims = descending_central_series(alg)
    return len(dims) - 1 == alg.dim - 1


def act(g: BaseChange, alg: LieAlgebra) -> LieAlgebra:
    """
    Structure constants of g.μ(X, Y) = g μ(g⁻¹X, g⁻¹Y).

    Works on parametric algebras too, since the map is linear in the
    structure constants.

    Raises:
        LieAlgebraError: If g and the algebra have different dimensions
    """
    n = alg.dim
    if g.dim != n:
        raise LieAlgebraError(f"Base change of size {g.dim} for algebra of dimension {n}")

    h = inverse(g.matrix)
    columns = [h.column(i) for i in range(n)]
    table: Dict[Tuple[int, int], Dict[int, PolyQ]] = {}

    for i in range(n):
        for j in range(i + 1, n):
            u, v = columns[i], columns[j]
            image: Dict[int, PolyQ] = {}
            for (a, b), row in alg.brackets.items():
                coefficient = u[a - 1] * v[b - 1] - u[b - 1] * v[a - 1]
                if coefficient:
                    for k, c in row.items():
                        image[k] = image.get(k, PolyQ()) + c * coefficient

            transformed: Dict[int, PolyQ] = {}
            for k, value in image.items():
                for m in range(n):
                    entry = g.matrix[m, k - 1]
                    if entry:
                        transformed[m + 1] = transformed.get(m + 1, PolyQ()) + value * entry
            if transformed:
                table[(i + 1, j + 1)] = transformed

    return LieAlgebra(dim=n, name=alg.name, params=alg.params, brackets=table)


def quotient(alg: LieAlgebra, j: int) -> LieAlgebra:
    """
    The quotient 𝔫/C_j in the basis of classes of e_i outside C_j.

    The basis of C_j is put in reduced echelon form; its pivot
    coordinates are dropped and the remaining basis vectors, in
    increasing order, give the quotient basis.

    Raises:
        QuotientIndexError: If j is not in 0..length of the series
    """
    series = _central_series(alg)
    if not 0 <= j < len(series):
        raise QuotientIndexError(
            f"Index {j} outside 0..{len(series) - 1} for the central series of '{alg.name}'"
        )

    n = alg.dim
    rows, pivots = series[j]
    kept = [c for c in range(n) if c not in set(pivots)]
    table = alg.constants()

    def reduce(vector: Vector) -> Vector:
        values = list(vector)
        for row, p in zip(rows, pivots):
            factor = values[p]
            if factor:
                values = [a - factor * b for a, b in zip(values, row)]
        return tuple(values)

    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for s, a in enumerate(kept):
        for t in range(s + 1, len(kept)):
            b = kept[t]
            image = reduce(_bracket(table, n, _unit(n, a), _unit(n, b)))
            row = {q + 1: image[c] for q, c in enumerate(kept) if image[c] != 0}
            if row:
                brackets[(s + 1, t + 1)] = row

    return LieAlgebra(dim=len(kept), name=f"{alg.name}/C{j}", brackets=brackets)


def default_samples(dim: int, random_samples: int = 20, seed: int = 8) -> List[Vector]:
    """
    Deterministic sample set: basis vectors, pairwise sums e_i + e_j, and
    ``random_samples`` small-integer vectors with entries in -2..2.
    """
    samples: List[Vector] = [_unit(dim, i) for i in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            samples.append(tuple(Fraction(int(k == i or k == j)) for k in range(dim)))
    rng = np.random.default_rng(seed)
    for _ in range(random_samples):
        samples.append(tuple(Fraction(int(v)) for v in rng.integers(-2, 3, size=dim)))
    return samples


def rank_profile(
    alg: LieAlgebra,
    j: int,
    samples: Optional[Iterable[Sequence[RationalLike]]] = None,
    random_samples: int = 20,
    seed: int = 8,
) -> Dict[int, int]:
    """
    Tally of rank(ad_[x]) over sample classes [x] in 𝔫/C_j.

    ``j = 0`` reads as the unreduced algebra. Only ranks that occur on a
    sample are witnessed; a missing rank is not a proof that none exists.

    Args:
        alg: Grounded algebra
        j: Central series index
        samples: Coordinate vectors in the quotient basis; the default
            sample set when omitted
        random_samples: Pseudo-random vectors in the default set
        seed: Seed of those vectors

    Returns:
        Dict mapping rank to the number of samples with that rank, by rank
    """
    target = alg if j == 0 else quotient(alg, j)
    vectors = (
        default_samples(target.dim, random_samples, seed)
        if samples is None
        else [as_vector(x) for x in samples]
    )

    tally: Dict[int, int] = {}
    for x in vectors:
        if len(x) != target.dim:
            raise DimensionMismatchError(f"Sample of length {len(x)} for quotient of dimension {target.dim}")
        r = rank(ad(target, x))
        tally[r] = tally.get(r, 0) + 1

    logger.debug(f"Rank profile of '{alg.name}' modulo C{j}: {tally}")
    return dict(sorted(tally.items()))
