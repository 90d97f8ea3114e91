"""
Derivation algebra and pre-Einstein derivation.

Der(𝔫) is the nullspace of the linear system D[e_i,e_j] = [De_i,e_j] +
[e_i,De_j] in the n² entries of D. The pre-Einstein derivation is
solved for inside the diagonal derivations only and then checked
against the whole of Der(𝔫); inputs whose basis is not adapted fail
that check instead of being guessed at.
"""

import logging
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from ..models.derivation import DerivationSpace, EigenvalueType, PreEinsteinResult
from ..models.lie_algebra import LieAlgebra
from ..models.matrix import Inconsistent, QMatrix, Vector, dot
from ..models.rational import RationalLike, format_rational, parse_rational
from ..models.verdict import InvariantViolationError
from .exact_linear_algebra import nullspace, solve_affine
from .lie_structure import UngroundedAlgebraError


logger = logging.getLogger(__name__)


class NoDiagonalDerivationsError(Exception):
    """Custom exception for an algebra without nonzero diagonal derivations in its basis."""

    pass


class VerificationFailedError(Exception):
    """Custom exception for a diagonal candidate that violates the trace identity on Der."""

    pass


def _derivation_rows(alg: LieAlgebra) -> List[Dict[int, Fraction]]:
    n = alg.dim
    table = alg.constants()
    full: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for (i, j), row in table.items():
        full[(i, j)] = row
        full[(j, i)] = {k: -c for k, c in row.items()}

    def unknown(a: int, b: int) -> int:
        return (a - 1) * n + (b - 1)

    rows: List[Dict[int, Fraction]] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                row: Dict[int, Fraction] = {}
                for m, c in full.get((i, j), {}).items():
                    key = unknown(k, m)
                    row[key] = row.get(key, Fraction(0)) + c
                for l in range(1, n + 1):
                    c = full.get((l, j), {}).get(k)
                    if c:
                        key = unknown(l, i)
                        row[key] = row.get(key, Fraction(0)) - c
                    c = full.get((i, l), {}).get(k)
                    if c:
                        key = unknown(l, j)
                        row[key] = row.get(key, Fraction(0)) - c
                row = {key: v for key, v in row.items() if v != 0}
                if row:
                    rows.append(row)
    return rows


def derivation_space(alg: LieAlgebra) -> DerivationSpace:
    """
    Basis of Der(𝔫).

    Each basis matrix D acts on coordinate columns, so D e_b = Σ_a D[a,b] e_a.

    Raises:
        UngroundedAlgebraError: If the algebra still has parameters
    """
    if not alg.is_grounded:
        raise UngroundedAlgebraError(f"derivation_space needs a grounded algebra, got '{alg.name}'")
    n = alg.dim
    rows = _derivation_rows(alg)
    system = QMatrix.from_sparse(len(rows), n * n, {
        (r, key): value for r, row in enumerate(rows) for key, value in row.items()
    })
    basis = [QMatrix(n, n, vector) for vector in nullspace(system)]
    logger.debug(f"Der('{alg.name}') has dimension {len(basis)} ({len(rows)} equations)")
    return DerivationSpace(algebra=alg, basis=basis)


def diagonal_derivations(alg: LieAlgebra) -> List[Vector]:
    """
    Basis of the diagonal derivations diag(d_1..d_n) of the given basis.

    diag(d) is a derivation iff d_k = d_i + d_j whenever c_ij^k ≠ 0.
    """
    if not alg.is_grounded:
        raise UngroundedAlgebraError(f"diagonal_derivations needs a grounded algebra, got '{alg.name}'")
    n = alg.dim
    entries: Dict[Tuple[int, int], int] = {}
    triples = alg.nonzero_triples()
    for r, (i, j, k) in enumerate(triples):
        entries[(r, k - 1)] = entries.get((r, k - 1), 0) + 1
        entries[(r, i - 1)] = entries.get((r, i - 1), 0) - 1
        entries[(r, j - 1)] = entries.get((r, j - 1), 0) - 1
    return nullspace(QMatrix.from_sparse(len(triples), n, entries))


def eigenvalue_type(eigenvalues: Sequence[RationalLike]) -> Optional[EigenvalueType]:
    """
    Scale positive rationals to coprime integers and tally them.

    Returns:
        Sorted (k, multiplicity) pairs, or None when some value is not
        positive (the NotPositive case)
    """
    values = [parse_rational(v) for v in eigenvalues]
    if not values or any(v <= 0 for v in values):
        return None
    denominators = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in values), 1)
    integers = [int(v * denominators) for v in values]
    divisor = reduce(gcd, integers)
    tally: Dict[int, int] = {}
    for value in integers:
        tally[value // divisor] = tally.get(value // divisor, 0) + 1
    return sorted(tally.items())


def pre_einstein(alg: LieAlgebra) -> PreEinsteinResult:
    """
    The pre-Einstein derivation, diagonal in the given basis.

    Solves tr(φ D) = tr(D) over the diagonal derivations D, then checks
    the same identity on every basis element of Der(𝔫).

    Returns:
        PreEinsteinResult with φ, its eigenvalues, simplicity, positivity
        and the eigenvalue type

    Raises:
        NoDiagonalDerivationsError: If the basis admits no diagonal derivation
        VerificationFailedError: If φ fails the identity on Der(𝔫)
    """
    diagonal = diagonal_derivations(alg)
    if not diagonal:
        raise NoDiagonalDerivationsError(
            f"'{alg.name}' has no nonzero diagonal derivation in its basis"
        )

    gram = QMatrix.from_rows([[dot(a, b) for b in diagonal] for a in diagonal])
    traces = [sum(vector, Fraction(0)) for vector in diagonal]
    solution = solve_affine(gram, traces)
    if isinstance(solution, Inconsistent) or solution.free_parameters:
        raise InvariantViolationError(
            f"Trace system over {len(diagonal)} diagonal derivations of '{alg.name}' has no unique solution"
        )

    n = alg.dim
    weights = solution.particular
    phi_diagonal = tuple(
        sum((w * vector[i] for w, vector in zip(weights, diagonal)), Fraction(0)) for i in range(n)
    )

    for index, matrix in enumerate(derivation_space(alg).basis):
        paired = sum((phi_diagonal[i] * matrix[i, i] for i in range(n)), Fraction(0))
        if paired != matrix.trace():
            raise VerificationFailedError(
                f"tr(φ·D{index + 1}) = {format_rational(paired)} but tr(D{index + 1}) = "
                f"{format_rational(matrix.trace())} for '{alg.name}'"
            )

    positive = all(v > 0 for v in phi_diagonal)
    simple = len(set(phi_diagonal)) == n
    result = PreEinsteinResult(
        phi=QMatrix.diagonal(phi_diagonal),
        eigenvalues=list(phi_diagonal),
        simple=simple,
        positive=positive,
        eigenvalue_type=eigenvalue_type(phi_diagonal) if positive else None,
    )
    logger.info(
        f"Pre-Einstein derivation of '{alg.name}': "
        f"{' '.join(format_rational(v) for v in phi_diagonal)} (simple={simple}, positive={positive})"
    )
    return result
