"""
Strict positivity over an affine family of rational vectors.

Given v(t) = p + Σ t_m·b_m, decide whether some rational t makes every
coordinate of v(t) positive. The primary decision is Fourier–Motzkin
elimination on the open inequalities v_i(t) > 0, tracking for every
derived row the nonnegative combination of original rows that produced
it, so an infeasible system yields Farkas multipliers directly. An
exact simplex (Bland's rule) answers the same question independently.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..models.matrix import SolutionFamily
from ..models.verdict import (
    Certificate,
    CertificateKind,
    FeasibilityWitness,
    Infeasible,
    InvariantViolationError,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Row:
    """coefficients·t + constant > 0, equal to Σ multipliers_i·v_i(t)."""

    coefficients: Tuple[Fraction, ...]
    constant: Fraction
    multipliers: Tuple[Fraction, ...]

    def support(self) -> int:
        return sum(1 for y in self.multipliers if y)

    def scaled(self, factor: Fraction) -> "_Row":
        return _Row(
            tuple(factor * a for a in self.coefficients),
            factor * self.constant,
            tuple(factor * y for y in self.multipliers),
        )

    def normalized(self) -> "_Row":
        lead = next((abs(a) for a in self.coefficients if a), abs(self.constant))
        return self if lead in (0, 1) else self.scaled(1 / lead)


def _combine(upper: "_Row", lower: "_Row", index: int) -> _Row:
    # upper has a positive coefficient at index, lower a negative one
    a, b = upper.coefficients[index], -lower.coefficients[index]
    return _Row(
        tuple(b * x + a * y for x, y in zip(upper.coefficients, lower.coefficients)),
        b * upper.constant + a * lower.constant,
        tuple(b * x + a * y for x, y in zip(upper.multipliers, lower.multipliers)),
    ).normalized()


def _family_rows(family: SolutionFamily) -> List[_Row]:
    count = family.dim
    return [
        _Row(
            tuple(vector[i] for vector in family.basis),
            family.particular[i],
            tuple(Fraction(int(r == i)) for r in range(count)),
        )
        for i in range(count)
    ]


def _constant_certificate(family: SolutionFamily) -> Optional[Certificate]:
    for index in family.constant_coordinates():
        value = family.particular[index]
        if value <= 0:
            return Certificate(kind=CertificateKind.CONSTANT_COORDINATE, coordinate=index, value=value)
    return None


def _deduplicate(rows: List[_Row]) -> List[_Row]:
    # identical rows only: support pruning needs every row's own history
    return list(dict.fromkeys(rows))


def _choose(lower: Optional[Fraction], upper: Optional[Fraction]) -> Fraction:
    if lower is not None and upper is not None:
        return (lower + upper) / 2
    if lower is not None:
        return lower + 1
    if upper is not None:
        return upper - 1
    return Fraction(0)


def positive_feasible(family: SolutionFamily) -> Union[FeasibilityWitness, Infeasible]:
    """
    Decide ∃t : particular + Σ tᵢ·basisᵢ > 0 componentwise.

    A coordinate that is constant and ≤ 0 is reported first. Otherwise the
    parameters are eliminated from the last to the first; a derived
    constant row c > 0 with c ≤ 0 gives Farkas multipliers, and a
    feasible system is solved back with each parameter at the midpoint of
    its open interval.

    Args:
        family: Affine family p + B t

    Returns:
        FeasibilityWitness with t and the positive member, or Infeasible
        with a certificate
    """
    certificate = _constant_certificate(family)
    if certificate is not None:
        logger.debug(f"Constant nonpositive coordinate: {certificate.describe()}")
        return Infeasible(certificate=certificate)

    rows = [row.normalized() for row in _family_rows(family)]
    levels: Dict[int, List[_Row]] = {}

    for eliminated, index in enumerate(reversed(range(family.free_parameters)), start=1):
        levels[index] = [row for row in rows if row.coefficients[index]]
        upper = [row for row in rows if row.coefficients[index] > 0]
        lower = [row for row in rows if row.coefficients[index] < 0]
        following = [row for row in rows if not row.coefficients[index]]
        following.extend(_combine(u, l, index) for u in upper for l in lower)

        # Chernikov: after k eliminations a necessary row combines at most k + 1 originals
        following = [row for row in following if row.support() <= eliminated + 1]
        rows = []
        for row in _deduplicate(following):
            if any(row.coefficients):
                rows.append(row)
            elif row.constant <= 0:
                certificate = Certificate(
                    kind=CertificateKind.FARKAS,
                    value=row.constant,
                    multipliers=list(row.multipliers),
                )
                logger.debug(f"Fourier–Motzkin contradiction after eliminating t{index + 1}")
                return Infeasible(certificate=certificate)
        logger.debug(f"Eliminated t{index + 1}: {len(rows)} rows remain")

    parameters: List[Fraction] = []
    for index in range(family.free_parameters):
        lower_bound: Optional[Fraction] = None
        upper_bound: Optional[Fraction] = None
        for row in levels.get(index, []):
            a = row.coefficients[index]
            rest = row.constant + sum((c * t for c, t in zip(row.coefficients, parameters)), Fraction(0))
            bound = -rest / a
            if a > 0:
                lower_bound = bound if lower_bound is None else max(lower_bound, bound)
            else:
                upper_bound = bound if upper_bound is None else min(upper_bound, bound)
        parameters.append(_choose(lower_bound, upper_bound))

    vector = family.member(parameters)
    if min(vector, default=Fraction(1)) <= 0:
        raise InvariantViolationError(
            f"Back-substituted parameters {[str(t) for t in parameters]} give a nonpositive member"
        )
    return FeasibilityWitness(parameters=parameters, vector=list(vector))


def _maximize(a_rows: Sequence[Sequence[Fraction]], b: Sequence[Fraction], c: Sequence[Fraction]) -> Fraction:
    """max c·x s.t. A x ≤ b, x ≥ 0 with b ≥ 0, by the tableau method and Bland's rule."""
    m, width = len(a_rows), len(c)
    tableau = [
        list(row) + [Fraction(int(r == s)) for s in range(m)] + [b[r]]
        for r, row in enumerate(a_rows)
    ]
    basis = [width + r for r in range(m)]
    cost = list(c) + [Fraction(0)] * m

    while True:
        entering = None
        for j in range(width + m):
            reduced = cost[j] - sum((cost[basis[r]] * tableau[r][j] for r in range(m)), Fraction(0))
            if reduced > 0:
                entering = j
                break
        if entering is None:
            return sum((cost[basis[r]] * tableau[r][-1] for r in range(m)), Fraction(0))

        pivot = None
        for r in range(m):
            if tableau[r][entering] > 0:
                key = (tableau[r][-1] / tableau[r][entering], basis[r])
                if pivot is None or key < pivot[0]:
                    pivot = (key, r)
        if pivot is None:
            raise InvariantViolationError("Bounded program reported unbounded")

        r = pivot[1]
        factor = tableau[r][entering]
        tableau[r] = [v / factor for v in tableau[r]]
        for s in range(m):
            if s != r and tableau[s][entering]:
                scale = tableau[s][entering]
                tableau[s] = [x - scale * y for x, y in zip(tableau[s], tableau[r])]
        basis[r] = entering


def simplex_positive_feasible(family: SolutionFamily) -> bool:
    """
    Same decision as ``positive_feasible`` by linear programming.

    Maximizes ε subject to p + B t ≥ ε·1 and ε ≤ 1, with t split into
    nonnegative parts and ε shifted by a constant K so the origin is a
    feasible start. Feasible iff the optimum ε is positive.
    """
    count, params = family.dim, family.free_parameters
    if count == 0:
        return True
    shift = max(Fraction(0), -min(family.particular)) + 1

    a_rows: List[List[Fraction]] = []
    b: List[Fraction] = []
    for i in range(count):
        slope = [vector[i] for vector in family.basis]
        a_rows.append([-s for s in slope] + list(slope) + [Fraction(1)])
        b.append(family.particular[i] + shift)
    a_rows.append([Fraction(0)] * (2 * params) + [Fraction(1)])
    b.append(1 + shift)

    optimum = _maximize(a_rows, b, [Fraction(0)] * (2 * params) + [Fraction(1)])
    return optimum - shift > 0


def check_certificate(
    certificate: Certificate,
    family: Optional[SolutionFamily] = None,
    gram: Optional[Sequence[Sequence[Fraction]]] = None,
    eigenvalues: Optional[Sequence[Fraction]] = None,
) -> bool:
    """
    Verify a certificate independently of the procedure that produced it.

    Constant-coordinate and Farkas certificates are checked against
    ``family``, inconsistency against ``gram`` and nonpositive
    eigenvalues against ``eigenvalues``.

    Raises:
        ValueError: If the data the certificate refers to is not given
    """
    kind = certificate.kind

    if kind == CertificateKind.NONPOSITIVE_EIGENVALUE:
        if eigenvalues is None:
            raise ValueError("Eigenvalues are needed to check this certificate")
        index = certificate.coordinate
        return index < len(eigenvalues) and eigenvalues[index] == certificate.value <= 0

    if kind == CertificateKind.INCONSISTENT:
        if gram is None:
            raise ValueError("The Gram matrix is needed to check this certificate")
        y = certificate.multipliers or []
        if len(y) != len(gram):
            return False
        columns = range(len(gram[0])) if gram else range(0)
        if any(sum((y[r] * gram[r][c] for r in range(len(gram))), Fraction(0)) for c in columns):
            return False
        total = sum(y, Fraction(0))
        return total == certificate.value and total != 0

    if family is None:
        raise ValueError("The solution family is needed to check this certificate")

    if kind == CertificateKind.CONSTANT_COORDINATE:
        index = certificate.coordinate
        return (
            index < family.dim
            and all(vector[index] == 0 for vector in family.basis)
            and family.particular[index] == certificate.value <= 0
        )

    y = certificate.multipliers or []
    if len(y) != family.dim or any(v < 0 for v in y) or not any(y):
        return False
    for vector in family.basis:
        if sum((a * b for a, b in zip(y, vector)), Fraction(0)):
            return False
    value = sum((a * b for a, b in zip(y, family.particular)), Fraction(0))
    return value == certificate.value and value <= 0
