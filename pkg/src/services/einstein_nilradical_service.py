"""
Einstein Nilradical Service.

Decides whether a nilpotent Lie algebra with simple pre-Einstein
eigenvalues is an Einstein nilradical: it is one exactly when the
Gram system U·v = [1]_N of its roots has a solution with all
coordinates positive.
"""

import logging
from fractions import Fraction
from typing import Optional

from ..models.lie_algebra import LieAlgebra
from ..models.matrix import Inconsistent, QMatrix
from ..models.verdict import (
    Certificate,
    CertificateKind,
    ENVerdict,
    FeasibilityWitness,
    InvariantViolationError,
    RootSet,
    VerdictStatus,
)
from .derivation_service import pre_einstein
from .exact_linear_algebra import solve_affine
from .feasibility import check_certificate, positive_feasible
from .lie_structure import UngroundedAlgebraError


__all__ = ["EinsteinNilradicalService", "InvariantViolationError", "gram", "root_set"]


def root_set(alg: LieAlgebra) -> RootSet:
    """Root triples (i, j, k) of every nonzero c_ij^k, in lexicographic order."""
    if not alg.is_grounded:
        raise UngroundedAlgebraError(f"root_set needs a grounded algebra, got '{alg.name}'")
    return RootSet(n=alg.dim, roots=alg.nonzero_triples())


def gram(roots: RootSet) -> QMatrix:
    """U = YᵗY where the columns of Y are the root vectors."""
    vectors = roots.vectors()
    return QMatrix.from_rows(
        [[sum(a * b for a, b in zip(u, v)) for v in vectors] for u in vectors],
        cols=len(vectors),
    )


class EinsteinNilradicalService:
    """
    Runs the pre-Einstein derivation, Gram system and positivity test.

    The steps are exposed as module functions; this class composes them,
    rechecks every witness and certificate, and logs the verdict.
    """

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def en_test(self, alg: LieAlgebra) -> ENVerdict:
        """
        Einstein-nilradical verdict for a grounded nilpotent algebra.

        Args:
            alg: Algebra in an adapted basis

        Returns:
            ENVerdict: Yes with a positive solution of Uv = 1, No with a
            certificate, or NotApplicable when the eigenvalues are not simple

        Raises:
            NoDiagonalDerivationsError: Propagated from the pre-Einstein step
            VerificationFailedError: Propagated from the pre-Einstein step
            InvariantViolationError: If a witness or certificate fails its recheck
        """
        result = pre_einstein(alg)
        eigenvalues = list(result.eigenvalues)
        common = dict(name=alg.name, eigenvalues=eigenvalues, eigenvalue_type=result.eigenvalue_type)

        if not result.positive:
            index = next(i for i, v in enumerate(eigenvalues) if v <= 0)
            certificate = Certificate(
                kind=CertificateKind.NONPOSITIVE_EIGENVALUE, coordinate=index, value=eigenvalues[index]
            )
            self._recheck(check_certificate(certificate, eigenvalues=eigenvalues), alg, certificate)
            return self._finish(ENVerdict(status=VerdictStatus.NO, certificate=certificate, **common))

        if not result.simple:
            return self._finish(
                ENVerdict(status=VerdictStatus.NOT_APPLICABLE, reason="eigenvalues not simple", **common)
            )

        roots = root_set(alg)
        u = gram(roots)
        ones = [Fraction(1)] * len(roots)
        common.update(roots=roots.roots, U=u.to_rows())
        solution = solve_affine(u, ones)

        if isinstance(solution, Inconsistent):
            self.logger.warning(f"Gram system of '{alg.name}' is inconsistent; this is not expected")
            certificate = Certificate(
                kind=CertificateKind.INCONSISTENT, value=solution.value, multipliers=solution.multipliers
            )
            self._recheck(check_certificate(certificate, gram=u.to_rows()), alg, certificate)
            return self._finish(ENVerdict(status=VerdictStatus.NO, certificate=certificate, **common))

        outcome = positive_feasible(solution)
        if isinstance(outcome, FeasibilityWitness):
            self._check_witness(u, outcome, alg)
            verdict = ENVerdict(status=VerdictStatus.YES, family=solution, witness=outcome, **common)
        else:
            self._recheck(check_certificate(outcome.certificate, family=solution), alg, outcome.certificate)
            verdict = ENVerdict(
                status=VerdictStatus.NO, family=solution, certificate=outcome.certificate, **common
            )
        return self._finish(verdict)

    def _check_witness(self, u: QMatrix, witness: FeasibilityWitness, alg: LieAlgebra) -> None:
        vector = witness.vector
        if min(vector, default=Fraction(1)) <= 0 or any(v != 1 for v in u.apply(vector)):
            raise InvariantViolationError(f"Witness for '{alg.name}' does not satisfy Uv = 1 with v > 0")

    def _recheck(self, valid: bool, alg: LieAlgebra, certificate: Certificate) -> None:
        if not valid:
            raise InvariantViolationError(
                f"Certificate for '{alg.name}' fails its check: {certificate.describe()}"
            )

    def _finish(self, verdict: ENVerdict) -> ENVerdict:
        detail: Optional[str] = None
        if verdict.certificate is not None:
            detail = verdict.certificate.describe()
        elif verdict.reason:
            detail = verdict.reason
        suffix = f" ({detail})" if detail else ""
        self.logger.info(f"Verdict for '{verdict.name}': {verdict.status.value}{suffix}")
        return verdict
