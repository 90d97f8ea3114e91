"""
Test module for strict positivity of affine families.

Fourier–Motzkin with Farkas multipliers is compared with the exact
simplex on seeded random families.
"""

import numpy as np
import pytest
from fractions import Fraction


def _family(particular, basis):
    from src.models.matrix import SolutionFamily

    return SolutionFamily(dim=len(particular), particular=particular, basis=basis)


class TestPositiveFeasible:
    def test_constant_positive_family(self):
        from src.models.verdict import FeasibilityWitness
        from src.services.feasibility import positive_feasible

        outcome = positive_feasible(_family([1, "1/2"], []))

        assert isinstance(outcome, FeasibilityWitness)
        assert outcome.vector == [Fraction(1), Fraction(1, 2)]
        assert outcome.parameters == []

    def test_constant_nonpositive_coordinate_reported_first(self):
        """
        The first coordinate of -9/281 + 0·t never becomes positive.
        """
        from src.models.verdict import CertificateKind, Infeasible
        from src.services.feasibility import check_certificate, positive_feasible

        family = _family(["-9/281", "100/281", 0], [[0, -1, 1]])
        outcome = positive_feasible(family)

        assert isinstance(outcome, Infeasible)
        assert outcome.certificate.kind == CertificateKind.CONSTANT_COORDINATE
        assert outcome.certificate.coordinate == 0
        assert outcome.certificate.value == Fraction(-9, 281)
        assert check_certificate(outcome.certificate, family=family)

    def test_contradictory_bounds_give_farkas_multipliers(self):
        """
        t > 0 and -1 - t > 0 sum to -1 > 0.
        """
        from src.models.verdict import CertificateKind, Infeasible
        from src.services.feasibility import check_certificate, positive_feasible

        family = _family([0, -1], [[1, -1]])
        outcome = positive_feasible(family)

        assert isinstance(outcome, Infeasible)
        certificate = outcome.certificate
        assert certificate.kind == CertificateKind.FARKAS
        assert certificate.value <= 0
        assert all(y >= 0 for y in certificate.multipliers)
        assert check_certificate(certificate, family=family)

    def test_touching_bounds_are_infeasible(self):
        """
        t > 0 and -t > 0 leave an empty open interval.
        """
        from src.models.verdict import Infeasible
        from src.services.feasibility import positive_feasible

        outcome = positive_feasible(_family([0, 0], [[1, -1]]))

        assert isinstance(outcome, Infeasible)
        assert outcome.certificate.value == 0

    def test_open_interval_gives_interior_witness(self):
        """
        7/186 < t < 64/186 is the window of the d1 family.
        """
        from src.models.verdict import FeasibilityWitness
        from src.services.feasibility import positive_feasible

        family = _family(
            ["3/62", "-7/186", "29/186", "20/93", "13/93", "32/93", "77/186", 0],
            [[0, 1, 0, 0, 0, -1, -1, 1]],
        )
        outcome = positive_feasible(family)

        assert isinstance(outcome, FeasibilityWitness)
        t = outcome.parameters[0]
        assert Fraction(7, 186) < t < Fraction(64, 186)
        assert tuple(outcome.vector) == family.member(outcome.parameters)
        assert min(outcome.vector) > 0

    def test_two_parameter_family(self):
        from src.models.verdict import FeasibilityWitness
        from src.services.feasibility import positive_feasible

        family = _family([1, 0, 0, 1], [[0, 1, 0, -1], [0, 0, 1, -1]])
        outcome = positive_feasible(family)

        assert isinstance(outcome, FeasibilityWitness)
        assert min(outcome.vector) > 0


class TestSimplex:
    def test_agrees_on_small_cases(self):
        from src.services.feasibility import simplex_positive_feasible

        assert simplex_positive_feasible(_family([1, 2], [])) is True
        assert simplex_positive_feasible(_family([0, -1], [[1, -1]])) is False
        assert simplex_positive_feasible(_family([0, 0], [[1, -1]])) is False
        assert simplex_positive_feasible(_family([-1, 3], [[1, -1]])) is True

    def test_empty_family_is_feasible(self):
        from src.services.feasibility import simplex_positive_feasible

        assert simplex_positive_feasible(_family([], [])) is True


class TestRandomFamilies:
    def test_fourier_motzkin_agrees_with_simplex(self):
        """
        200 seeded families with N ≤ 12 coordinates and at most 5 parameters.
        """
        from src.models.verdict import FeasibilityWitness
        from src.services.feasibility import check_certificate, positive_feasible, simplex_positive_feasible

        rng = np.random.default_rng(2024)
        feasible_count = 0
        for _ in range(200):
            count = int(rng.integers(1, 13))
            params = int(rng.integers(0, min(5, count) + 1))
            particular = [Fraction(int(v), int(d)) for v, d in zip(rng.integers(-4, 6, size=count), rng.integers(1, 4, size=count))]
            basis = [[Fraction(int(v)) for v in rng.integers(-2, 3, size=count)] for _ in range(params)]
            family = _family(particular, basis)

            outcome = positive_feasible(family)
            feasible = isinstance(outcome, FeasibilityWitness)

            assert feasible == simplex_positive_feasible(family)
            if feasible:
                feasible_count += 1
                assert tuple(outcome.vector) == family.member(outcome.parameters)
                assert min(outcome.vector, default=1) > 0
            else:
                assert check_certificate(outcome.certificate, family=family)

        assert 0 < feasible_count < 200

    @pytest.mark.parametrize("seed", [7, 11])
    def test_rational_families_are_always_decided(self, seed):
        """
        Wider rational coefficients produce rows with equal coefficients
        but different histories; each must still end in a witness or a
        checkable certificate that matches the simplex answer.
        """
        from src.models.verdict import FeasibilityWitness
        from src.services.feasibility import check_certificate, positive_feasible, simplex_positive_feasible

        rng = np.random.default_rng(seed)
        infeasible_count = 0
        for _ in range(1500):
            count = int(rng.integers(1, 13))
            params = int(rng.integers(0, min(5, count) + 1))
            particular = [Fraction(int(v), int(d)) for v, d in zip(rng.integers(-9, 10, size=count), rng.integers(1, 7, size=count))]
            basis = [
                [Fraction(int(v), int(d)) for v, d in zip(rng.integers(-4, 5, size=count), rng.integers(1, 4, size=count))]
                for _ in range(params)
            ]
            family = _family(particular, basis)

            outcome = positive_feasible(family)
            feasible = isinstance(outcome, FeasibilityWitness)

            assert feasible == simplex_positive_feasible(family)
            if feasible:
                assert min(outcome.vector, default=1) > 0
            else:
                infeasible_count += 1
                assert check_certificate(outcome.certificate, family=family)

        assert infeasible_count > 0

    def test_equal_coefficient_rows_keep_their_history(self):
        """
        After eliminating t2 the rows t1 + 1 > 0 (from one coordinate) and
        t1 + 1/2 > 0 (from two) share coefficients; both take part in the
        next elimination.
        """
        from src.services.feasibility import _combine, _deduplicate, _family_rows

        family = _family([1, 0, "1/2", 2], [[1, 1, 0, -1], [0, 1, -1, 0]])
        rows = _family_rows(family)
        merged = _deduplicate([rows[0], _combine(rows[1], rows[2], 1), rows[0]])

        assert len(merged) == 2
        assert {row.constant for row in merged} == {Fraction(1), Fraction(1, 2)}


class TestCheckCertificate:
    def test_tampered_certificate_fails(self):
        from src.models.verdict import Certificate, CertificateKind
        from src.services.feasibility import check_certificate

        family = _family([0, -1], [[1, -1]])
        forged = Certificate(kind=CertificateKind.FARKAS, value=-1, multipliers=[1, 2])

        assert check_certificate(forged, family=family) is False

    def test_inconsistent_certificate(self):
        from src.models.verdict import Certificate, CertificateKind
        from src.services.feasibility import check_certificate

        gram = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
        certificate = Certificate(kind=CertificateKind.INCONSISTENT, value=0, multipliers=[1, -1])

        assert check_certificate(certificate, gram=gram) is False

    def test_nonpositive_eigenvalue_certificate(self):
        from src.models.verdict import Certificate, CertificateKind
        from src.services.feasibility import check_certificate

        certificate = Certificate(kind=CertificateKind.NONPOSITIVE_EIGENVALUE, coordinate=1, value=0)

        assert check_certificate(certificate, eigenvalues=[Fraction(1), Fraction(0)])
        assert not check_certificate(certificate, eigenvalues=[Fraction(1), Fraction(1)])

    def test_missing_data_raises(self):
        from src.models.verdict import Certificate, CertificateKind
        from src.services.feasibility import check_certificate

        certificate = Certificate(kind=CertificateKind.CONSTANT_COORDINATE, coordinate=0, value=-1)

        with pytest.raises(ValueError):
            check_certificate(certificate)
