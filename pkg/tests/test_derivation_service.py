"""
Test module for derivations and the pre-Einstein derivation.
"""

import pytest
from fractions import Fraction


def _is_derivation(algebra, matrix):
    """D[x, y] = [Dx, y] + [x, Dy] on every pair of basis vectors."""
    from src.services.lie_structure import bracket_vectors

    n = algebra.dim
    units = [[int(i == a) for i in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            left = matrix.apply(bracket_vectors(algebra, units[a], units[b]))
            right = [
                p + q
                for p, q in zip(
                    bracket_vectors(algebra, matrix.column(a), units[b]),
                    bracket_vectors(algebra, units[a], matrix.column(b)),
                )
            ]
            if list(left) != right:
                return False
    return True


class TestDerivationSpace:
    def test_heisenberg_has_six_derivations(self, heisenberg):
        from src.services.derivation_service import derivation_space

        space = derivation_space(heisenberg)

        assert space.dim == 6
        assert all(_is_derivation(heisenberg, d) for d in space.basis)

    def test_abelian_derivations_are_all_matrices(self, abelian):
        from src.services.derivation_service import derivation_space

        assert derivation_space(abelian).dim == 9

    def test_catalog_derivations_satisfy_the_identity(self, catalog):
        from src.services.derivation_service import derivation_space

        for name in ("d1_8", "b8"):
            algebra = catalog.get(name)
            space = derivation_space(algebra)
            assert space.dim > 0
            assert all(_is_derivation(algebra, d) for d in space.basis), name

    def test_basis_serializes_as_rational_text(self, heisenberg):
        from src.services.derivation_service import derivation_space

        data = derivation_space(heisenberg).model_dump(mode="json")

        assert data["dim"] == 6
        assert all(isinstance(v, str) for m in data["basis"] for row in m for v in row)

    def test_parametric_algebra_rejected(self, catalog):
        from src.services.derivation_service import derivation_space
        from src.services.lie_structure import UngroundedAlgebraError

        with pytest.raises(UngroundedAlgebraError):
            derivation_space(catalog.entry("a8").algebra)


class TestDiagonalDerivations:
    def test_chain_has_two_diagonal_derivations(self, catalog):
        from src.services.derivation_service import diagonal_derivations

        basis = diagonal_derivations(catalog.get("m0_8"))

        assert len(basis) == 2
        for d in basis:
            assert all(d[i] == d[0] + d[i - 1] for i in range(2, 8))

    def test_root_conditions_hold(self, catalog):
        from src.services.derivation_service import diagonal_derivations

        algebra = catalog.get("g8", {"alpha": 3})
        for d in diagonal_derivations(algebra):
            for i, j, k in algebra.nonzero_triples():
                assert d[k - 1] == d[i - 1] + d[j - 1]


class TestEigenvalueType:
    def test_scales_to_coprime_integers(self):
        from src.services.derivation_service import eigenvalue_type

        values = [Fraction(1, 29)] + [Fraction(k, 29) for k in range(26, 33)]

        assert eigenvalue_type(values) == [(1, 1)] + [(k, 1) for k in range(26, 33)]

    def test_multiplicities_are_tallied(self):
        from src.services.derivation_service import eigenvalue_type

        assert eigenvalue_type(["2/3", "2/3", "4/3"]) == [(1, 2), (2, 1)]

    def test_nonpositive_values_have_no_type(self):
        from src.services.derivation_service import eigenvalue_type

        assert eigenvalue_type([1, 0, 2]) is None
        assert eigenvalue_type([1, -1]) is None


class TestPreEinstein:
    def test_heisenberg(self, heisenberg):
        """
        φ = (2/3, 2/3, 4/3): positive but not simple.
        """
        from src.services.derivation_service import pre_einstein

        result = pre_einstein(heisenberg)

        assert result.eigenvalues == [Fraction(2, 3), Fraction(2, 3), Fraction(4, 3)]
        assert result.positive is True
        assert result.simple is False
        assert result.type_text == "1<2; 2,1"
        assert result.phi.is_diagonal

    def test_m0(self, catalog):
        from src.services.derivation_service import pre_einstein

        result = pre_einstein(catalog.get("m0_8"))

        assert result.eigenvalues == [Fraction(1, 29)] + [Fraction(k, 29) for k in range(26, 33)]
        assert result.simple is True
        assert result.type_text == "1<26<27<28<29<30<31<32"

    def test_m1(self, catalog):
        from src.services.derivation_service import pre_einstein

        result = pre_einstein(catalog.get("m1_8"))

        assert result.type_text == "10<123<133<143<153<163<173<296"

    def test_c_1_0(self, catalog):
        from src.services.derivation_service import pre_einstein

        result = pre_einstein(catalog.get("c_1_0_8"))

        assert result.eigenvalue_type == [(k, 1) for k in (1, 3, 4, 5, 6, 7, 8, 9)]
        assert result.simple is True

    @pytest.mark.parametrize("name,params,expected", [
        ("g8", {"alpha": "1/2"}, "1<2<3<4<5<6<7<8"),
        ("a8", {"t": 1}, "1<3<4<5<6<7<8<9"),
        ("d1_8", None, "1<4<5<6<7<8<9<10"),
        ("h1_8", None, "1<5<6<7<8<9<10<11"),
        ("b8", None, "1<2<3<4<5<6<7<9"),
        ("k1_8", None, "1<3<4<5<6<7<8<11"),
        ("s1_8", None, "1<4<5<6<7<8<9<13"),
    ])
    def test_recorded_types(self, catalog, name, params, expected):
        from src.services.derivation_service import pre_einstein

        assert pre_einstein(catalog.get(name, params)).type_text == expected

    def test_trace_identity_on_all_derivations(self, catalog):
        """
        tr(φ D) = tr(D) for every basis element of Der.
        """
        from src.services.derivation_service import derivation_space, pre_einstein

        algebra = catalog.get("k1_8")
        phi = pre_einstein(algebra).phi
        for d in derivation_space(algebra).basis:
            assert (phi @ d).trace() == d.trace()

    def test_eigenvalues_follow_a_permutation_of_the_basis(self, catalog):
        from src.models.lie_algebra import BaseChange
        from src.services.derivation_service import pre_einstein
        from src.services.lie_structure import act

        images = [2, 1, 3, 5, 4, 6, 8, 7]
        algebra = catalog.get("d1_8")
        moved = act(BaseChange.permutation(images), algebra)

        original = pre_einstein(algebra).eigenvalues
        permuted = pre_einstein(moved).eigenvalues
        for i, image in enumerate(images):
            assert permuted[image - 1] == original[i]

    def test_no_diagonal_derivation_raises(self):
        from src.models.lie_algebra import LieAlgebra
        from src.services.derivation_service import NoDiagonalDerivationsError, pre_einstein

        algebra = LieAlgebra(dim=2, name="skew", brackets={(1, 2): {1: 1, 2: 1}})

        with pytest.raises(NoDiagonalDerivationsError):
            pre_einstein(algebra)


class TestGradedEigenvalues:
    @pytest.mark.parametrize("name,params", [("d1_8", None), ("c_1_0_8", None), ("k1_8", None), ("g8", {"alpha": 3})])
    def test_type_unchanged_under_diagonal_changes(self, catalog, name, params):
        import random
        from src.models.lie_algebra import BaseChange
        from src.services.derivation_service import pre_einstein
        from src.services.lie_structure import act

        algebra = catalog.get(name, params)
        reference = pre_einstein(algebra)
        rng = random.Random(8)
        for _ in range(10):
            g = BaseChange.diagonal([Fraction(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 5)) for _ in range(8)])
            result = pre_einstein(act(g, algebra))
            assert result.eigenvalue_type == reference.eigenvalue_type
            assert result.eigenvalues == reference.eigenvalues

    @pytest.mark.parametrize("klass,r,coeffs", [
        ("A", 4, {(2, 3): 1, (2, 4): 1}),
        ("A", 5, {(2, 3): 1}),
        ("B", 3, {(2, 3): 1, (2, 4): 1}),
        ("B", 4, {(2, 3): 1}),
    ])
    def test_templates_have_graded_eigenvalues(self, catalog, klass, r, coeffs):
        """
        A_r(8): φ ∝ (1, r, r+1, …, r+6); B_r(8) ends in 2r+5 instead.
        """
        from src.services.derivation_service import pre_einstein

        eigenvalues = pre_einstein(catalog.template(klass, r, coeffs=coeffs)).eigenvalues
        expected = [1] + [r + k for k in range(7)] if klass == "A" else [1] + [r + k for k in range(6)] + [2 * r + 5]

        assert [v / eigenvalues[0] for v in eigenvalues] == expected

    @pytest.mark.parametrize("name,params,r,klass", [
        ("g8", {"alpha": 3}, 2, "A"),
        ("a8", {"t": 1}, 3, "A"),
        ("c_1_0_8", None, 3, "A"),
        ("b8", None, 2, "B"),
    ])
    def test_catalog_members_are_graded_by_rank_parameter(self, catalog, name, params, r, klass):
        from src.services.derivation_service import pre_einstein

        eigenvalues = pre_einstein(catalog.get(name, params)).eigenvalues
        tail = [2 * r + 5] if klass == "B" else [r + 6]

        assert [v / eigenvalues[0] for v in eigenvalues] == [1] + [r + k for k in range(6)] + tail
