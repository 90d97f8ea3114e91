"""
Catalog Service.

The N-graded filiform Lie algebras of dimension 8, the generic graded
templates of classes A_r and B_r, the one-parameter families used to
normalize them, and the recorded classification table.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..models.catalog_entry import CatalogEntry, ExpectedVerdict, Table2Row
from ..models.lie_algebra import BaseChange, LieAlgebra
from ..models.polynomial import PolyLike, PolyQ, as_poly
from ..models.rational import RationalLike, parse_rational
from ..models.verdict import VerdictStatus


class UnknownAlgebraError(Exception):
    """Custom exception for a name that is not in the catalog."""

    pass


class CatalogParameterError(Exception):
    """Custom exception for missing, extra or invalid catalog parameters."""

    pass


class TemplateRangeError(Exception):
    """Custom exception for a template index r or pair outside its range."""

    pass


Brackets = Dict[Tuple[int, int], Dict[int, PolyLike]]

DIMENSION = 8

_ALPHA = PolyQ.variable("alpha")
_T = PolyQ.variable("t")
_A = PolyQ.variable("a")
_B = PolyQ.variable("b")


def _chain(last: int) -> Brackets:
    """[e_1, e_i] = e_{i+1} for i = 2..last."""
    return {(1, i): {i + 1: 1} for i in range(2, last + 1)}


def _top(n: int, first_sign: int) -> Brackets:
    """[e_i, e_{n+1-i}] = ± e_n for i = 2..n/2, signs alternating from ``first_sign``."""
    return {(i, n + 1 - i): {n: first_sign * (-1) ** i} for i in range(2, n // 2 + 1)}


def _merge(*parts: Brackets) -> Brackets:
    merged: Brackets = {}
    for part in parts:
        merged.update(part)
    return merged


def normalize_slug(name: str) -> str:
    """Catalog lookup key: lower case without underscores, so h_1_8 and h1_8 agree."""
    return name.replace("_", "").lower()


def _coefficient_name(i: int, j: int, n: int) -> str:
    return f"c{i}_{j}" if n >= 10 else f"c{i}{j}"


class CatalogService:
    """
    Read-only access to the catalog.

    Entries are built once per instance; LieAlgebra values are immutable
    so they are shared freely between callers and threads.
    """

    FAMILIES = ("A2", "A4", "A5", "B2", "B4")

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self._entries = self._build_entries()
        self._by_key = {normalize_slug(entry.slug): entry for entry in self._entries}

    def _build_entries(self) -> List[CatalogEntry]:
        n = DIMENSION
        expect = ExpectedVerdict
        rows = [
            ("m0_8", "𝔪₀(8)", _chain(7), (), 2, "rank2", None,
             expect(status=VerdictStatus.YES, eigenvalue_type="1<26<27<28<29<30<31<32")),
            ("m1_8", "𝔪₁(8)", _merge(_chain(6), _top(n, 1)), (), 2, "rank2", None,
             expect(status=VerdictStatus.YES, eigenvalue_type="10<123<133<143<153<163<173<296")),
            ("m2_8", "𝔪₂(8)", _merge(_chain(7), {(2, i): {i + 2: 1} for i in range(3, 7)}), (), 1, "A", 2,
             expect(status=VerdictStatus.NO)),
            ("g8", "𝔤_α(8)", _merge(_chain(7), {
                (2, 3): {5: _ALPHA + 2},
                (2, 4): {6: _ALPHA + 2},
                (2, 5): {7: _ALPHA + 1},
                (2, 6): {8: _ALPHA},
                (3, 4): {7: 1},
                (3, 5): {8: 1},
            }), ("alpha",), 1, "A", 2,
             expect(parameter="alpha", exceptional=[-2], eigenvalue_type="1<2<3<4<5<6<7<8")),
            ("a8", "𝔞_t(8)", _merge(_chain(7), {
                (2, 3): {6: _T + 1},
                (2, 4): {7: _T + 1},
                (2, 5): {8: _T},
                (3, 4): {8: 1},
            }), ("t",), 1, "A", 3,
             expect(parameter="t", exceptional=[-1], eigenvalue_type="1<3<4<5<6<7<8<9")),
            ("c_1_0_8", "𝔠_{1,0}(8)", _merge(_chain(7), {
                (2, 3): {6: 1},
                (2, 4): {7: 1},
                (2, 5): {8: 1},
            }), (), 1, "A", 3, expect(status=VerdictStatus.NO)),
            ("d1_8", "𝔡₁(8)", _merge(_chain(7), {(2, 3): {7: 1}, (2, 4): {8: 1}}), (), 1, "A", 4,
             expect(status=VerdictStatus.YES, eigenvalue_type="1<4<5<6<7<8<9<10")),
            ("h1_8", "𝔥₁(8)", _merge(_chain(7), {(2, 3): {8: 1}}), (), 1, "A", 5,
             expect(status=VerdictStatus.YES, eigenvalue_type="1<5<6<7<8<9<10<11")),
            ("b8", "𝔟(8)", _merge(_chain(6), {
                (2, 3): {5: Fraction(-1, 2)},
                (2, 4): {6: Fraction(-1, 2)},
                (2, 5): {7: Fraction(-3, 2)},
                (3, 4): {7: 1},
            }, _top(n, -1)), (), 1, "B", 2,
             expect(status=VerdictStatus.YES, eigenvalue_type="1<2<3<4<5<6<7<9")),
            ("k1_8", "𝔨₁(8)", _merge(_chain(6), {(2, 3): {6: 1}, (2, 4): {7: 1}}, _top(n, -1)), (), 1, "B", 3,
             expect(status=VerdictStatus.YES, eigenvalue_type="1<3<4<5<6<7<8<11")),
            ("s1_8", "𝔰₁(8)", _merge(_chain(6), {(2, 3): {7: 1}}, _top(n, -1)), (), 1, "B", 4,
             expect(status=VerdictStatus.YES, eigenvalue_type="1<4<5<6<7<8<9<13")),
        ]
        return [
            CatalogEntry(
                slug=slug,
                display=display,
                algebra=LieAlgebra(dim=n, name=slug, params=params, brackets=brackets),
                rank=rank,
                klass=klass,
                r=r,
                expected=expected,
            )
            for slug, display, brackets, params, rank, klass, r, expected in rows
        ]

    def entries(self) -> List[CatalogEntry]:
        """All entries in inventory order."""
        return list(self._entries)

    def entry(self, name: str) -> CatalogEntry:
        """
        Look up an entry by slug.

        Raises:
            UnknownAlgebraError: If no entry has that name
        """
        entry = self._by_key.get(normalize_slug(name))
        if entry is None:
            known = ", ".join(e.slug for e in self._entries)
            raise UnknownAlgebraError(f"Unknown catalog algebra '{name}' (known: {known})")
        return entry

    def get(self, name: str, params: Optional[Mapping[str, RationalLike]] = None) -> LieAlgebra:
        """
        Grounded catalog algebra.

        Args:
            name: Catalog slug
            params: Exactly the parameters of the entry (alpha for g8, t for a8)

        Returns:
            LieAlgebra: Grounded algebra; parametric entries are named with
            their assignment, e.g. ``g8[alpha=1/2]``

        Raises:
            UnknownAlgebraError: If the name is unknown
            CatalogParameterError: If parameters are missing or unexpected
        """
        entry = self.entry(name)
        given = dict(params or {})
        expected = set(entry.algebra.params)
        if set(given) != expected:
            missing = sorted(expected - set(given))
            extra = sorted(set(given) - expected)
            raise CatalogParameterError(
                f"'{entry.slug}' takes parameters {sorted(expected) or 'none'}; "
                f"missing {missing}, unexpected {extra}"
            )
        if not given:
            return entry.algebra
        values = {key: parse_rational(value) for key, value in given.items()}
        label = ",".join(f"{key}={value}" for key, value in sorted(values.items()))
        return entry.algebra.ground(values).renamed(f"{entry.slug}[{label}]")

    def expected(self, name: str) -> ExpectedVerdict:
        return self.entry(name).expected

    def template(
        self,
        klass: str,
        r: int,
        n: int = DIMENSION,
        coeffs: Optional[Mapping[Tuple[int, int], object]] = None,
    ) -> LieAlgebra:
        """
        Graded algebra of class A_r or B_r.

        Class A has [e_1, e_i] = e_{i+1} for i = 2..n-1 and
        [e_i, e_j] = c_ij e_{i+j+r-2} for 2 ≤ i < j with i+j+r-2 ≤ n.
        Class B stops the chain at i = n-2, keeps graded pairs up to
        e_{n-1}, and adds [e_i, e_{n+1-i}] = (-1)^{i+1} e_n for i = 2..n/2.

        Args:
            klass: "A" or "B"
            r: Grading offset
            n: Dimension
            coeffs: Coefficient per graded pair; pairs left out are 0.
                None gives every graded pair its own parameter c_ij.

        Raises:
            TemplateRangeError: If r is out of range or a pair is not graded
        """
        klass = klass.upper()
        if klass not in ("A", "B"):
            raise TemplateRangeError(f"Unknown template class '{klass}'")
        upper = n - 3 if klass == "A" else n - 4
        if not 2 <= r <= upper:
            raise TemplateRangeError(f"r = {r} outside 2..{upper} for class {klass} in dimension {n}")

        top = n if klass == "A" else n - 1
        pairs = [
            (i, j)
            for i in range(2, n + 1)
            for j in range(i + 1, n + 1)
            if i + j + r - 2 <= top
        ]

        if coeffs is None:
            chosen = {pair: PolyQ.variable(_coefficient_name(*pair, n)) for pair in pairs}
        else:
            chosen = {}
            for pair, value in coeffs.items():
                if pair not in pairs:
                    raise TemplateRangeError(f"Pair {pair} has no graded target in {klass}_{r}({n})")
                chosen[pair] = as_poly(value)

        brackets = _chain(n - 1 if klass == "A" else n - 2)
        for (i, j), coefficient in chosen.items():
            brackets[(i, j)] = {i + j + r - 2: coefficient}
        if klass == "B":
            brackets.update(_top(n, -1))

        params = sorted({name for poly in chosen.values() for name in poly.variables})
        return LieAlgebra(dim=n, name=f"{klass}{r}({n})", params=tuple(params), brackets=brackets)

    def family(self, name: str) -> LieAlgebra:
        """
        One of the normalizing families.

        A2 is μ_{a,b}; A4, A5, B2 and B4 are one-parameter families μ_a.

        Raises:
            UnknownAlgebraError: If the family name is unknown
        """
        key = name.upper()
        if key == "A2":
            coeffs = {(2, 3): _A, (2, 4): _A, (2, 5): _A - _B, (2, 6): _A - _B * 2, (3, 4): _B, (3, 5): _B}
            algebra = self.template("A", 2, coeffs=coeffs)
        elif key == "A4":
            algebra = self.template("A", 4, coeffs={(2, 3): _A, (2, 4): _A})
        elif key == "A5":
            algebra = self.template("A", 5, coeffs={(2, 3): _A})
        elif key == "B2":
            algebra = self.template("B", 2, coeffs={(2, 3): _A, (2, 4): _A, (2, 5): _A * 3, (3, 4): _A * -2})
        elif key == "B4":
            algebra = self.template("B", 4, coeffs={(2, 3): _A})
        else:
            raise UnknownAlgebraError(f"Unknown family '{name}' (known: {', '.join(self.FAMILIES)})")
        return algebra.renamed(f"mu_{key}")

    def normalizing_base_change(self, name: str, value: RationalLike) -> BaseChange:
        """
        Diagonal base change relating members of a family.

        For A4 and A5, diag(1, 1/a, …, 1/a) maps μ_1 to μ_a. For B2 and B4,
        diag(1, a, …, a, a²) maps μ_a to μ_1.

        Raises:
            CatalogParameterError: If a = 0 or the family has no such change
        """
        key = name.upper()
        a = parse_rational(value)
        if a == 0:
            raise CatalogParameterError(f"Family parameter a must be nonzero for {key}")
        n = DIMENSION
        if key in ("A4", "A5"):
            return BaseChange.diagonal([1] + [1 / a] * (n - 1))
        if key in ("B2", "B4"):
            return BaseChange.diagonal([1] + [a] * (n - 2) + [a * a])
        raise CatalogParameterError(f"No normalizing base change for family '{name}'")

    def table2_rows(
        self,
        alpha_samples: Sequence[RationalLike] = ("-2", "-1", "0", "1/2", "3"),
        t_samples: Sequence[RationalLike] = ("-1", "0", "1", "5/2"),
    ) -> List[Table2Row]:
        """
        The thirteen rows of the classification table in order.

        Family rows are checked at the sampled values away from the
        exceptional one; the exceptional member has its own row.
        """
        alphas = [parse_rational(v) for v in alpha_samples]
        ts = [parse_rational(v) for v in t_samples]
        rows: List[Table2Row] = []
        for entry in self._entries:
            expected = entry.expected
            if expected.parameter is None:
                rows.append(Table2Row(
                    label=entry.display,
                    slug=entry.slug,
                    expected_status=expected.status,
                    expected_type=expected.eigenvalue_type,
                ))
                continue

            samples = alphas if expected.parameter == "alpha" else ts
            symbol = "α" if expected.parameter == "alpha" else "t"
            exceptional = expected.exceptional[0]
            regular = [v for v in samples if v not in expected.exceptional]
            rows.append(Table2Row(
                label=f"{entry.display}, {symbol} ≠ {exceptional}",
                slug=entry.slug,
                samples=[{expected.parameter: v} for v in regular],
                expected_status=VerdictStatus.YES,
                expected_type=expected.eigenvalue_type,
            ))
            rows.append(Table2Row(
                label=entry.display.replace(f"_{symbol}", f"_{{{exceptional}}}"),
                slug=entry.slug,
                samples=[{expected.parameter: exceptional}],
                expected_status=VerdictStatus.NO,
            ))
        return rows
