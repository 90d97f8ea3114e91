"""
Lie algebra data model.

A LieAlgebra is a dimension plus a sparse antisymmetric table of
structure constants c_ij^k, stored only for i < j (1-based indices) and
read back through an accessor that negates on swapped queries.
Coefficients are PolyQ values, so parametric families share the type
with their grounded members.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from .matrix import QMatrix, Vector
from .polynomial import MissingParameterError, PolyQ, as_poly
from .rational import RationalLike, parse_rational


BracketTable = Dict[Tuple[int, int], Dict[int, PolyQ]]

_ZERO = PolyQ()


class LieAlgebraError(Exception):
    """Custom exception for operations that do not apply to a given algebra."""

    pass


class SingularBaseChangeError(Exception):
    """Custom exception for a base change matrix with zero determinant."""

    pass


class LieAlgebra(BaseModel):
    """
    A (possibly parametric) Lie algebra given by structure constants.

    Brackets may be supplied for i > j; they are stored as the negated
    (j, i) entry. Zero coefficients are dropped on construction, so a
    grounded member of a family never carries a vanishing bracket.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int = Field(..., ge=0, description="Dimension n of the algebra")
    name: str = Field(default="", description="Display label")
    params: Tuple[str, ...] = Field(default=(), description="Names of free parameters")
    brackets: Dict[Tuple[int, int], Dict[int, PolyQ]] = Field(
        default_factory=dict, description="(i, j) with i < j mapped to {k: c_ij^k}"
    )

    @field_validator("brackets", mode="before")
    @classmethod
    def normalize_brackets(cls, value: Mapping) -> BracketTable:
        """Orient every pair as i < j and drop zero coefficients."""
        table: BracketTable = {}
        for (i, j), components in dict(value).items():
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"Bracket [e{i},e{j}] of a basis vector with itself")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            if (i, j) in table:
                raise ValueError(f"Bracket [e{i},e{j}] given twice")
            row: Dict[int, PolyQ] = {}
            for k, coefficient in dict(components).items():
                poly = as_poly(coefficient) * sign
                if not poly.is_zero:
                    row[int(k)] = poly
            if row:
                table[(i, j)] = dict(sorted(row.items()))
        return dict(sorted(table.items()))

    @model_validator(mode="after")
    def check_indices(self) -> "LieAlgebra":
        declared = set(self.params)
        for (i, j), components in self.brackets.items():
            if not (1 <= i < j <= self.dim):
                raise ValueError(f"Bracket index ({i},{j}) outside 1..{self.dim}")
            for k, poly in components.items():
                if not 1 <= k <= self.dim:
                    raise ValueError(f"Component e{k} outside 1..{self.dim}")
                undeclared = poly.variables - declared
                if undeclared:
                    raise ValueError(
                        f"Coefficient of e{k} in [e{i},e{j}] uses undeclared parameter(s) {sorted(undeclared)}"
                    )
        return self

    @computed_field
    @property
    def is_grounded(self) -> bool:
        """True when no structure constant depends on a parameter."""
        return all(p.is_constant for row in self.brackets.values() for p in row.values())

    def coefficient(self, i: int, j: int, k: int) -> PolyQ:
        """c_ij^k for any order of i and j."""
        if i == j:
            return _ZERO
        if i < j:
            return self.brackets.get((i, j), {}).get(k, _ZERO)
        return -self.brackets.get((j, i), {}).get(k, _ZERO)

    def bracket(self, i: int, j: int) -> Dict[int, PolyQ]:
        """[e_i, e_j] as a sparse map k -> coefficient."""
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def nonzero_triples(self) -> List[Tuple[int, int, int]]:
        """All (i, j, k) with i < j and c_ij^k stored, in lexicographic order."""
        return sorted((i, j, k) for (i, j), row in self.brackets.items() for k in row)

    def ground(self, assignment: Mapping[str, RationalLike]) -> "LieAlgebra":
        """
        Evaluate every parameter.

        Args:
            assignment: Value for each declared parameter

        Returns:
            LieAlgebra: Grounded algebra without parameters

        Raises:
            MissingParameterError: If a declared parameter has no value
            LieAlgebraError: If a value is given for an undeclared parameter
        """
        unknown = set(assignment) - set(self.params)
        if unknown:
            raise LieAlgebraError(f"Unknown parameter(s) {sorted(unknown)} for '{self.name}'")
        missing = set(self.params) - set(assignment)
        if missing:
            raise MissingParameterError(f"Missing value for parameter(s) {sorted(missing)} of '{self.name}'")
        values = {name: parse_rational(v) for name, v in assignment.items()}
        table = {
            pair: {k: PolyQ.constant(p.evaluate(values)) for k, p in row.items()}
            for pair, row in self.brackets.items()
        }
        return LieAlgebra(dim=self.dim, name=self.name, params=(), brackets=table)

    def constants(self) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
        """
        Rational structure constants of a grounded algebra.

        Raises:
            LieAlgebraError: If a coefficient still depends on a parameter
        """
        if not self.is_grounded:
            raise LieAlgebraError(f"Algebra '{self.name}' has free parameters {list(self.params)}")
        return {
            pair: {k: p.constant_value for k, p in row.items()}
            for pair, row in self.brackets.items()
        }

    def renamed(self, name: str) -> "LieAlgebra":
        return self.model_copy(update={"name": name})

    def same_structure(self, other: "LieAlgebra") -> bool:
        """Equal dimension and structure constants, ignoring names."""
        return self.dim == other.dim and self.brackets == other.brackets


class JacobiResidual(BaseModel):
    """One nonzero component of the Jacobi expression on a basis triple."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    triple: Tuple[int, int, int] = Field(..., description="(i, j, k) with i < j < k")
    component: int = Field(..., description="Basis index m of the component")
    value: PolyQ = Field(..., description="Coefficient of e_m")

    def __str__(self) -> str:
        i, j, k = self.triple
        return f"J({i},{j},{k})[e{self.component}] = {self.value}"


@dataclass(frozen=True)
class BaseChange:
    """Invertible n × n rational matrix acting on structure constants."""

    matrix: QMatrix

    def __post_init__(self):
        if not self.matrix.is_square:
            raise SingularBaseChangeError(f"Base change must be square, got {self.matrix.shape}")
        if self.matrix.determinant() == 0:
            raise SingularBaseChangeError("Base change matrix has determinant 0")

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike]) -> "BaseChange":
        return cls(QMatrix.diagonal(values))

    @classmethod
    def permutation(cls, images: Sequence[int]) -> "BaseChange":
        """Base change sending e_i to e_{images[i-1]} (1-based images)."""
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise SingularBaseChangeError(f"Not a permutation of 1..{n}: {list(images)}")
        return cls(QMatrix.from_sparse(n, n, {(images[i] - 1, i): 1 for i in range(n)}))

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __matmul__(self, other: "BaseChange") -> "BaseChange":
        if not isinstance(other, BaseChange):
            return NotImplemented
        return BaseChange(self.matrix @ other.matrix)

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(vector)
