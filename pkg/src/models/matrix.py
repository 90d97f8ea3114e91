"""
Dense rational matrices and affine solution families.

QMatrix is a small immutable row-major matrix of Fractions. Row
reduction and nullspaces live in services.exact_linear_algebra; this
module only holds the values and their elementary arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, computed_field, model_validator

from .rational import Rational, RationalLike, format_rational, parse_rational


Vector = Tuple[Fraction, ...]


def as_vector(values: Iterable[RationalLike]) -> Vector:
    """Exact tuple of Fractions from ints, Fractions or rational strings."""
    return tuple(parse_rational(v) for v in values)


def dot(left: Sequence[Fraction], right: Sequence[Fraction]) -> Fraction:
    if len(left) != len(right):
        raise ValueError(f"Length mismatch: {len(left)} vs {len(right)}")
    return sum((a * b for a, b in zip(left, right)), Fraction(0))


@dataclass(frozen=True)
class QMatrix:
    """Immutable rows × cols matrix with Fraction entries stored row-major."""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"Negative shape {self.rows}x{self.cols}")
        entries = tuple(parse_rational(v) for v in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"Expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} matrix, "
                f"got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]], cols: Optional[int] = None) -> "QMatrix":
        """Build from a list of rows; ``cols`` is needed only for an empty row list."""
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("Ragged rows")
        else:
            width = cols or 0
        return cls(len(rows), width, tuple(v for r in rows for v in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike]) -> "QMatrix":
        n = len(values)
        entries = [Fraction(0)] * (n * n)
        for i, v in enumerate(values):
            entries[i * n + i] = parse_rational(v)
        return cls(n, n, tuple(entries))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[RationalLike]], rows: Optional[int] = None) -> "QMatrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls.from_rows([list(r) for r in zip(*columns)], cols=len(columns))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, values: Mapping[Tuple[int, int], RationalLike]) -> "QMatrix":
        entries = [Fraction(0)] * (rows * cols)
        for (i, j), v in values.items():
            entries[i * cols + j] = parse_rational(v)
        return cls(rows, cols, tuple(entries))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"Index {index} out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix.from_rows([list(self.column(j)) for j in range(self.cols)], cols=self.rows)

    def diagonal_entries(self) -> Vector:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_diagonal(self) -> bool:
        return all(
            v == 0
            for index, v in enumerate(self.entries)
            if index // self.cols != index % self.cols
        )

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError(f"Trace of non-square {self.rows}x{self.cols} matrix")
        return sum(self.diagonal_entries(), Fraction(0))

    def determinant(self) -> Fraction:
        """Exact determinant by fraction-preserving elimination."""
        if not self.is_square:
            raise ValueError(f"Determinant of non-square {self.rows}x{self.cols} matrix")
        rows = self.to_rows()
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if rows[i][c] != 0), None)
            if pivot_row is None:
                return Fraction(0)
            if pivot_row != c:
                rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
                det = -det
            pivot = rows[c][c]
            det *= pivot
            for i in range(c + 1, n):
                factor = rows[i][c] / pivot
                if factor != 0:
                    for j in range(c, n):
                        rows[i][j] -= factor * rows[c][j]
        return det

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError(f"Vector of length {len(vector)} for {self.rows}x{self.cols} matrix")
        return tuple(dot(self.row(i), vector) for i in range(self.rows))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch {self.shape} @ {other.shape}")
        columns = [other.column(j) for j in range(other.cols)]
        return QMatrix(
            self.rows,
            other.cols,
            tuple(dot(self.row(i), col) for i in range(self.rows) for col in columns),
        )

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if not isinstance(other, QMatrix) or other.shape != self.shape:
            return NotImplemented
        return QMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if not isinstance(other, QMatrix) or other.shape != self.shape:
            return NotImplemented
        return QMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, factor: RationalLike) -> "QMatrix":
        f = parse_rational(factor)
        return QMatrix(self.rows, self.cols, tuple(f * v for v in self.entries))

    def to_strings(self) -> List[List[str]]:
        """Rows with every entry in ``p/q`` text form."""
        return [[format_rational(v) for v in self.row(i)] for i in range(self.rows)]

    def __str__(self) -> str:
        return "\n".join(" ".join(r) for r in self.to_strings())


class SolutionFamily(BaseModel):
    """
    All solutions of a consistent linear system A·v = b.

    Every member is ``particular + Σ tᵢ·basisᵢ`` for free rational
    parameters tᵢ named by ``param_names``.
    """

    dim: int = Field(..., ge=0, description="Length N of every member vector")
    particular: List[Rational] = Field(..., description="One exact solution")
    basis: List[List[Rational]] = Field(
        default_factory=list, description="Nullspace basis of A, possibly empty"
    )
    param_names: List[str] = Field(
        default_factory=list, description="Labels of the free parameters"
    )

    @model_validator(mode="after")
    def check_shapes(self) -> "SolutionFamily":
        if len(self.particular) != self.dim:
            raise ValueError(f"Particular solution has length {len(self.particular)}, expected {self.dim}")
        for vector in self.basis:
            if len(vector) != self.dim:
                raise ValueError(f"Basis vector has length {len(vector)}, expected {self.dim}")
        if not self.param_names:
            self.param_names = [f"t{i + 1}" for i in range(len(self.basis))]
        if len(self.param_names) != len(self.basis):
            raise ValueError("One parameter name per basis vector is required")
        return self

    @computed_field
    @property
    def free_parameters(self) -> int:
        return len(self.basis)

    def member(self, parameters: Sequence[RationalLike]) -> Vector:
        """The member vector at the given parameter values."""
        values = as_vector(parameters)
        if len(values) != len(self.basis):
            raise ValueError(f"Expected {len(self.basis)} parameter values, got {len(values)}")
        return tuple(
            self.particular[i] + sum((t * b[i] for t, b in zip(values, self.basis)), Fraction(0))
            for i in range(self.dim)
        )

    def constant_coordinates(self) -> List[int]:
        """Indices whose value does not depend on the parameters."""
        return [i for i in range(self.dim) if all(b[i] == 0 for b in self.basis)]

    def coordinate_text(self, index: int) -> str:
        """Readable affine expression of one coordinate, e.g. ``100/281 - t1``."""
        from .polynomial import PolyQ

        expression = PolyQ.constant(self.particular[index])
        for name, vector in zip(self.param_names, self.basis):
            expression = expression + PolyQ.variable(name) * vector[index]
        return str(expression)


class Inconsistent(BaseModel):
    """A linear system with no solution, with multipliers y such that yᵗA = 0 and yᵗb ≠ 0."""

    multipliers: List[Rational] = Field(..., description="Left null vector of A")
    value: Rational = Field(..., description="yᵗb, nonzero")
