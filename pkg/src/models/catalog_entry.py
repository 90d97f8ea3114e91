"""
Catalog entry models.

A catalog entry pairs an 8-dimensional filiform algebra with its
metadata (rank, class) and the verdict and eigenvalue type the
classification table records for it.
"""

from typing import Dict, List, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from .lie_algebra import LieAlgebra
from .rational import Rational, RationalLike, parse_rational
from .verdict import VerdictStatus


class ExpectedVerdict(BaseModel):
    """
    Recorded verdict of an algebra or family.

    ``exceptional`` lists the parameter values at which a family that
    is otherwise an Einstein nilradical is not one.
    """

    status: Optional[VerdictStatus] = Field(
        default=None, description="Fixed verdict; None when it depends on the parameter"
    )
    parameter: Optional[str] = Field(default=None, description="Parameter the rule refers to")
    exceptional: List[Rational] = Field(default_factory=list, description="Values giving No")
    eigenvalue_type: Optional[str] = Field(default=None, description="Type of the Yes members")

    @model_validator(mode="after")
    def check_rule(self) -> "ExpectedVerdict":
        if (self.status is None) == (self.parameter is None):
            raise ValueError("Give either a fixed status or a parameter rule")
        return self

    @computed_field
    @property
    def rule(self) -> str:
        if self.status is not None:
            return self.status.value
        values = ", ".join(str(v) for v in self.exceptional)
        return f"Yes iff {self.parameter} ∉ {{{values}}}"

    def at(self, params: Mapping[str, RationalLike]) -> VerdictStatus:
        """Verdict for one member of the family."""
        if self.status is not None:
            return self.status
        value = parse_rational(params[self.parameter])
        return VerdictStatus.NO if value in self.exceptional else VerdictStatus.YES


class CatalogEntry(BaseModel):
    """One row of the 8-dimensional inventory."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    slug: str = Field(..., description="ASCII name used on the command line")
    display: str = Field(..., description="Mathematical name")
    algebra: LieAlgebra = Field(..., description="Structure constants, possibly parametric")
    rank: int = Field(..., ge=0, le=2, description="Dimension of a maximal torus of derivations")
    klass: str = Field(..., description="rank2, A or B")
    r: Optional[int] = Field(default=None, description="Index r of the class A_r or B_r")
    expected: ExpectedVerdict

    @model_validator(mode="after")
    def check_class(self) -> "CatalogEntry":
        if self.klass not in ("rank2", "A", "B"):
            raise ValueError(f"Unknown class '{self.klass}'")
        if (self.klass == "rank2") != (self.r is None):
            raise ValueError("Classes A and B need r; rank2 has none")
        return self

    @computed_field
    @property
    def class_label(self) -> str:
        return "rank 2" if self.klass == "rank2" else f"{self.klass}_{self.r}"

    @property
    def params(self) -> tuple:
        return self.algebra.params


class Table2Row(BaseModel):
    """A row of the classification table with the samples used to check it."""

    label: str = Field(..., description="Row label, e.g. 'g_α(8), α ≠ -2'")
    slug: str = Field(..., description="Catalog entry the row refers to")
    samples: List[Dict[str, Rational]] = Field(
        default_factory=lambda: [{}], description="Parameter assignments to evaluate"
    )
    expected_status: VerdictStatus
    expected_type: Optional[str] = Field(default=None, description="Recorded eigenvalue type")


class Table2Result(BaseModel):
    """Computed outcome of one Table2Row."""

    row: Table2Row
    statuses: List[VerdictStatus] = Field(..., description="Verdict per sample")
    types: List[Optional[str]] = Field(..., description="Computed eigenvalue type per sample")

    @computed_field
    @property
    def matches(self) -> bool:
        status_ok = all(s == self.row.expected_status for s in self.statuses)
        type_ok = self.row.expected_type is None or all(t == self.row.expected_type for t in self.types)
        return status_ok and type_ok
