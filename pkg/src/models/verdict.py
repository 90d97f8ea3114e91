"""
Result models of the Einstein-nilradical decision.

Every rational is serialized as a ``p/q`` string, so a verdict dumped
with ``to_json`` parses back into an equal model and dumps to the same
bytes.
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from .matrix import SolutionFamily
from .rational import Rational, format_rational


class InvariantViolationError(Exception):
    """Custom exception for an internal consistency check that must never fail."""

    pass


class RootSet(BaseModel):
    """
    Roots α_ij^k = f_k − f_i − f_j of the nonzero structure constants.

    Triples are 1-based with i < j, in lexicographic order.
    """

    n: int = Field(..., ge=0, description="Ambient dimension")
    roots: List[Tuple[int, int, int]] = Field(default_factory=list, description="(i, j, k) triples")

    @model_validator(mode="after")
    def check_order(self) -> "RootSet":
        for i, j, k in self.roots:
            if not (1 <= i < j <= self.n and 1 <= k <= self.n):
                raise ValueError(f"Root ({i},{j},{k}) invalid for dimension {self.n}")
        if self.roots != sorted(self.roots) or len(set(self.roots)) != len(self.roots):
            raise ValueError("Roots must be distinct and in lexicographic order")
        return self

    def __len__(self) -> int:
        return len(self.roots)

    def vector(self, index: int) -> Tuple[int, ...]:
        """Coordinates of the root at ``index`` in the basis f_1..f_n."""
        i, j, k = self.roots[index]
        values = [0] * self.n
        values[k - 1] += 1
        values[i - 1] -= 1
        values[j - 1] -= 1
        return tuple(values)

    def vectors(self) -> List[Tuple[int, ...]]:
        return [self.vector(index) for index in range(len(self.roots))]


class CertificateKind(str, Enum):
    CONSTANT_COORDINATE = "constant_coordinate"
    FARKAS = "farkas"
    INCONSISTENT = "inconsistent"
    NONPOSITIVE_EIGENVALUE = "nonpositive_eigenvalue"


class Certificate(BaseModel):
    """
    Evidence that no positive solution exists.

    - constant_coordinate: ``coordinate`` (0-based) of the family never
      depends on the parameters and equals ``value`` ≤ 0
    - farkas: ``multipliers`` y ≥ 0, y ≠ 0 with yᵗB = 0 and yᵗp = ``value`` ≤ 0
    - inconsistent: ``multipliers`` y with yᵗU = 0 and yᵗ1 = ``value`` ≠ 0
    - nonpositive_eigenvalue: eigenvalue ``coordinate`` of φ equals ``value`` ≤ 0
    """

    kind: CertificateKind
    coordinate: Optional[int] = Field(default=None, ge=0, description="0-based index")
    value: Rational = Field(..., description="The offending value")
    multipliers: Optional[List[Rational]] = Field(default=None, description="Combination coefficients")

    @model_validator(mode="after")
    def check_fields(self) -> "Certificate":
        needs_coordinate = self.kind in (CertificateKind.CONSTANT_COORDINATE, CertificateKind.NONPOSITIVE_EIGENVALUE)
        if needs_coordinate and self.coordinate is None:
            raise ValueError(f"{self.kind.value} certificate needs a coordinate")
        if not needs_coordinate and self.multipliers is None:
            raise ValueError(f"{self.kind.value} certificate needs multipliers")
        return self

    def describe(self) -> str:
        value = format_rational(self.value)
        if self.kind == CertificateKind.CONSTANT_COORDINATE:
            return f"coordinate {self.coordinate + 1} constant {value}"
        if self.kind == CertificateKind.NONPOSITIVE_EIGENVALUE:
            return f"eigenvalue {self.coordinate + 1} of the pre-Einstein derivation is {value}"
        y = ", ".join(format_rational(v) for v in self.multipliers or [])
        if self.kind == CertificateKind.FARKAS:
            return f"y = ({y}) ≥ 0 with yᵗB = 0 and yᵗp = {value}"
        return f"Uv = 1 inconsistent: y = ({y}) with yᵗU = 0 and yᵗ1 = {value}"


class FeasibilityWitness(BaseModel):
    """Parameter values t with particular + Σ tᵢ·basisᵢ strictly positive."""

    parameters: List[Rational] = Field(default_factory=list, description="Values of t1..tm")
    vector: List[Rational] = Field(..., description="The positive member")


class Infeasible(BaseModel):
    certificate: Certificate


class VerdictStatus(str, Enum):
    YES = "Yes"
    NO = "No"
    NOT_APPLICABLE = "NotApplicable"


class ENVerdict(BaseModel):
    """
    Outcome of the Einstein-nilradical test for one algebra.

    Yes carries a positive witness v with Uv = 1, No carries a
    certificate, NotApplicable carries a reason.
    """

    model_config = ConfigDict(populate_by_name=True)

    name: str = Field(default="", description="Algebra label")
    status: VerdictStatus
    eigenvalues: List[Rational] = Field(default_factory=list, description="Pre-Einstein eigenvalues")
    eigenvalue_type: Optional[List[Tuple[int, int]]] = Field(default=None, description="(k, multiplicity) pairs")
    roots: List[Tuple[int, int, int]] = Field(default_factory=list, description="Root triples in order")
    gram: List[List[Rational]] = Field(default_factory=list, alias="U", description="Gram matrix U")
    family: Optional[SolutionFamily] = Field(default=None, description="All solutions of Uv = 1")
    witness: Optional[FeasibilityWitness] = Field(default=None, description="Positive solution")
    certificate: Optional[Certificate] = Field(default=None, description="Infeasibility evidence")
    reason: Optional[str] = Field(default=None, description="Why the test does not apply")

    @model_validator(mode="after")
    def check_evidence(self) -> "ENVerdict":
        if self.status == VerdictStatus.YES and self.witness is None:
            raise ValueError("Yes verdict without a witness")
        if self.status == VerdictStatus.NO and self.certificate is None:
            raise ValueError("No verdict without a certificate")
        if self.status == VerdictStatus.NOT_APPLICABLE and not self.reason:
            raise ValueError("NotApplicable verdict without a reason")
        return self

    @computed_field
    @property
    def is_einstein_nilradical(self) -> Optional[bool]:
        if self.status == VerdictStatus.NOT_APPLICABLE:
            return None
        return self.status == VerdictStatus.YES

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, by_alias=True)
