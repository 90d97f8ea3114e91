"""
Derivation data models.
"""

from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_serializer

from .lie_algebra import LieAlgebra
from .matrix import QMatrix
from .rational import Rational


EigenvalueType = List[Tuple[int, int]]


class DerivationSpace(BaseModel):
    """A basis of Der(𝔫) as n × n matrices acting on column coordinates."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    algebra: LieAlgebra = Field(..., description="The algebra the derivations act on")
    basis: List[QMatrix] = Field(default_factory=list, description="Linearly independent derivations")

    @computed_field
    @property
    def dim(self) -> int:
        return len(self.basis)

    @field_serializer("basis")
    def serialize_basis(self, basis: List[QMatrix]) -> List[List[List[str]]]:
        return [matrix.to_strings() for matrix in basis]


class PreEinsteinResult(BaseModel):
    """
    The diagonal pre-Einstein derivation of an algebra in its given basis.

    ``eigenvalue_type`` lists (k, d) pairs of coprime positive integers
    and their multiplicities; it is None unless every eigenvalue is positive.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    phi: QMatrix = Field(..., description="Diagonal derivation φ")
    eigenvalues: List[Rational] = Field(..., description="Diagonal of φ in basis order")
    simple: bool = Field(..., description="All eigenvalues distinct")
    positive: bool = Field(..., description="All eigenvalues > 0")
    eigenvalue_type: Optional[EigenvalueType] = Field(
        default=None, description="Normalized (k, multiplicity) pairs in increasing k"
    )

    @field_serializer("phi")
    def serialize_phi(self, phi: QMatrix) -> List[List[str]]:
        return phi.to_strings()

    @computed_field
    @property
    def type_text(self) -> Optional[str]:
        """Eigenvalue type in the ``1<26<27`` notation."""
        if self.eigenvalue_type is None:
            return None
        return format_eigenvalue_type(self.eigenvalue_type)


def format_eigenvalue_type(pairs: Sequence[Tuple[int, int]]) -> str:
    """
    ``1<3<4`` when every multiplicity is 1, otherwise ``1<2; 2,1``.
    """
    values = "<".join(str(k) for k, _ in pairs)
    if all(d == 1 for _, d in pairs):
        return values
    return f"{values}; " + ",".join(str(d) for _, d in pairs)
