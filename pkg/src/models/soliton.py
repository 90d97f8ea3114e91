"""
Metric and nilsoliton report models for the numeric flow.
"""

import math
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from .lie_algebra import LieAlgebra


class MetricState(BaseModel):
    """
    A diagonal metric, stored as log-scales of the basis.

    The vector e_i is rescaled to exp(log_scales[i])·e_i and the rescaled
    basis is taken orthonormal.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    algebra: LieAlgebra
    log_scales: List[float] = Field(..., description="One log-scale per basis vector")

    @field_validator("log_scales")
    @classmethod
    def check_finite(cls, v: List[float]) -> List[float]:
        if not all(math.isfinite(x) for x in v):
            raise ValueError("Log-scales must be finite")
        return [float(x) for x in v]

    @model_validator(mode="after")
    def check_length(self) -> "MetricState":
        if len(self.log_scales) != self.algebra.dim:
            raise ValueError(
                f"{len(self.log_scales)} log-scales for an algebra of dimension {self.algebra.dim}"
            )
        return self

    @classmethod
    def unit(cls, algebra: LieAlgebra) -> "MetricState":
        """The metric making the given basis orthonormal."""
        return cls(algebra=algebra, log_scales=[0.0] * algebra.dim)


class SolitonReport(BaseModel):
    """Fit of Ric = cI + φ at a diagonal metric."""

    name: str = Field(default="", description="Algebra label")
    c: float = Field(..., description="Fitted constant")
    phi_diag: List[float] = Field(..., description="diag(Ric) − c, a derivation at a soliton")
    residual: float = Field(..., description="‖Ric − cI − φ‖₂ relative to ‖Ric‖₂")
    derivation_residual: float = Field(..., description="Violation of the derivation identity by φ")
    converged: bool = Field(..., description="Both residuals below the tolerance")
    iterations: int = Field(default=0, ge=0, description="Flow iterations performed")
    functional: Optional[float] = Field(default=None, description="tr(Ric²)/tr(Ric)² at the final state")
    log_scales: List[float] = Field(default_factory=list, description="Final log-scales")

    @computed_field
    @property
    def phi_ratios(self) -> Optional[List[float]]:
        """φ divided by its first entry; None when that entry vanishes."""
        if not self.phi_diag or abs(self.phi_diag[0]) < 1e-300:
            return None
        return [value / self.phi_diag[0] for value in self.phi_diag]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)
