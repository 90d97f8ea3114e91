"""
Interchange document for Lie algebras.

JSON object with ``name``, ``dim``, ``params`` and ``brackets``; each
bracket record is ``{i, j, k, c}`` with 1-based indices, i < j, and the
coefficient c as PolyQ text.
"""

from typing import List

from pydantic import BaseModel, Field, field_validator


class BracketRecord(BaseModel):
    """c_ij^k = c."""

    i: int = Field(..., ge=1)
    j: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    c: str = Field(..., min_length=1, description="Coefficient as PolyQ text")


class AlgebraDocument(BaseModel):
    name: str = Field(default="", description="Display label")
    dim: int = Field(..., ge=0, description="Dimension")
    params: List[str] = Field(default_factory=list, description="Parameter identifiers")
    brackets: List[BracketRecord] = Field(default_factory=list)

    @field_validator("params")
    @classmethod
    def check_identifiers(cls, v: List[str]) -> List[str]:
        for name in v:
            if not name.isidentifier():
                raise ValueError(f"Parameter '{name}' is not an identifier")
        if len(set(v)) != len(v):
            raise ValueError("Parameters must be distinct")
        return v
