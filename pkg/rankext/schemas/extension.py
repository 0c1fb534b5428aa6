from pydantic import BaseModel, Field
from typing import List, Optional, Tuple

from rankext.algebra.extend import ExtensionWitness, ScalarAssignment
from rankext.algebra.gf import FieldSpec
from rankext.algebra.isometry import PropertyPWitness
from rankext.schemas.algebra import FieldSchema, MatrixSchema


# Elementary scalar assignment
class AssignmentSchema(BaseModel):
    """φ(E_{i,j}) = α E_{i,j} for each listed position."""
    field: FieldSchema
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    positions: List[Tuple[int, int]]
    scalars: List[int]

    def to_domain(self) -> Tuple[FieldSpec, ScalarAssignment]:
        F = self.field.to_domain()
        return F, ScalarAssignment.build(F, self.positions, self.scalars, self.m, self.n)


# Ambient isometry M -> AMB or AM^tB
class WitnessSchema(BaseModel):
    """Extension witness."""
    A: MatrixSchema
    B: MatrixSchema
    transposed: bool = False

    @classmethod
    def from_domain(cls, w: ExtensionWitness) -> "WitnessSchema":
        return cls(A=MatrixSchema.from_domain(w.A), B=MatrixSchema.from_domain(w.B), transposed=w.transposed)


# Property 1 pair
class PropertyPSchema(BaseModel):
    """Pair (A, B) with rowsp(φC) = rowsp(CB) and colsp(φC) = colsp(AC)."""
    A: MatrixSchema
    B: MatrixSchema

    def to_domain(self, F: Optional[FieldSpec] = None) -> PropertyPWitness:
        return PropertyPWitness(self.A.to_domain(F), self.B.to_domain(F))

    @classmethod
    def from_domain(cls, w: PropertyPWitness) -> "PropertyPSchema":
        return cls(A=MatrixSchema.from_domain(w.A), B=MatrixSchema.from_domain(w.B))
