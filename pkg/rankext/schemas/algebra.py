from pydantic import BaseModel, Field, model_validator
from typing import List, Optional, Union

from rankext.algebra.code import RankCode, code_new
from rankext.algebra.gf import FieldSpec, make_field
from rankext.algebra.isometry import CodeMap, map_new
from rankext.algebra.matfq import MatrixFq
from rankext.core.errors import FieldMismatch, DimensionMismatch


Grid = List[List[int]]


# Field descriptor
class FieldSchema(BaseModel):
    """GF(p^k); modulus coefficients ascending, constant term first."""
    p: int = Field(..., ge=2)
    k: int = Field(1, ge=1)
    modulus: Optional[List[int]] = None

    def to_domain(self) -> FieldSpec:
        return make_field(self.p, self.k, self.modulus)

    @classmethod
    def from_domain(cls, F: FieldSpec) -> "FieldSchema":
        if F.k == 1:
            return cls(p=F.p, k=1)
        return cls(p=F.p, k=F.k, modulus=list(F.modulus))


# Matrix
class MatrixSchema(BaseModel):
    """Dense matrix; entries are encoded field elements."""
    field: FieldSchema
    rows: int = Field(..., ge=1)
    cols: int = Field(..., ge=1)
    entries: Grid

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")
        return self

    def to_domain(self, F: Optional[FieldSpec] = None) -> MatrixFq:
        own = self.field.to_domain()
        if F is not None and own != F:
            raise FieldMismatch(f"Matrix over {own} where {F} was expected")
        return MatrixFq.from_rows(own, self.entries)

    @classmethod
    def from_domain(cls, M: MatrixFq) -> "MatrixSchema":
        return cls(field=FieldSchema.from_domain(M.field), rows=M.m, cols=M.n, entries=M.to_rows())


def _matrix(item: Union[MatrixSchema, Grid], F: FieldSpec, m: int, n: int) -> MatrixFq:
    M = item.to_domain(F) if isinstance(item, MatrixSchema) else MatrixFq.from_rows(F, item)
    if M.shape != (m, n):
        raise DimensionMismatch(f"Matrix of shape {M.shape} in a {m}x{n} code")
    return M


# Code
class CodeSchema(BaseModel):
    """Code given by generators; each generator is a matrix object or a bare grid."""
    field: FieldSchema
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    generators: List[Union[MatrixSchema, Grid]] = Field(default_factory=list)

    def to_domain(self) -> RankCode:
        F = self.field.to_domain()
        gens = [_matrix(g, F, self.m, self.n) for g in self.generators]
        return code_new(F, self.m, self.n, gens)

    @classmethod
    def from_domain(cls, C: RankCode) -> "CodeSchema":
        return cls(
            field=FieldSchema.from_domain(C.field),
            m=C.m,
            n=C.n,
            generators=[G.to_rows() for G in C.generators],
        )


# Code map
class MapSchema(BaseModel):
    """Linear map stated on the domain generators."""
    domain: CodeSchema
    images: List[Union[MatrixSchema, Grid]]
    codomain: Optional[CodeSchema] = None

    def to_domain(self) -> CodeMap:
        domain = self.domain.to_domain()
        images = [_matrix(Y, domain.field, domain.m, domain.n) for Y in self.images]
        codomain = self.codomain.to_domain() if self.codomain is not None else None
        return map_new(domain, images, codomain=codomain)

    @classmethod
    def from_domain(cls, phi: CodeMap) -> "MapSchema":
        return cls(domain=CodeSchema.from_domain(phi.domain), images=[Y.to_rows() for Y in phi.images])
