from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional, Tuple

from rankext.algebra.isometry import Obstruction, Refutation
from rankext.algebra.paths import ChainCensus, Path, PathCheck, ReductionChain
from rankext.schemas.algebra import Grid
from rankext.schemas.extension import PropertyPSchema, WitnessSchema


PositionList = List[Tuple[int, int]]


# Errors
class ErrorBody(BaseModel):
    """Machine-readable error."""
    code: str
    detail: str
    context: Optional[Dict[str, Any]] = None


class ErrorReport(BaseModel):
    error: ErrorBody


# Matrices and codes
class RankReport(BaseModel):
    rank: int


class DistanceReport(BaseModel):
    distance: int


class MinDistanceReport(BaseModel):
    dim: int
    min_distance: int


class LineSpacesReport(BaseModel):
    """RREF bases of the row and column space."""
    rowspace: Grid
    colspace: Grid
    row_dim: int
    col_dim: int


# Isometries
class RankViolation(BaseModel):
    codeword: Grid
    rank: int
    image_rank: int


class IsometryReport(BaseModel):
    isometry: bool
    violation: Optional[RankViolation] = None


class RefutationSchema(BaseModel):
    """Why no Property 1 pair can exist."""
    kind: str
    side: Optional[str] = None
    C: Optional[Grid] = None
    C_prime: Optional[Grid] = None
    domain_dim: Optional[int] = None
    image_dim: Optional[int] = None

    @classmethod
    def from_domain(cls, r: Refutation) -> "RefutationSchema":
        return cls(
            kind=r.kind.value,
            side=r.side,
            C=r.C.to_rows() if r.C is not None else None,
            C_prime=r.C_prime.to_rows() if r.C_prime is not None else None,
            domain_dim=r.domain_dim,
            image_dim=r.image_dim,
        )


class PropertyPReport(BaseModel):
    """verdict is one of witness, refuted, absent, no-refutation."""
    verdict: str
    witness: Optional[PropertyPSchema] = None
    refutation: Optional[RefutationSchema] = None


class ObstructionSchema(BaseModel):
    kind: str
    X: Grid
    Y: Optional[Grid] = None
    expected: Optional[int] = None
    found: List[int] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, o: Obstruction) -> "ObstructionSchema":
        return cls(
            kind=o.kind,
            X=o.X.to_rows(),
            Y=o.Y.to_rows() if o.Y is not None else None,
            expected=o.expected,
            found=list(o.found),
        )


# Paths
class PathReport(BaseModel):
    """A path as a list of 1-based positions."""
    path: Optional[PositionList] = None
    closed: bool = False
    simple: bool = False
    verdict: Optional[str] = None
    reason: Optional[str] = None

    @classmethod
    def from_path(cls, path: Optional[Path]) -> "PathReport":
        if path is None:
            return cls(path=None, verdict="irreducible")
        return cls(path=[tuple(p) for p in path.positions], closed=path.closed, simple=path.simple)

    @classmethod
    def from_check(cls, check: PathCheck) -> "PathReport":
        path = check.path
        return cls(
            path=[tuple(p) for p in path.positions] if path else None,
            closed=bool(path and path.closed),
            simple=bool(path and path.simple),
            verdict=check.verdict.value,
            reason=check.reason,
        )


class ChainReport(BaseModel):
    """Supports in order and the deleted positions between them."""
    length: int
    supports: List[PositionList]
    deleted: PositionList

    @classmethod
    def from_domain(cls, chain: ReductionChain) -> "ChainReport":
        return cls(
            length=chain.length,
            supports=[[tuple(p) for p in pattern.sorted()] for pattern in chain.patterns],
            deleted=[tuple(p) for p in chain.deletions],
        )


class ChainCensusReport(BaseModel):
    """Chain-length multiset; chains listed only below the listing cap."""
    lengths: Dict[str, int]
    distinct_lengths: List[int]
    total: int
    chains: Optional[List[ChainReport]] = None

    @classmethod
    def from_domain(cls, census: ChainCensus, chains: Optional[List[ReductionChain]] = None) -> "ChainCensusReport":
        return cls(
            lengths={str(k): v for k, v in census.lengths.items()},
            distinct_lengths=census.distinct_lengths,
            total=census.total,
            chains=[ChainReport.from_domain(c) for c in chains] if chains is not None else None,
        )


# Extensions
class ElementaryViolation(BaseModel):
    position: Tuple[int, int]
    expected: int
    found: int


class ElementaryReport(BaseModel):
    """Outcome of the constructive extension of an elementary assignment."""
    isometry: bool
    witness: Optional[WitnessSchema] = None
    violation: Optional[ElementaryViolation] = None
    chain_length: Optional[int] = None


class OracleReport(BaseModel):
    extendable: bool
    witness: Optional[WitnessSchema] = None


class EquivalenceReport(BaseModel):
    equivalent: bool
    witness: Optional[WitnessSchema] = None
