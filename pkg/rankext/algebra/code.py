"""
F_q-linear rank-metric codes.

A code remembers the generators it was given (maps are stated on them) and a
canonical basis: the RREF of the generators flattened to vectors of length
m*n. Membership is a pivot read-out against that basis, so it never needs
enumeration.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from rankext.algebra.gf import FieldSpec
from rankext.algebra.matfq import (
    MatrixFq,
    SubspaceBasis,
    array_rank,
    raw,
    rref,
)
from rankext.core.config import settings
from rankext.core.errors import (
    CodeTooLarge,
    DimensionMismatch,
    FieldMismatch,
    ZeroCode,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RankCode:
    field: FieldSpec
    m: int
    n: int
    generators: Tuple[MatrixFq, ...]
    basis: object  # galois array (dim, m*n), RREF
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def size(self) -> int:
        return self.field.q**self.dim

    def basis_matrices(self) -> List[MatrixFq]:
        return [MatrixFq(self.field, row.reshape(self.m, self.n)) for row in self.basis]

    def coordinates(self, M: MatrixFq) -> Optional[Tuple[int, ...]]:
        """Coefficients of M over the basis, or None if M is not a codeword."""
        if M.field != self.field or M.shape != (self.m, self.n):
            return None
        v = M.flat()
        if self.dim == 0:
            return () if not np.any(raw(v)) else None
        coeffs = v[list(self.pivots)]
        if not np.array_equal(raw(coeffs.reshape(1, -1) @ self.basis).reshape(-1), raw(v)):
            return None
        return tuple(int(c) for c in coeffs)

    def contains(self, M: MatrixFq) -> bool:
        return self.coordinates(M) is not None

    def combine(self, coeffs: Sequence[int]) -> MatrixFq:
        """The codeword with the given basis coefficients."""
        c = self.field.gf(np.asarray(coeffs, dtype=np.int64))
        if self.dim == 0:
            return MatrixFq(self.field, self.field.gf.Zeros((self.m, self.n)))
        return MatrixFq(self.field, (c.reshape(1, -1) @ self.basis).reshape(self.m, self.n))


def _pivots_of(reduced) -> Tuple[int, ...]:
    return tuple(int(np.flatnonzero(row)[0]) for row in raw(reduced))


def code_new(field: FieldSpec, m: int, n: int, generators: Sequence[MatrixFq]) -> RankCode:
    """
    Build a code from generators, keeping the given list verbatim.

    Example:
        code_new(F2, 2, 2, [M, M])  ->  dim 1
    """
    generators = tuple(generators)
    for G in generators:
        if G.field != field:
            raise FieldMismatch(f"Generator over {G.field}, code over {field}")
        if G.shape != (m, n):
            raise DimensionMismatch(f"Generator of shape {G.shape} in a {m}x{n} code")
    if generators:
        stacked = field.gf(np.stack([raw(G.flat()) for G in generators]))
        basis = rref(stacked)
    else:
        basis = field.gf.Zeros((0, m * n))
    code = RankCode(field, m, n, generators, basis, _pivots_of(basis))
    logger.debug(f"New {m}x{n} code over {field}: {len(generators)} generators, dim {code.dim}")
    return code


def _coefficient_tuples(field: FieldSpec, dim: int):
    return field.gf(np.array(list(itertools.product(range(field.q), repeat=dim)), dtype=np.int64).reshape(-1, dim))


def check_enumerable(C: RankCode) -> None:
    if C.size > settings.MAX_CODEWORDS:
        logger.warning(f"Code of size {C.size} exceeds MAX_CODEWORDS = {settings.MAX_CODEWORDS}")
        raise CodeTooLarge(
            f"{C.size} codewords exceed the enumeration cap {settings.MAX_CODEWORDS}",
            size=C.size,
            cap=settings.MAX_CODEWORDS,
        )


def codeword_array(C: RankCode):
    """
    All q^dim codewords as a (q^dim, m, n) galois array.

    Coefficient tuples run in itertools.product order, so index 0 is the
    zero codeword.
    """
    check_enumerable(C)
    if C.dim == 0:
        return C.field.gf.Zeros((1, C.m, C.n))
    coeffs = _coefficient_tuples(C.field, C.dim)
    return (coeffs @ C.basis).reshape(-1, C.m, C.n)


def enumerate_codewords(C: RankCode) -> Iterator[MatrixFq]:
    check_enumerable(C)
    for coeffs in itertools.product(range(C.field.q), repeat=C.dim):
        yield C.combine(coeffs)


def min_distance(C: RankCode) -> int:
    if C.dim == 0:
        raise ZeroCode("The zero code has no minimum distance")
    best = min(C.m, C.n)
    for word in codeword_array(C)[1:]:
        r = array_rank(word)
        if 0 < r < best:
            best = r
            if best == 1:
                break
    return best


def code_line_spaces(C: RankCode) -> Tuple[SubspaceBasis, SubspaceBasis]:
    """
    Row and column space of the whole code: the spans of all codeword row
    (column) spaces, read off the stacked basis (stacked transposes).
    """
    if C.dim == 0:
        return SubspaceBasis(C.field, C.n, ()), SubspaceBasis(C.field, C.m, ())
    blocks = C.basis.reshape(-1, C.m, C.n)
    rows = blocks.reshape(-1, C.n)
    cols = np.swapaxes(blocks, 1, 2).reshape(-1, C.m)
    return SubspaceBasis.span(C.field, C.n, rows), SubspaceBasis.span(C.field, C.m, cols)


def rank_one_basis(C: RankCode) -> Optional[List[MatrixFq]]:
    """
    dim-many independent rank-one codewords, or None when the rank-one
    codewords do not span C. Greedy in enumeration order.
    """
    chosen: List = []
    if C.dim == 0:
        return []
    for word in codeword_array(C)[1:]:
        if array_rank(word) != 1:
            continue
        trial = C.field.gf(np.stack([raw(w.reshape(-1)) for w in chosen + [word]]))
        if array_rank(trial) > len(chosen):
            chosen.append(word)
            if len(chosen) == C.dim:
                return [MatrixFq(C.field, w) for w in chosen]
    return None


def image_code(C: RankCode, images: Sequence[MatrixFq]) -> RankCode:
    return code_new(C.field, C.m, C.n, images)
