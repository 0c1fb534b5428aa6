"""
Linear maps between rank-metric codes.

Covers isometry checks, the search for a pair (A, B) with
rowsp(φ(C)) = rowsp(CB) and colsp(φ(C)) = colsp(AC) for every codeword C
("Property 1"), cheap one-sided refutations of that property, and the
multiplicativity obstruction for identity-fixing maps on square codes.
"""

import enum
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from rankext.algebra.code import RankCode, code_line_spaces, code_new, codeword_array
from rankext.algebra.matfq import (
    MatrixFq,
    array_rank,
    batch_is_zero,
    bmm,
    gl_batches,
    gl_order,
    identity,
    left_kernel,
    line_spaces,
    multiplicative_order,
    raw,
    right_kernel,
)
from rankext.core.config import settings
from rankext.core.errors import (
    AmbientMismatch,
    DimensionMismatch,
    FieldMismatch,
    InconsistentAssignment,
    InputError,
    NotInjective,
    SearchSpaceTooLarge,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CodeMap:
    """φ: domain -> codomain, stated on the domain generators."""

    domain: RankCode
    codomain: RankCode
    images: Tuple[MatrixFq, ...]
    basis_images: object  # galois (dim, m*n): image of each basis row

    @property
    def field(self):
        return self.domain.field

    def apply(self, M: MatrixFq) -> MatrixFq:
        coords = self.domain.coordinates(M)
        if coords is None:
            raise InputError("Matrix is not a codeword of the domain")
        if not coords:
            return MatrixFq(self.field, self.field.gf.Zeros((self.domain.m, self.domain.n)))
        c = self.field.gf(np.asarray(coords, dtype=np.int64)).reshape(1, -1)
        return MatrixFq(self.field, (c @ self.basis_images).reshape(self.domain.m, self.domain.n))

    def image_array(self, words=None):
        """Images of codeword_array(domain), index for index."""
        C = self.domain
        if words is None:
            words = codeword_array(C)
        if C.dim == 0:
            return C.field.gf.Zeros((1, C.m, C.n))
        coeffs = words.reshape(words.shape[0], -1)[:, list(C.pivots)]
        return (coeffs @ self.basis_images).reshape(-1, C.m, C.n)

    def basis_image_matrices(self) -> List[MatrixFq]:
        return [MatrixFq(self.field, row.reshape(self.domain.m, self.domain.n)) for row in self.basis_images]


def map_new(
    domain: RankCode,
    images: Sequence[MatrixFq],
    codomain: Optional[RankCode] = None,
) -> CodeMap:
    """
    Build the map generator_i -> images[i].

    The basis images come from row reducing [X | Y], X being the generator
    coordinates on the pivot columns and Y the images: the top rows give the
    basis map, any leftover nonzero row is a violated linear relation.
    """
    images = tuple(images)
    if len(images) != len(domain.generators):
        raise DimensionMismatch(
            f"{len(domain.generators)} generators but {len(images)} images",
        )
    F = domain.field
    for Y in images:
        if Y.field != F:
            raise FieldMismatch(f"Image over {Y.field}, domain over {F}")
        if Y.shape != (domain.m, domain.n):
            raise DimensionMismatch(f"Image of shape {Y.shape} for a {domain.m}x{domain.n} code")

    k = domain.dim
    mn = domain.m * domain.n
    if not images:
        basis_images = F.gf.Zeros((0, mn))
    else:
        gens = np.stack([raw(G.flat()) for G in domain.generators])
        X = gens[:, list(domain.pivots)]
        Y = np.stack([raw(I.flat()) for I in images])
        augmented = F.gf(np.hstack([X, Y]).astype(np.int64))
        if k:
            reduced = augmented.row_reduce(ncols=k)
        else:
            reduced = augmented
        leftover = raw(reduced[k:, k:])
        if np.any(leftover):
            raise InconsistentAssignment("Images violate a linear relation among the generators")
        basis_images = reduced[:k, k:]

    if array_rank(basis_images) < k:
        raise NotInjective("The assignment is not injective")

    if codomain is None:
        codomain = code_new(F, domain.m, domain.n, images)
    else:
        if codomain.field != F or (codomain.m, codomain.n) != (domain.m, domain.n):
            raise AmbientMismatch("Codomain lives in a different ambient space")
        for Y in images:
            if not codomain.contains(Y):
                raise AmbientMismatch("An image lies outside the codomain")

    return CodeMap(domain, codomain, images, basis_images)


def _rank_pairs(phi: CodeMap):
    words = codeword_array(phi.domain)
    return words, phi.image_array(words)


def first_rank_violation(phi: CodeMap) -> Optional[Tuple[MatrixFq, int, int]]:
    """First codeword (enumeration order) whose rank φ changes."""
    words, images = _rank_pairs(phi)
    for C, D in zip(words, images):
        r, s = array_rank(C), array_rank(D)
        if r != s:
            return MatrixFq(phi.field, C), r, s
    return None


def is_isometry(phi: CodeMap) -> bool:
    """
    True iff rank(C) = rank(φ(C)) for every codeword.

    Checking a basis alone is not enough; the whole domain is enumerated.
    """
    violation = first_rank_violation(phi)
    if violation is not None:
        C, r, s = violation
        logger.info(f"Rank changes from {r} to {s} on {C.to_rows()}")
        return False
    return True


# Property 1


@dataclass(frozen=True)
class PropertyPWitness:
    A: MatrixFq
    B: MatrixFq


class RefutationKind(str, enum.Enum):
    RANK = "rank"
    DIMENSION = "dimension"
    INCLUSION = "inclusion"


@dataclass(frozen=True)
class Refutation:
    """
    Evidence that no Property 1 pair exists.

    ``side`` is "row" or "column". For inclusion refutations C's space lies
    in C_prime's while φ(C)'s does not lie in φ(C_prime)'s.
    """

    kind: RefutationKind
    side: Optional[str] = None
    C: Optional[MatrixFq] = None
    C_prime: Optional[MatrixFq] = None
    domain_dim: Optional[int] = None
    image_dim: Optional[int] = None


def _padded(kernels, width: int, field):
    """Stack kernels (rows) transposed into (N, width, width), zero padded."""
    out = np.zeros((len(kernels), width, width), dtype=np.int64)
    for idx, K in enumerate(kernels):
        r = raw(K)
        out[idx, :, : r.shape[0]] = r.T
    return field.gf(out)


def _row_conditions(phi: CodeMap, words, images):
    """(C, K^T) per nonzero codeword, K spanning the right kernel of φ(C)."""
    n = phi.domain.n
    kernels = [right_kernel(D) for D in images[1:]]
    return words[1:], _padded(kernels, n, phi.field)


def _col_conditions(phi: CodeMap, words, images):
    """(C, L) per nonzero codeword, L spanning the left kernel of φ(C)."""
    m = phi.domain.m
    kernels = [left_kernel(D) for D in images[1:]]
    padded = _padded(kernels, m, phi.field)
    return words[1:], np.swapaxes(padded, 1, 2)


def _first_valid(field, n: int, check) -> Optional[MatrixFq]:
    for batch in gl_batches(field, n):
        ok = check(batch)
        if np.any(ok):
            return MatrixFq(field, batch[int(np.argmax(ok))])
    return None


def property_p_witness(phi: CodeMap) -> Optional[PropertyPWitness]:
    """
    First (A, B) in A-outer, B-inner enumeration order satisfying Property 1.

    Once ranks agree, rowsp(φC) = rowsp(CB) iff C·B·K^T = 0 for K spanning
    the right kernel of φ(C), and colsp(φC) = colsp(AC) iff L·A·C = 0 for L
    spanning its left kernel. The two conditions do not interact, so the
    first valid pair is (first valid A, first valid B).
    """
    C1 = phi.domain
    F = C1.field
    total = gl_order(F.q, C1.m) * gl_order(F.q, C1.n)
    if total > settings.MAX_SEARCH:
        logger.warning(f"Property 1 search over {total} pairs exceeds MAX_SEARCH")
        raise SearchSpaceTooLarge(
            f"|GL_m|*|GL_n| = {total} exceeds the search cap {settings.MAX_SEARCH}",
            size=total,
            cap=settings.MAX_SEARCH,
        )
    words, images = _rank_pairs(phi)
    for C, D in zip(words, images):
        if array_rank(C) != array_rank(D):
            logger.info("Map changes a rank, so no Property 1 pair exists")
            return None

    logger.info(f"Searching Property 1 pairs for a {C1.m}x{C1.n} code of dim {C1.dim}")
    row_words, kernel_t = _row_conditions(phi, words, images)
    col_words, left = _col_conditions(phi, words, images)

    def b_ok(Bs):
        ok = np.ones(Bs.shape[0], dtype=bool)
        for C, KT in zip(row_words, kernel_t):
            ok &= batch_is_zero(bmm(bmm(C[None], Bs), KT[None]))
            if not ok.any():
                break
        return ok

    def a_ok(As):
        ok = np.ones(As.shape[0], dtype=bool)
        for C, L in zip(col_words, left):
            ok &= batch_is_zero(bmm(bmm(L[None], As), C[None]))
            if not ok.any():
                break
        return ok

    A = _first_valid(F, C1.m, a_ok)
    if A is None:
        return None
    B = _first_valid(F, C1.n, b_ok)
    if B is None:
        return None
    return PropertyPWitness(A, B)


def verify_property_p(phi: CodeMap, A: MatrixFq, B: MatrixFq) -> bool:
    """Independent check of both equalities on every codeword."""
    C1 = phi.domain
    if A.shape != (C1.m, C1.m) or B.shape != (C1.n, C1.n):
        raise DimensionMismatch("Witness shapes do not match the code")
    if A.rank() < C1.m or B.rank() < C1.n:
        return False
    words, images = _rank_pairs(phi)
    for C, D in zip(words, images):
        M = MatrixFq(phi.field, C)
        target_rows, target_cols = line_spaces(MatrixFq(phi.field, D))
        rows, _ = line_spaces(M @ B)
        _, cols = line_spaces(A @ M)
        if rows != target_rows or cols != target_cols:
            return False
    return True


def _inclusion_violation(phi: CodeMap, C: MatrixFq, Cp: MatrixFq, side: str) -> bool:
    if side == "row":
        K = right_kernel(Cp.array)
        Kphi = right_kernel(phi.apply(Cp).array)
        included = K.shape[0] == 0 or not np.any(raw(C.array @ K.T))
        if not included:
            return False
        return Kphi.shape[0] > 0 and bool(np.any(raw(phi.apply(C).array @ Kphi.T)))
    L = left_kernel(Cp.array)
    Lphi = left_kernel(phi.apply(Cp).array)
    included = L.shape[0] == 0 or not np.any(raw(L @ C.array))
    if not included:
        return False
    return Lphi.shape[0] > 0 and bool(np.any(raw(Lphi @ phi.apply(C).array)))


def check_inclusion_pair(phi: CodeMap, C: MatrixFq, C_prime: MatrixFq) -> Optional[Refutation]:
    """Does the given pair refute Property 1? Row side checked first."""
    for side in ("row", "column"):
        if _inclusion_violation(phi, C, C_prime, side):
            return Refutation(RefutationKind.INCLUSION, side=side, C=C, C_prime=C_prime)
    return None


def refute_property_p(phi: CodeMap) -> Optional[Refutation]:
    """
    Look for cheap evidence against Property 1.

    Tried in order: a codeword whose rank changes, a mismatch between the
    row (column) space dimensions of the domain and of its image, and a pair
    C, C' whose space inclusion φ breaks. None does not prove Property 1.
    """
    violation = first_rank_violation(phi)
    if violation is not None:
        C, r, s = violation
        return Refutation(RefutationKind.RANK, C=C, domain_dim=r, image_dim=s)

    C1 = phi.domain
    image = code_new(C1.field, C1.m, C1.n, phi.basis_image_matrices())
    rows1, cols1 = code_line_spaces(C1)
    rows2, cols2 = code_line_spaces(image)
    if rows1.dim != rows2.dim:
        return Refutation(RefutationKind.DIMENSION, side="row", domain_dim=rows1.dim, image_dim=rows2.dim)
    if cols1.dim != cols2.dim:
        return Refutation(RefutationKind.DIMENSION, side="column", domain_dim=cols1.dim, image_dim=cols2.dim)

    F = C1.field
    words, images = _rank_pairs(phi)
    words, images = words[1:], images[1:]
    for idx in range(words.shape[0]):
        Cp, Dp = words[idx], images[idx]
        # rows
        K, Kphi = right_kernel(Cp), right_kernel(Dp)
        if K.shape[0]:
            included = batch_is_zero(bmm(words, K.T[None]))
        else:
            included = np.ones(words.shape[0], dtype=bool)
        if Kphi.shape[0]:
            broken = ~batch_is_zero(bmm(images, Kphi.T[None]))
            hits = np.flatnonzero(included & broken)
            if hits.size:
                return Refutation(
                    RefutationKind.INCLUSION,
                    side="row",
                    C=MatrixFq(F, words[hits[0]]),
                    C_prime=MatrixFq(F, Cp),
                )
        # columns
        L, Lphi = left_kernel(Cp), left_kernel(Dp)
        if L.shape[0]:
            included = batch_is_zero(bmm(L[None], words))
        else:
            included = np.ones(words.shape[0], dtype=bool)
        if Lphi.shape[0]:
            broken = ~batch_is_zero(bmm(Lphi[None], images))
            hits = np.flatnonzero(included & broken)
            if hits.size:
                return Refutation(
                    RefutationKind.INCLUSION,
                    side="column",
                    C=MatrixFq(F, words[hits[0]]),
                    C_prime=MatrixFq(F, Cp),
                )
    return None


# Multiplicativity


@dataclass(frozen=True)
class Obstruction:
    """
    Why an identity-fixing map cannot extend.

    kind "product": rank(XY) differs from both rank(φXφY) and rank(φYφX).
    kind "order": X is invertible but φ(X) has a different multiplicative order.
    """

    kind: str
    X: MatrixFq
    Y: Optional[MatrixFq] = None
    expected: Optional[int] = None
    found: Tuple[int, ...] = ()


def fixes_identity(phi: CodeMap) -> bool:
    C1 = phi.domain
    if C1.m != C1.n:
        return False
    Id = identity(C1.field, C1.n)
    return C1.contains(Id) and phi.apply(Id) == Id


def identity_fixing_obstruction(phi: CodeMap) -> Optional[Obstruction]:
    """
    An extension of an identity-fixing φ has the form M -> AMA^-1 or
    M -> AM^tA^-1, so φ has to respect products (up to order) and the
    multiplicative order of invertible codewords. Returns the first
    violation, or None when the check does not apply or finds nothing.
    """
    if not fixes_identity(phi):
        return None
    F = phi.field
    words, images = _rank_pairs(phi)
    count = words.shape[0]
    for x in range(1, count):
        X, PX = words[x], images[x]
        for y in range(1, count):
            Y, PY = words[y], images[y]
            r = array_rank(X @ Y)
            found = (array_rank(PX @ PY), array_rank(PY @ PX))
            if r not in found:
                return Obstruction(
                    "product",
                    X=MatrixFq(F, X),
                    Y=MatrixFq(F, Y),
                    expected=r,
                    found=found,
                )
    for x in range(1, count):
        X = MatrixFq(F, words[x])
        if X.rank() < X.n:
            continue
        before = multiplicative_order(X)
        after = multiplicative_order(MatrixFq(F, images[x]))
        if before != after:
            return Obstruction("order", X=X, expected=before, found=(after,))
    return None
