"""
Extending code isometries to the whole matrix space.

Every isometry of F_q^{m×n} is M -> AMB, or M -> AM^tB when m = n. This
module builds such pairs constructively for maps that scale elementary
generators, for rank-one generated codes over GF(2), and by exhaustive
search for arbitrary maps.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from rankext.algebra.code import RankCode, code_new, codeword_array, rank_one_basis
from rankext.algebra.gf import FieldSpec, check_element
from rankext.algebra.isometry import CodeMap, PropertyPWitness, map_new, verify_property_p
from rankext.algebra.matfq import (
    MatrixFq,
    array_rank,
    batch_equal,
    bmm,
    diagonal,
    elementary,
    enumerate_gl,
    gl_batches,
    gl_key,
    gl_order,
    inverse,
    raw,
)
from rankext.algebra.paths import (
    Path,
    PathVerdict,
    Pattern,
    Position,
    enumerate_closed_simple_paths,
    is_forest,
    reduction_chain,
    validate_path,
)
from rankext.core.config import settings
from rankext.core.errors import (
    CodeTooLarge,
    DimensionMismatch,
    FieldMismatch,
    InputError,
    InvariantViolation,
    NoDropValue,
    NotAnIsometry,
    NotClosedSimple,
    NotIrreducible,
    NotRankOneGenerated,
    SearchSpaceTooLarge,
    VerificationFailed,
    WitnessInvalid,
    WrongField,
    ZeroScalar,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalarAssignment:
    """φ(E_h) = scalars[h] * E_h for each position h."""

    positions: Tuple[Position, ...]
    scalars: Tuple[int, ...]

    @classmethod
    def build(cls, F: FieldSpec, positions: Sequence[Sequence[int]], scalars: Sequence[int], m: int, n: int) -> "ScalarAssignment":
        if len(positions) != len(scalars):
            raise DimensionMismatch(f"{len(positions)} positions but {len(scalars)} scalars")
        cells = tuple(Position(int(p[0]), int(p[1])) for p in positions)
        if len(set(cells)) != len(cells):
            raise InputError("Assignment positions must be distinct")
        for p in cells:
            if not (1 <= p.i <= m and 1 <= p.j <= n):
                raise InputError(f"Position {tuple(p)} outside {m}x{n}", position=list(p))
        values = tuple(check_element(F, s) for s in scalars)
        for p, s in zip(cells, values):
            if s == 0:
                raise ZeroScalar(f"Scalar at {tuple(p)} is zero", position=list(p))
        return cls(cells, values)

    def scalar_at(self) -> Dict[Position, int]:
        return dict(zip(self.positions, self.scalars))


@dataclass(frozen=True)
class ExtensionWitness:
    """The ambient isometry M -> AMB (or AM^tB when transposed)."""

    A: MatrixFq
    B: MatrixFq
    transposed: bool = False

    def apply(self, M: MatrixFq) -> MatrixFq:
        return self.A @ (M.T if self.transposed else M) @ self.B

    def reproduces(self, phi: CodeMap) -> bool:
        """True iff the pair maps every stated generator to its image."""
        return all(self.apply(G) == Y for G, Y in zip(phi.domain.generators, phi.images))


def _certified(phi: CodeMap, witness: ExtensionWitness) -> ExtensionWitness:
    if not witness.reproduces(phi):
        raise VerificationFailed("Extension witness does not reproduce the map on its generators")
    return witness


# Elementary codes


def rank_drop_value(F: FieldSpec, path: Path, coeffs: Sequence[int]) -> int:
    """
    The unique a making sum(coeffs[h] E_h) + a E_k drop to rank k/2 - 1.

    ``coeffs`` holds the k - 1 nonzero coefficients of the first positions
    of the closed simple path; the last position carries a. On the k/2 × k/2
    submatrix spanned by the path the determinant is affine in a, so
    a = -det(0) / (det(1) - det(0)).
    """
    positions = tuple(Position(*p) for p in (path.positions if isinstance(path, Path) else path))
    if not positions:
        raise NotClosedSimple("Empty path")
    m = max(p.i for p in positions)
    n = max(p.j for p in positions)
    check = validate_path(Pattern.from_positions(m, n, positions), positions)
    if check.verdict != PathVerdict.CLOSED_SIMPLE:
        raise NotClosedSimple(f"Path is {check.verdict.value}: {check.reason}")
    k = len(positions)
    if len(coeffs) != k - 1:
        raise DimensionMismatch(f"Need {k - 1} coefficients for a path of length {k}, got {len(coeffs)}")
    values = [check_element(F, c) for c in coeffs]
    if any(v == 0 for v in values):
        raise ZeroScalar("Path coefficients must be nonzero")

    rows = sorted({p.i for p in positions})
    cols = sorted({p.j for p in positions})
    half = k // 2

    def block(a: int):
        grid = np.zeros((half, half), dtype=np.int64)
        for p, v in zip(positions, values + [a]):
            grid[rows.index(p.i), cols.index(p.j)] = v
        return F.gf(grid)

    det0 = np.linalg.det(block(0))
    det1 = np.linalg.det(block(1))
    slope = det1 - det0
    if int(slope) == 0 or int(det0) == 0:
        raise NoDropValue("Determinant does not depend on the last entry as expected")
    a_bar = int(-det0 / slope)

    if array_rank(block(a_bar)) != half - 1:
        raise NoDropValue(f"Rank at a = {a_bar} is not {half - 1}")
    other = int(F.gf(a_bar) + F.gf(1))
    if array_rank(block(other)) != half:
        raise NoDropValue(f"Rank at a = {other} is not {half}")
    return a_bar


def build_diagonal_pair(
    F: FieldSpec,
    positions: Sequence[Sequence[int]],
    scalars: Sequence[int],
    m: int,
    n: int,
) -> Tuple[MatrixFq, MatrixFq]:
    """
    Diagonal A, B with a_i * b_j = s for every position (i, j) with scalar s.

    Each connected component of the (forest) support is seeded with a_i = 1
    at its smallest position; values then spread along positions via
    b_j = a_i^-1 s and a_i = b_j^-1 s. Entries never reached stay 1.
    """
    assignment = ScalarAssignment.build(F, positions, scalars, m, n)
    pattern = Pattern(m, n, frozenset(assignment.positions))
    if not is_forest(pattern):
        raise NotIrreducible("Support contains a closed simple path")

    gf = F.gf
    s = assignment.scalar_at()
    by_row: Dict[int, List[Position]] = {}
    by_col: Dict[int, List[Position]] = {}
    for p in sorted(s):
        by_row.setdefault(p.i, []).append(p)
        by_col.setdefault(p.j, []).append(p)

    a: Dict[int, object] = {}
    b: Dict[int, object] = {}
    for seed in sorted(s):
        if seed.i in a or seed.j in b:
            continue
        a[seed.i] = gf(1)
        frontier = [("row", seed.i)]
        while frontier:
            kind, line = frontier.pop(0)
            if kind == "row":
                for p in by_row[line]:
                    if p.j not in b:
                        b[p.j] = a[line] ** -1 * gf(s[p])
                        frontier.append(("col", p.j))
            else:
                for p in by_col[line]:
                    if p.i not in a:
                        a[p.i] = b[line] ** -1 * gf(s[p])
                        frontier.append(("row", p.i))

    for p, value in s.items():
        if int(a[p.i] * b[p.j]) != value:
            raise InvariantViolation(f"Diagonal pair misses the scalar at {tuple(p)}")

    A = diagonal(F, [int(a.get(i, 1)) for i in range(1, m + 1)])
    B = diagonal(F, [int(b.get(j, 1)) for j in range(1, n + 1)])
    return A, B


def extend_elementary(F: FieldSpec, assignment: ScalarAssignment, m: int, n: int) -> ExtensionWitness:
    """
    Extend E_h -> α_h E_h by diagonal matrices.

    The pair is built on the irreducible end of the greedy reduction chain
    and then checked on every position. A mismatch means the assignment is
    not an isometry at all.
    """
    s = assignment.scalar_at()
    for p, value in s.items():
        if value == 0:
            raise ZeroScalar(f"Scalar at {tuple(p)} is zero", position=list(p))
    chain = reduction_chain(Pattern(m, n, frozenset(assignment.positions)))
    tail = chain.terminal.sorted()
    logger.info(f"Reduction chain of length {chain.length}; building the pair on {len(tail)} positions")
    A, B = build_diagonal_pair(F, tail, [s[p] for p in tail], m, n)

    for p in assignment.positions:
        found = int(F.gf(A.entry(p.i, p.i)) * F.gf(B.entry(p.j, p.j)))
        if found != s[p]:
            raise NotAnIsometry(
                f"Assignment is not an isometry: position {tuple(p)} needs {s[p]}, the chain forces {found}",
                position=tuple(p),
                expected=s[p],
                found=found,
            )
    return ExtensionWitness(A, B, transposed=False)


def extension_from_assignment(F: FieldSpec, assignment: ScalarAssignment, m: int, n: int) -> CodeMap:
    """The code map E_h -> α_h E_h on the code spanned by the positions."""
    gens = [elementary(F, m, n, p.i, p.j) for p in assignment.positions]
    images = [E.scale(a) for E, a in zip(gens, assignment.scalars)]
    domain = code_new(F, m, n, gens)
    return map_new(domain, images, codomain=domain)


def cycle_consistent(F: FieldSpec, assignment: ScalarAssignment, m: int, n: int) -> bool:
    """
    Experimental: does every closed simple path of the support have
    alternating scalar product α_1^-1 α_2 α_3^-1 ... α_k = 1?
    """
    s = assignment.scalar_at()
    pattern = Pattern(m, n, frozenset(assignment.positions))
    gf = F.gf
    for path in enumerate_closed_simple_paths(pattern):
        product = gf(1)
        for h, p in enumerate(path.positions, start=1):
            factor = gf(s[p])
            product = product * (factor ** -1 if h % 2 else factor)
        if int(product) != 1:
            return False
    return True


# Rank-one codes over GF(2)


def require_rank_one_f2(phi: CodeMap) -> List[MatrixFq]:
    """Rank-one basis of the domain; the map must live over GF(2)."""
    F = phi.field
    if F.q != 2:
        raise WrongField(f"Rank-one extension needs GF(2), got {F}")
    basis = rank_one_basis(phi.domain)
    if basis is None:
        raise NotRankOneGenerated("Domain is not generated by rank-one codewords")
    return list(basis)


def extend_rank_one_f2(phi: CodeMap, witness: PropertyPWitness) -> ExtensionWitness:
    """
    Over GF(2) a rank-one matrix is fixed by its row and column space, so a
    Property 1 pair already satisfies φ(C) = ACB on rank-one codewords, and
    by linearity on the whole code when those generate it.
    """
    F = phi.field
    basis = require_rank_one_f2(phi)
    if not verify_property_p(phi, witness.A, witness.B):
        raise WitnessInvalid("Supplied pair does not satisfy Property 1")
    candidate = ExtensionWitness(witness.A, witness.B, transposed=False)
    for C in basis:
        if candidate.apply(C) != phi.apply(C):
            raise VerificationFailed("Pair disagrees with the map on a rank-one codeword")
    words = codeword_array(phi.domain)
    images = phi.image_array(words)
    for C, D in zip(words, images):
        if candidate.apply(MatrixFq(F, C)) != MatrixFq(F, D):
            raise VerificationFailed("Pair disagrees with the map on a codeword")
    return _certified(phi, candidate)


# Exhaustive oracle


def _stack(matrices: Sequence[MatrixFq], field: FieldSpec, m: int, n: int):
    if not matrices:
        return field.gf.Zeros((0, m, n))
    return field.gf(np.stack([raw(M.array) for M in matrices]))


def _full_rank_codeword(C: RankCode) -> Optional[MatrixFq]:
    try:
        words = codeword_array(C)
    except CodeTooLarge:
        return None
    for W in words[1:]:
        if array_rank(W) == C.n:
            return MatrixFq(C.field, W)
    return None


def _pruned_search(phi: CodeMap, transposed: bool, C0: MatrixFq) -> Optional[ExtensionWitness]:
    """
    With C0 invertible, φ(C0) = A C0' B pins B = C0'^-1 G φ(C0) for G = A^-1.
    Every G is scanned and the enumeration-minimal A kept.
    """
    F = phi.field
    n = phi.domain.n
    src = [G.T if transposed else G for G in phi.domain.basis_matrices()]
    tgt = phi.basis_image_matrices()
    src0 = C0.T if transposed else C0
    tgt0 = phi.apply(C0)
    if tgt0.rank() < n:
        return None
    src0_inv = inverse(src0).array
    S = _stack(src, F, n, n)
    T = _stack(tgt, F, n, n)

    best = None
    for G in gl_batches(F, n):
        Bs = bmm(src0_inv[None], bmm(G, tgt0.array[None]))
        ok = np.ones(G.shape[0], dtype=bool)
        for Si, Ti in zip(S, T):
            ok &= batch_equal(bmm(Si[None], Bs), bmm(G, Ti[None]))
            if not ok.any():
                break
        for idx in np.flatnonzero(ok):
            A = inverse(MatrixFq(F, G[idx]))
            key = gl_key(F, A)
            if best is None or key < best[0]:
                best = (key, A, MatrixFq(F, Bs[idx]))
    if best is None:
        return None
    return ExtensionWitness(best[1], best[2], transposed)


def _double_loop(phi: CodeMap, transposed: bool) -> Optional[ExtensionWitness]:
    F = phi.field
    m, n = phi.domain.m, phi.domain.n
    src = [G.T if transposed else G for G in phi.domain.basis_matrices()]
    T = _stack(phi.basis_image_matrices(), F, m, n)
    for A in enumerate_gl(F, m):
        AS = _stack([A @ Si for Si in src], F, m, n)
        for Bs in gl_batches(F, n):
            ok = np.ones(Bs.shape[0], dtype=bool)
            for ASi, Ti in zip(AS, T):
                ok &= batch_equal(bmm(ASi[None], Bs), Ti[None])
                if not ok.any():
                    break
            if ok.any():
                return ExtensionWitness(A, MatrixFq(F, Bs[int(np.argmax(ok))]), transposed)
    return None


def oracle_extension(phi: CodeMap, allow_transpose: bool = False, prune: bool = True) -> Optional[ExtensionWitness]:
    """
    Decide by exhaustive search whether φ extends to the ambient space.

    The untransposed branch is searched first; the transposed one only when
    allowed and m = n. If the domain has an invertible codeword C0 (square
    case), B is solved from φ(C0) and only A varies; otherwise the pair
    search is capped at |GL_m|*|GL_n| <= MAX_SEARCH.
    """
    C1 = phi.domain
    F = C1.field
    m, n = C1.m, C1.n
    branches = [False]
    if allow_transpose:
        if m == n:
            branches.append(True)
        else:
            logger.info("Transpose branch skipped: the code is not square")

    C0 = _full_rank_codeword(C1) if (prune and m == n) else None
    if C0 is None:
        total = gl_order(F.q, m) * gl_order(F.q, n)
        if total > settings.MAX_SEARCH:
            logger.warning(f"Oracle double loop over {total} pairs exceeds MAX_SEARCH")
            raise SearchSpaceTooLarge(
                f"|GL_m|*|GL_n| = {total} exceeds the search cap {settings.MAX_SEARCH}",
                size=total,
                cap=settings.MAX_SEARCH,
            )

    for transposed in branches:
        if C0 is not None:
            logger.info(f"Pruned oracle over |GL_{n}| = {gl_order(F.q, n)} (transposed={transposed})")
            witness = _pruned_search(phi, transposed, C0)
        else:
            logger.info(f"Oracle double loop over {gl_order(F.q, m)} x {gl_order(F.q, n)} (transposed={transposed})")
            witness = _double_loop(phi, transposed)
        if witness is not None:
            return _certified(phi, witness)
    return None


def are_equivalent(C1: RankCode, C2: RankCode, allow_transpose: bool = False) -> Optional[ExtensionWitness]:
    """
    Search (A, B) with A C1 B = C2 (or A C1^t B = C2), first pair in
    enumeration order.
    """
    if C1.field != C2.field:
        raise FieldMismatch(f"Codes over {C1.field} and {C2.field}")
    if (C1.m, C1.n) != (C2.m, C2.n):
        raise DimensionMismatch(f"Codes of shapes {C1.m}x{C1.n} and {C2.m}x{C2.n}")
    if C1.dim != C2.dim:
        return None
    F = C1.field
    m, n = C1.m, C1.n
    total = gl_order(F.q, m) * gl_order(F.q, n)
    if total > settings.MAX_SEARCH:
        raise SearchSpaceTooLarge(
            f"|GL_m|*|GL_n| = {total} exceeds the search cap {settings.MAX_SEARCH}",
            size=total,
            cap=settings.MAX_SEARCH,
        )
    pivots = list(C2.pivots)
    branches = [False] + ([True] if allow_transpose and m == n else [])
    for transposed in branches:
        src = [G.T if transposed else G for G in C1.basis_matrices()]
        for A in enumerate_gl(F, m):
            AS = [A @ Si for Si in src]
            for Bs in gl_batches(F, n):
                ok = np.ones(Bs.shape[0], dtype=bool)
                for ASi in AS:
                    V = bmm(ASi.array[None], Bs).reshape(Bs.shape[0], -1)
                    if C2.dim:
                        back = V[:, pivots] @ C2.basis
                    else:
                        back = F.gf.Zeros(V.shape)
                    ok &= np.all(raw(back) == raw(V), axis=1)
                    if not ok.any():
                        break
                if ok.any():
                    return ExtensionWitness(A, MatrixFq(F, Bs[int(np.argmax(ok))]), transposed)
    return None
