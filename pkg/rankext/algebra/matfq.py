"""
Dense matrices over GF(q).

Matrices wrap a galois FieldArray and are treated as immutable values: every
operation returns a new matrix. Row spaces are kept in reduced row-echelon
form so that subspaces compare by plain equality.
"""

import enum
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from rankext.algebra.gf import FieldSpec, check_element
from rankext.core.config import settings
from rankext.core.errors import (
    AmbientMismatch,
    DimensionMismatch,
    FieldMismatch,
    InputError,
    SearchSpaceTooLarge,
)

logger = logging.getLogger(__name__)


class MatOp(str, enum.Enum):
    ADD = "add"
    SUB = "sub"
    SCALE = "scale"
    MUL = "mul"
    TRANSPOSE = "transpose"


class Relation(str, enum.Enum):
    EQUAL = "equal"
    SUBSET = "subset"  # U ⊆ V
    SUPERSET = "superset"  # V ⊆ U
    INCOMPARABLE = "incomparable"


def raw(array) -> np.ndarray:
    """Integer view of a galois array."""
    return array.view(np.ndarray)


def nonzero_rows(array):
    if array.shape[0] == 0:
        return array
    return array[np.any(raw(array) != 0, axis=1)]


def rref(array):
    """Reduced row-echelon form with zero rows dropped."""
    if array.shape[0] == 0:
        return array
    return nonzero_rows(array.copy().row_reduce())


def array_rank(array) -> int:
    if array.size == 0:
        return 0
    return int(np.linalg.matrix_rank(array.copy()))


def right_kernel(array):
    """Rows spanning {x : array @ x = 0}."""
    cols = array.shape[1]
    if array_rank(array) == cols:
        return type(array).Zeros((0, cols))
    return array.copy().null_space()


def left_kernel(array):
    """Rows spanning {y : y @ array = 0}."""
    rows = array.shape[0]
    if array_rank(array) == rows:
        return type(array).Zeros((0, rows))
    return array.copy().left_null_space()


def bmm(X, Y):
    """
    Batched matrix product over a galois field with numpy broadcasting.

    galois only multiplies 2-D arrays, so the contraction index is summed
    explicitly; leading axes broadcast as in ``np.matmul``.
    """
    acc = X[..., :, 0:1] * Y[..., 0:1, :]
    for t in range(1, X.shape[-1]):
        acc = acc + X[..., :, t : t + 1] * Y[..., t : t + 1, :]
    return acc


def batch_is_zero(X) -> np.ndarray:
    return np.all(raw(X) == 0, axis=(-2, -1))


def batch_equal(X, Y) -> np.ndarray:
    return np.all(raw(X) == raw(Y), axis=(-2, -1))


class MatrixFq:
    """An m×n matrix over a FieldSpec."""

    __slots__ = ("field", "_a")

    def __init__(self, field: FieldSpec, array):
        a = field.gf(array) if not isinstance(array, field.gf) else array.copy()
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionMismatch(f"Matrix needs positive dimensions, got shape {a.shape}")
        a.flags.writeable = False
        self.field = field
        self._a = a

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "MatrixFq":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionMismatch("Matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("Ragged matrix rows")
        checked = [[check_element(field, v) for v in r] for r in rows]
        return cls(field, np.array(checked, dtype=np.int64))

    @property
    def m(self) -> int:
        return self._a.shape[0]

    @property
    def n(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._a.shape

    @property
    def array(self):
        """The read-only galois array."""
        return self._a

    @property
    def T(self) -> "MatrixFq":
        return MatrixFq(self.field, self._a.T)

    def entry(self, i: int, j: int) -> int:
        """Entry at 1-based position (i, j)."""
        return int(self._a[i - 1, j - 1])

    def to_rows(self) -> List[List[int]]:
        return raw(self._a).tolist()

    def flat(self):
        return self._a.reshape(-1)

    def rank(self) -> int:
        return array_rank(self._a)

    def is_zero(self) -> bool:
        return not np.any(raw(self._a))

    def _check_compatible(self, other: "MatrixFq") -> None:
        if not isinstance(other, MatrixFq):
            raise InputError(f"Expected a matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"Cannot combine matrices over {self.field} and {other.field}")

    def __add__(self, other: "MatrixFq") -> "MatrixFq":
        self._check_compatible(other)
        if other.shape != self.shape:
            raise DimensionMismatch(f"Cannot add {self.shape} and {other.shape}")
        return MatrixFq(self.field, self._a + other._a)

    def __sub__(self, other: "MatrixFq") -> "MatrixFq":
        self._check_compatible(other)
        if other.shape != self.shape:
            raise DimensionMismatch(f"Cannot subtract {other.shape} from {self.shape}")
        return MatrixFq(self.field, self._a - other._a)

    def __neg__(self) -> "MatrixFq":
        return MatrixFq(self.field, -self._a)

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        self._check_compatible(other)
        if self.n != other.m:
            raise DimensionMismatch(f"Cannot multiply {self.shape} by {other.shape}")
        return MatrixFq(self.field, self._a @ other._a)

    def scale(self, c: int) -> "MatrixFq":
        return MatrixFq(self.field, self.field.element(c) * self._a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixFq):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(raw(self._a), raw(other._a)))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, raw(self._a).astype(np.int64).tobytes()))

    def __repr__(self) -> str:
        return f"MatrixFq({self.field}, {self.to_rows()})"


def zeros(field: FieldSpec, m: int, n: int) -> MatrixFq:
    return MatrixFq(field, field.gf.Zeros((m, n)))


def identity(field: FieldSpec, n: int) -> MatrixFq:
    return MatrixFq(field, field.gf.Identity(n))


def elementary(field: FieldSpec, m: int, n: int, i: int, j: int) -> MatrixFq:
    """E_{i,j}: a single 1 at 1-based position (i, j)."""
    if not (1 <= i <= m and 1 <= j <= n):
        raise DimensionMismatch(f"Position ({i}, {j}) outside {m}x{n}")
    a = np.zeros((m, n), dtype=np.int64)
    a[i - 1, j - 1] = 1
    return MatrixFq(field, a)


def diagonal(field: FieldSpec, values: Sequence[int]) -> MatrixFq:
    return MatrixFq(field, np.diag([check_element(field, v) for v in values]).astype(np.int64))


def mat_algebra(op, *operands) -> MatrixFq:
    """
    Dispatch one of add, sub, scale, mul, transpose.

    ``scale`` takes (scalar, matrix); the others take matrices only.
    """
    op = MatOp(op)
    if op == MatOp.TRANSPOSE:
        (M,) = operands
        return M.T
    if op == MatOp.SCALE:
        c, M = operands
        return M.scale(c)
    X, Y = operands
    if op == MatOp.ADD:
        return X + Y
    if op == MatOp.SUB:
        return X - Y
    return X @ Y


def mat_rank(M: MatrixFq) -> int:
    return M.rank()


def rank_distance(M1: MatrixFq, M2: MatrixFq) -> int:
    return (M1 - M2).rank()


def inverse(M: MatrixFq) -> MatrixFq:
    if M.m != M.n:
        raise DimensionMismatch(f"Only square matrices are invertible, got {M.shape}")
    if M.rank() < M.n:
        raise InputError("Matrix is singular")
    return MatrixFq(M.field, np.linalg.inv(M.array.copy()))


def matrix_power(M: MatrixFq, e: int) -> MatrixFq:
    if M.m != M.n:
        raise DimensionMismatch(f"Powers need a square matrix, got {M.shape}")
    if e < 0:
        return matrix_power(inverse(M), -e)
    result = M.field.gf.Identity(M.n)
    base = M.array.copy()
    while e:
        if e & 1:
            result = result @ base
        base = base @ base
        e >>= 1
    return MatrixFq(M.field, result)


def multiplicative_order(M: MatrixFq, bound: Optional[int] = None) -> int:
    """Smallest e >= 1 with M^e = Id, by repeated multiplication."""
    bound = settings.MAX_ORDER if bound is None else bound
    if M.m != M.n or M.rank() < M.n:
        raise InputError("Multiplicative order needs an invertible matrix")
    ident = raw(M.field.gf.Identity(M.n))
    power = M.array.copy()
    for e in range(1, bound + 1):
        if np.array_equal(raw(power), ident):
            return e
        power = power @ M.array
    raise SearchSpaceTooLarge(f"Order exceeds the cap {bound}", bound=bound)


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of GF(q)^ambient held as RREF rows."""

    field: FieldSpec
    ambient: int
    vectors: Tuple[Tuple[int, ...], ...]

    @classmethod
    def span(cls, field: FieldSpec, ambient: int, rows) -> "SubspaceBasis":
        if not isinstance(rows, field.gf):
            rows = field.gf(np.asarray(rows, dtype=np.int64))
        reduced = rref(rows.reshape(-1, ambient))
        return cls(field, ambient, tuple(tuple(r) for r in raw(reduced).tolist()))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def array(self):
        if not self.vectors:
            return self.field.gf.Zeros((0, self.ambient))
        return self.field.gf(np.array(self.vectors, dtype=np.int64))

    def contains(self, vector: Sequence[int]) -> bool:
        stacked = np.vstack([raw(self.array()), np.asarray(vector, dtype=np.int64).reshape(1, -1)])
        return array_rank(self.field.gf(stacked)) == self.dim

    def to_lists(self) -> List[List[int]]:
        return [list(v) for v in self.vectors]


def line_spaces(M: MatrixFq) -> Tuple[SubspaceBasis, SubspaceBasis]:
    """(row space, column space) of M."""
    return (
        SubspaceBasis.span(M.field, M.n, M.array),
        SubspaceBasis.span(M.field, M.m, M.array.T),
    )


def subspace_relate(U: SubspaceBasis, V: SubspaceBasis) -> Tuple[Relation, int]:
    """
    Relative position of two subspaces plus dim(U ∩ V).

    Uses dim(U + V): U ⊆ V exactly when the sum has dim V.
    """
    if U.ambient != V.ambient:
        raise AmbientMismatch(f"Ambient dimensions differ: {U.ambient} vs {V.ambient}")
    if U.field != V.field:
        raise FieldMismatch(f"Subspaces over {U.field} and {V.field}")
    stacked = U.field.gf(np.vstack([raw(U.array()), raw(V.array())]).astype(np.int64))
    total = array_rank(stacked)
    meet = U.dim + V.dim - total
    if total == U.dim == V.dim:
        return Relation.EQUAL, meet
    if total == V.dim:
        return Relation.SUBSET, meet
    if total == U.dim:
        return Relation.SUPERSET, meet
    return Relation.INCOMPARABLE, meet


# General linear group


def gl_order(q: int, n: int) -> int:
    order = 1
    for i in range(n):
        order *= q**n - q**i
    return order


def all_vectors(field: FieldSpec, n: int):
    """
    Every vector of GF(q)^n, indexed by sum(v[i] * q**i).

    The first coordinate varies fastest, so e_1 precedes e_2 and so on.
    """
    digits = [t[::-1] for t in itertools.product(range(field.q), repeat=n)]
    return field.gf(np.array(digits, dtype=np.int64).reshape(-1, n))


def _check_gl_size(field: FieldSpec, n: int) -> int:
    size = gl_order(field.q, n)
    if size > settings.MAX_SEARCH:
        logger.warning(f"|GL_{n}({field})| = {size} exceeds MAX_SEARCH = {settings.MAX_SEARCH}")
        raise SearchSpaceTooLarge(
            f"|GL_{n}({field})| = {size} exceeds the search cap {settings.MAX_SEARCH}",
            size=size,
            cap=settings.MAX_SEARCH,
        )
    return size


def _gl_row_indices(field: FieldSpec, n: int) -> Iterator[Tuple[int, ...]]:
    """
    Row-by-row generation: each new row is the next vector (in index order)
    outside the span of the rows already chosen.
    """
    q = field.q
    vectors = all_vectors(field, n)
    weights = q ** np.arange(n, dtype=np.int64)
    scalars = field.gf(np.arange(q, dtype=np.int64))

    def extend(chosen: Tuple[int, ...], span):
        if len(chosen) == n:
            yield chosen
            return
        in_span = np.zeros(q**n, dtype=bool)
        in_span[raw(span) @ weights] = True
        for idx in np.flatnonzero(~in_span):
            v = vectors[idx]
            grown = (span[None, :, :] + scalars[:, None, None] * v[None, None, :]).reshape(-1, n)
            yield from extend(chosen + (int(idx),), grown)

    yield from extend((), field.gf.Zeros((1, n)))


def enumerate_gl(field: FieldSpec, n: int) -> Iterator[MatrixFq]:
    """
    Lazily yield every invertible n×n matrix exactly once.

    Order: rows compared first to last, each row by its vector index (see
    all_vectors). The identity matrix comes first.
    """
    _check_gl_size(field, n)
    vectors = all_vectors(field, n)
    for rows in _gl_row_indices(field, n):
        yield MatrixFq(field, vectors[list(rows)])


def gl_batches(field: FieldSpec, n: int, size: Optional[int] = None):
    """enumerate_gl as stacked (N, n, n) galois arrays, same order."""
    _check_gl_size(field, n)
    size = size or settings.GL_BATCH_SIZE
    vectors = all_vectors(field, n)
    pending: List[Tuple[int, ...]] = []
    for rows in _gl_row_indices(field, n):
        pending.append(rows)
        if len(pending) == size:
            yield vectors[np.array(pending, dtype=np.int64)]
            pending = []
    if pending:
        yield vectors[np.array(pending, dtype=np.int64)]


def gl_key(field: FieldSpec, M) -> Tuple[int, ...]:
    """Sort key reproducing enumerate_gl order for a square matrix or array."""
    a = raw(M.array if isinstance(M, MatrixFq) else M)
    weights = field.q ** np.arange(a.shape[1], dtype=np.int64)
    return tuple(int(x) for x in a @ weights)
