import itertools

import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from rankext.algebra.gf import field_from_order
from rankext.algebra.matfq import (
    MatrixFq,
    Relation,
    SubspaceBasis,
    all_vectors,
    bmm,
    diagonal,
    elementary,
    enumerate_gl,
    gl_batches,
    gl_key,
    gl_order,
    identity,
    inverse,
    line_spaces,
    mat_algebra,
    mat_rank,
    matrix_power,
    multiplicative_order,
    rank_distance,
    raw,
    subspace_relate,
)
from rankext.core.errors import (
    AmbientMismatch,
    DimensionMismatch,
    FieldMismatch,
    InputError,
    SearchSpaceTooLarge,
)


def matrices(q, m, n):
    return st.lists(st.integers(0, q - 1), min_size=m * n, max_size=m * n).map(
        lambda flat: [flat[i * n:(i + 1) * n] for i in range(m)]
    )


class TestMatrix:
    def test_rank_examples(self, gf2, gf3, mat):
        assert mat_rank(mat(gf2, [[1, 1], [1, 1]])) == 1
        assert mat_rank(mat(gf3, [[1, 2], [2, 1]])) == 1
        assert mat_rank(mat(gf2, [[0, 0], [0, 0]])) == 0
        assert mat_rank(identity(gf3, 4)) == 4

    def test_square_of_non_multiplicative_generator(self, gf2, mat):
        X = mat(gf2, [[1, 0, 0], [1, 1, 0], [0, 0, 0]])
        assert X @ X == mat(gf2, [[1, 0, 0], [0, 1, 0], [0, 0, 0]])

    def test_algebra_dispatch(self, gf3, mat):
        A = mat(gf3, [[1, 2], [0, 1]])
        B = mat(gf3, [[2, 2], [1, 0]])
        assert mat_algebra("add", A, B) == mat(gf3, [[0, 1], [1, 1]])
        assert mat_algebra("sub", A, B) == mat(gf3, [[2, 0], [2, 1]])
        assert mat_algebra("scale", 2, A) == mat(gf3, [[2, 1], [0, 2]])
        assert mat_algebra("transpose", A) == mat(gf3, [[1, 0], [2, 1]])
        assert mat_algebra("mul", A, B) == A @ B

    def test_shape_errors(self, gf2, mat):
        with pytest.raises(DimensionMismatch):
            mat(gf2, [[1, 0], [1]])
        with pytest.raises(DimensionMismatch):
            mat(gf2, [[1, 0]]) @ mat(gf2, [[1, 0]])
        with pytest.raises(InputError):
            mat(gf2, [[2]])

    def test_field_mismatch(self, gf2, gf3):
        with pytest.raises(FieldMismatch):
            identity(gf2, 2) + identity(gf3, 2)

    def test_elementary_is_one_based(self, gf2):
        E = elementary(gf2, 2, 3, 2, 3)
        assert E.entry(2, 3) == 1
        assert E.to_rows() == [[0, 0, 0], [0, 0, 1]]

    def test_inverse(self, gf3, mat):
        A = mat(gf3, [[1, 2], [1, 1]])
        assert A @ inverse(A) == identity(gf3, 2)
        with pytest.raises(InputError):
            inverse(mat(gf3, [[1, 2], [2, 1]]))

    def test_power_and_order(self, gf2, mat):
        C = mat(gf2, [[0, 0, 1], [1, 0, 1], [0, 1, 0]])
        assert multiplicative_order(C) == 7
        assert matrix_power(C, 7) == identity(gf2, 3)
        assert matrix_power(C, -1) == inverse(C)

    def test_order_cap(self, gf2, mat):
        C = mat(gf2, [[0, 0, 1], [1, 0, 1], [0, 1, 0]])
        with pytest.raises(SearchSpaceTooLarge):
            multiplicative_order(C, bound=3)

    @hsettings(max_examples=60, deadline=None)
    @given(st.sampled_from([2, 3, 4, 5]), st.data())
    def test_rank_distance_is_a_metric(self, q, data):
        F = field_from_order(q)
        A, B, C = (MatrixFq.from_rows(F, data.draw(matrices(q, 2, 3))) for _ in range(3))
        assert rank_distance(A, A) == 0
        assert rank_distance(A, B) == rank_distance(B, A)
        assert rank_distance(A, C) <= rank_distance(A, B) + rank_distance(B, C)

    @hsettings(max_examples=60, deadline=None)
    @given(st.sampled_from([2, 3, 5]), st.data())
    def test_rank_of_transpose_and_product(self, q, data):
        F = field_from_order(q)
        A = MatrixFq.from_rows(F, data.draw(matrices(q, 3, 4)))
        B = MatrixFq.from_rows(F, data.draw(matrices(q, 4, 2)))
        assert A.T.rank() == A.rank()
        assert (A @ B).rank() <= min(A.rank(), B.rank())

    def test_bmm_matches_matmul(self, gf3):
        F = gf3
        X = F.gf(np.arange(2 * 2 * 3).reshape(2, 2, 3) % 3)
        Y = F.gf(np.arange(2 * 3 * 2).reshape(2, 3, 2) % 3)
        batched = bmm(X, Y)
        for t in range(2):
            assert np.array_equal(raw(batched[t]), raw(X[t] @ Y[t]))


class TestSubspaces:
    def test_line_spaces(self, gf2, mat):
        rows, cols = line_spaces(mat(gf2, [[1, 1, 0], [1, 1, 0]]))
        assert rows.to_lists() == [[1, 1, 0]]
        assert cols.to_lists() == [[1, 1]]

    def test_relations(self, gf2):
        U = SubspaceBasis.span(gf2, 3, [[1, 0, 0]])
        V = SubspaceBasis.span(gf2, 3, [[1, 0, 0], [0, 1, 0]])
        W = SubspaceBasis.span(gf2, 3, [[0, 0, 1]])
        assert subspace_relate(U, V) == (Relation.SUBSET, 1)
        assert subspace_relate(V, U) == (Relation.SUPERSET, 1)
        assert subspace_relate(V, V) == (Relation.EQUAL, 2)
        assert subspace_relate(V, W) == (Relation.INCOMPARABLE, 0)

    def test_relation_ambient_mismatch(self, gf2):
        with pytest.raises(AmbientMismatch):
            subspace_relate(SubspaceBasis.span(gf2, 2, [[1, 0]]), SubspaceBasis.span(gf2, 3, [[1, 0, 0]]))

    def test_span_is_canonical(self, gf3):
        a = SubspaceBasis.span(gf3, 2, [[1, 1], [2, 0]])
        b = SubspaceBasis.span(gf3, 2, [[0, 1], [1, 0]])
        assert a == b


class TestGeneralLinearGroup:
    @pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (3, 2), (4, 2)])
    def test_enumeration_is_complete(self, q, n):
        F = field_from_order(q)
        seen = set()
        for M in enumerate_gl(F, n):
            assert M.rank() == n
            seen.add(M)
        assert len(seen) == gl_order(q, n)

    def test_orders(self):
        assert gl_order(2, 3) == 168
        assert gl_order(2, 4) == 20160
        assert gl_order(3, 2) == 48

    @pytest.mark.parametrize("q,n", [(2, 3), (3, 2)])
    def test_identity_first_and_sorted(self, q, n):
        F = field_from_order(q)
        listing = list(enumerate_gl(F, n))
        assert listing[0] == identity(F, n)
        keys = [gl_key(F, M) for M in listing]
        assert keys == sorted(keys)

    def test_batches_follow_enumeration(self, gf2):
        listing = [M.to_rows() for M in enumerate_gl(gf2, 3)]
        batched = [raw(B).tolist() for batch in gl_batches(gf2, 3, size=50) for B in batch]
        assert batched == listing

    def test_vectors_little_endian(self, gf3):
        vectors = raw(all_vectors(gf3, 2)).tolist()
        assert vectors[:4] == [[0, 0], [1, 0], [2, 0], [0, 1]]

    def test_cap(self, gf2, caps):
        caps.MAX_SEARCH = 100
        with pytest.raises(SearchSpaceTooLarge):
            next(enumerate_gl(gf2, 3))

    def test_diagonal(self, gf3):
        D = diagonal(gf3, [1, 2])
        assert D.to_rows() == [[1, 0], [0, 2]]

    def test_gl2_over_gf2_exhaustive(self, gf2):
        expected = set()
        for flat in itertools.product(range(2), repeat=4):
            M = MatrixFq.from_rows(gf2, [flat[:2], flat[2:]])
            if M.rank() == 2:
                expected.add(M)
        assert set(enumerate_gl(gf2, 2)) == expected
