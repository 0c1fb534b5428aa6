import pytest
from hypothesis import assume, given, settings as hsettings, strategies as st

from rankext.algebra.code import (
    code_line_spaces,
    code_new,
    codeword_array,
    enumerate_codewords,
    image_code,
    min_distance,
    rank_one_basis,
)
from rankext.algebra.gf import field_from_order
from rankext.algebra.matfq import MatrixFq, elementary, enumerate_gl, identity, raw
from rankext.core.errors import CodeTooLarge, DimensionMismatch, FieldMismatch, ZeroCode


@pytest.fixture
def mismatch_codes(gf2, mat):
    """Two constant-rank-2 codes in 2x3 with row spaces of dimension 2 and 3."""
    C1 = code_new(gf2, 2, 3, [mat(gf2, [[1, 1, 0], [0, 1, 0]]), mat(gf2, [[0, 1, 0], [1, 0, 0]])])
    C2 = code_new(gf2, 2, 3, [mat(gf2, [[0, 0, 1], [0, 1, 0]]), mat(gf2, [[0, 1, 0], [1, 0, 0]])])
    return C1, C2


def test_dimension_counts_independent_generators(gf2, mat):
    M = mat(gf2, [[1, 0], [0, 1]])
    C = code_new(gf2, 2, 2, [M, M])
    assert C.dim == 1
    assert C.size == 2
    assert len(C.generators) == 2


def test_codewords_start_with_zero(gf3):
    C = code_new(gf3, 2, 2, [identity(gf3, 2), elementary(gf3, 2, 2, 1, 2)])
    words = codeword_array(C)
    assert words.shape == (9, 2, 2)
    assert not raw(words[0]).any()
    assert len({MatrixFq(gf3, w) for w in words}) == 9
    assert [M.to_rows() for M in enumerate_codewords(C)] == [raw(w).tolist() for w in words]


def test_membership(gf2, mat):
    C = code_new(gf2, 2, 2, [identity(gf2, 2)])
    assert C.contains(identity(gf2, 2))
    assert not C.contains(elementary(gf2, 2, 2, 1, 1))
    assert C.coordinates(identity(gf2, 2)) == (1,)


def test_combine_inverts_coordinates(gf3):
    gens = [elementary(gf3, 2, 3, 1, 1) + elementary(gf3, 2, 3, 2, 3), elementary(gf3, 2, 3, 1, 2)]
    C = code_new(gf3, 2, 3, gens)
    M = gens[0].scale(2) + gens[1]
    assert C.combine(C.coordinates(M)) == M


def test_min_distance(mismatch_codes):
    C1, C2 = mismatch_codes
    assert min_distance(C1) == 2
    assert min_distance(C2) == 2


def test_min_distance_zero_code(gf2):
    with pytest.raises(ZeroCode):
        min_distance(code_new(gf2, 2, 2, []))


def test_row_space_dimensions(mismatch_codes):
    C1, C2 = mismatch_codes
    assert code_line_spaces(C1)[0].dim == 2
    assert code_line_spaces(C2)[0].dim == 3
    assert code_line_spaces(C1)[1].dim == 2


def test_rank_one_basis(gf2, mat):
    gens = [
        mat(gf2, [[1, 0, 0], [0, 0, 0]]),
        mat(gf2, [[0, 0, 0], [0, 1, 0]]),
        mat(gf2, [[0, 0, 1], [0, 0, 1]]),
        mat(gf2, [[1, 1, 0], [1, 1, 0]]),
    ]
    basis = rank_one_basis(code_new(gf2, 2, 3, gens))
    assert basis is not None and len(basis) == 4
    assert all(B.rank() == 1 for B in basis)


def test_not_rank_one_generated(gf2):
    assert rank_one_basis(code_new(gf2, 2, 2, [identity(gf2, 2)])) is None


def test_errors(gf2, gf3):
    with pytest.raises(FieldMismatch):
        code_new(gf2, 2, 2, [identity(gf3, 2)])
    with pytest.raises(DimensionMismatch):
        code_new(gf2, 2, 3, [identity(gf2, 2)])


def test_enumeration_cap(gf2, caps):
    caps.MAX_CODEWORDS = 10
    gens = [elementary(gf2, 2, 2, i, j) for i in (1, 2) for j in (1, 2)]
    with pytest.raises(CodeTooLarge):
        codeword_array(code_new(gf2, 2, 2, gens))


def test_image_code(gf2):
    C = code_new(gf2, 2, 2, [identity(gf2, 2)])
    image = image_code(C, [elementary(gf2, 2, 2, 1, 2)])
    assert image.contains(elementary(gf2, 2, 2, 1, 2))


@hsettings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_singleton_bound(q, data):
    F = field_from_order(q)
    k = data.draw(st.integers(1, 3))
    gens = [
        MatrixFq.from_rows(F, data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=3, max_size=3), min_size=2, max_size=2)))
        for _ in range(k)
    ]
    C = code_new(F, 2, 3, gens)
    if C.dim:
        assert C.dim <= 3 * (2 - min_distance(C) + 1)


@st.composite
def small_codes(draw, fields=(2, 3)):
    F = field_from_order(draw(st.sampled_from(fields)))
    m = draw(st.integers(1, 3))
    n = draw(st.integers(1, 3))
    entries = st.integers(0, F.q - 1)
    k = draw(st.integers(1, 3))
    gens = [
        MatrixFq.from_rows(F, draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=m, max_size=m)))
        for _ in range(k)
    ]
    return code_new(F, m, n, gens)


@hsettings(max_examples=60, deadline=None)
@given(small_codes(fields=(2,)), st.data())
def test_min_distance_is_invariant(C, data):
    assume(C.dim > 0)
    A = data.draw(st.sampled_from(list(enumerate_gl(C.field, C.m))))
    B = data.draw(st.sampled_from(list(enumerate_gl(C.field, C.n))))
    image = code_new(C.field, C.m, C.n, [A @ G @ B for G in C.generators])
    assert image.dim == C.dim
    assert min_distance(image) == min_distance(C)


def test_min_distance_invariant_over_all_pairs(gf2, mat):
    C = code_new(gf2, 2, 3, [mat(gf2, [[1, 1, 0], [0, 1, 0]]), mat(gf2, [[0, 0, 1], [0, 0, 0]])])
    expected = min_distance(C)
    for A in enumerate_gl(gf2, 2):
        for B in enumerate_gl(gf2, 3):
            assert min_distance(code_new(gf2, 2, 3, [A @ G @ B for G in C.generators])) == expected


@hsettings(max_examples=60, deadline=None)
@given(small_codes(), st.data())
def test_line_spaces_ignore_generating_set(C, data):
    gens = data.draw(st.permutations(C.generators))
    i = data.draw(st.integers(0, len(gens) - 1))
    j = data.draw(st.integers(0, len(gens) - 1))
    redundant = gens + [gens[i] + gens[j].scale(C.field.q - 1), gens[i].scale(C.field.q - 1)]
    rows, cols = code_line_spaces(C)
    other_rows, other_cols = code_line_spaces(code_new(C.field, C.m, C.n, redundant))
    assert (other_rows.dim, other_cols.dim) == (rows.dim, cols.dim)
    assert (other_rows.vectors, other_cols.vectors) == (rows.vectors, cols.vectors)


@hsettings(max_examples=60, deadline=None)
@given(small_codes())
def test_codewords_are_members(C):
    words = list(enumerate_codewords(C))
    assert len(words) == C.field.q ** C.dim
    assert len(set(words)) == len(words)
    assert all(C.contains(W) for W in words)
