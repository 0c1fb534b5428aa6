import itertools

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from rankext.algebra.matfq import MatrixFq
from rankext.algebra.paths import (
    Path,
    PathVerdict,
    Pattern,
    cycle_rank,
    enumerate_all_chains,
    enumerate_closed_simple_paths,
    find_closed_simple_path,
    is_forest,
    is_irreducible,
    iter_chains,
    on_closed_simple_path,
    path_through,
    prune,
    reduce_at,
    reduction_chain,
    replay_chain,
    shared_start_lemma_holds,
    support,
    validate_path,
)
from rankext.core.errors import NotInSupport, NotOnClosedSimplePath, SearchSpaceTooLarge

DISPLAYED = [(1, 1), (1, 4), (2, 4), (2, 2), (3, 2), (3, 1)]


def full(m, n):
    return Pattern.from_positions(m, n, itertools.product(range(1, m + 1), range(1, n + 1)))


def all_supports(m, n):
    cells = list(itertools.product(range(1, m + 1), range(1, n + 1)))
    for mask in range(2 ** len(cells)):
        yield Pattern.from_positions(m, n, [c for b, c in enumerate(cells) if mask >> b & 1])


@st.composite
def dense_supports(draw):
    m = draw(st.integers(2, 6))
    n = draw(st.integers(2, 6))
    cells = list(itertools.product(range(1, m + 1), range(1, n + 1)))
    chosen = draw(st.sets(st.sampled_from(cells), min_size=m + n, max_size=len(cells)))
    return Pattern.from_positions(m, n, chosen)


@st.composite
def small_supports(draw):
    m = draw(st.integers(3, 4))
    n = draw(st.integers(3, 4))
    cells = list(itertools.product(range(1, m + 1), range(1, n + 1)))
    chosen = draw(st.sets(st.sampled_from(cells), max_size=min(len(cells), 11)))
    return Pattern.from_positions(m, n, chosen)


class TestSupport:
    def test_support_of_matrix(self, gf2):
        M = MatrixFq.from_rows(gf2, [[1, 0, 0, 1, 0], [0, 1, 0, 1, 0], [1, 1, 0, 0, 0]])
        assert support(M) == frozenset(Pattern.from_positions(3, 5, DISPLAYED).positions)

    def test_prune_keeps_cycles(self, demo3x5):
        assert prune(demo3x5) == demo3x5.positions

    def test_prune_removes_trees(self):
        arrow = Pattern.from_positions(3, 3, [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)])
        assert prune(arrow) == frozenset()


class TestValidate:
    def test_displayed_path(self, demo3x5):
        check = validate_path(demo3x5, DISPLAYED)
        assert check.verdict == PathVerdict.CLOSED_SIMPLE
        assert check.path.closed and check.path.simple

    def test_invalid(self, demo3x5):
        assert validate_path(demo3x5, []).verdict == PathVerdict.INVALID
        assert validate_path(demo3x5, [(1, 2)]).verdict == PathVerdict.INVALID
        assert validate_path(demo3x5, [(1, 1), (2, 2)]).verdict == PathVerdict.INVALID
        assert validate_path(demo3x5, [(1, 1), (1, 4), (1, 1)]).verdict == PathVerdict.INVALID

    def test_short_path_is_open(self, demo3x5):
        assert validate_path(demo3x5, [(1, 1), (1, 4), (2, 4)]).verdict == PathVerdict.SIMPLE_OPEN

    def test_closed_but_not_simple(self):
        seq = [(1, 1), (1, 2), (1, 3), (2, 3), (2, 1)]
        assert validate_path(full(2, 3), seq).verdict == PathVerdict.CLOSED

    def test_open_not_simple(self):
        seq = [(1, 1), (1, 2), (1, 3), (2, 3)]
        assert validate_path(full(2, 3), seq).verdict == PathVerdict.OPEN_PATH


class TestFind:
    def test_walk_takes_smallest_position(self):
        # from row 2 the walk goes to (2, 1), not to (2, 2) which would close at once
        pattern = Pattern.from_positions(3, 3, [(1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
        path = find_closed_simple_path(pattern)
        expected = Pattern.from_positions(3, 3, [(1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2)])
        assert path.support == expected.positions
        assert validate_path(pattern, path.positions).verdict == PathVerdict.CLOSED_SIMPLE

    def test_demo(self, demo3x5):
        path = find_closed_simple_path(demo3x5)
        assert path is not None
        assert path.support == frozenset(Pattern.from_positions(3, 5, DISPLAYED).positions)
        assert validate_path(demo3x5, path.positions).verdict == PathVerdict.CLOSED_SIMPLE

    def test_reductions_are_irreducible(self, demo3x5):
        assert find_closed_simple_path(reduce_at(demo3x5, (1, 1))) is None
        assert find_closed_simple_path(reduce_at(demo3x5, (1, 4))) is None

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(2, 7) for n in range(2, 7)])
    def test_arrow_is_irreducible(self, m, n):
        cells = {(1, j) for j in range(1, n + 1)} | {(i, 1) for i in range(1, m + 1)}
        arrow = Pattern.from_positions(m, n, cells)
        assert len(arrow) == m + n - 1
        assert is_irreducible(arrow)
        assert is_forest(arrow)

    @hsettings(max_examples=300, deadline=None)
    @given(dense_supports())
    def test_dense_supports_have_paths(self, pattern):
        path = find_closed_simple_path(pattern)
        assert path is not None
        assert validate_path(pattern, path.positions).verdict == PathVerdict.CLOSED_SIMPLE

    @hsettings(max_examples=300, deadline=None)
    @given(dense_supports())
    def test_forest_agrees_with_search(self, pattern):
        assert is_forest(pattern) == (find_closed_simple_path(pattern) is None)

    def test_forest_agrees_exhaustively(self):
        for pattern in all_supports(3, 3):
            irreducible = is_irreducible(pattern)
            assert irreducible == is_forest(pattern)
            if irreducible:
                assert len(pattern) <= 5


class TestEnumerate:
    def test_full_2x2(self):
        paths = enumerate_closed_simple_paths(full(2, 2))
        assert len(paths) == 1
        assert len(paths[0]) == 4

    def test_full_3x3(self):
        paths = enumerate_closed_simple_paths(full(3, 3))
        assert sorted(len(p) for p in paths) == [4] * 9 + [6] * 6
        for p in paths:
            assert validate_path(full(3, 3), p.positions).verdict == PathVerdict.CLOSED_SIMPLE

    def test_canonical_is_stable(self, demo3x5):
        (only,) = enumerate_closed_simple_paths(demo3x5)
        rotated = Path(tuple(only.positions[2:] + only.positions[:2]), True, True)
        assert rotated.canonical() == only

    def test_cap(self, caps):
        caps.MAX_PATH_SUPPORT = 3
        with pytest.raises(SearchSpaceTooLarge):
            enumerate_closed_simple_paths(full(2, 2))


class TestReduction:
    def test_on_path(self, demo3x5):
        assert on_closed_simple_path(demo3x5, (1, 1))
        assert not on_closed_simple_path(demo3x5, (1, 2))

    def test_off_path(self):
        pattern = Pattern.from_positions(2, 3, [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)])
        assert not on_closed_simple_path(pattern, (2, 3))
        assert path_through(pattern, (2, 3)) is None
        with pytest.raises(NotOnClosedSimplePath):
            reduce_at(pattern, (2, 3))

    def test_path_through(self, demo3x5):
        path = path_through(demo3x5, (2, 2))
        assert (2, 2) in path.positions
        assert validate_path(demo3x5, path.positions).verdict == PathVerdict.CLOSED_SIMPLE
        with pytest.raises(NotInSupport):
            path_through(demo3x5, (1, 2))

    def test_reduce_at_not_in_support(self, demo3x5):
        with pytest.raises(NotInSupport):
            reduce_at(demo3x5, (3, 5))


class TestChains:
    def test_displayed_chains(self, demo3x3):
        first = replay_chain(demo3x3, [(1, 1), (3, 3)])
        second = replay_chain(demo3x3, [(2, 2), (3, 3)])
        assert first.is_valid() and second.is_valid()
        assert first.length == second.length == 3
        assert first.patterns[1].to_rows() == [[0, 1, 0], [1, 1, 1], [0, 1, 1]]

    def test_census(self, demo3x3):
        census = enumerate_all_chains(demo3x3)
        assert census.distinct_lengths == [3]
        assert census.total == len(list(iter_chains(demo3x3)))

    def test_greedy_chain(self, demo3x3):
        chain = reduction_chain(demo3x3)
        assert chain.is_valid()
        assert chain.length == 3 == 1 + cycle_rank(demo3x3)

    def test_irreducible_chain(self):
        arrow = Pattern.from_positions(2, 2, [(1, 1), (1, 2), (2, 1)])
        chain = reduction_chain(arrow)
        assert chain.length == 1
        assert chain.deletions == ()

    def test_shared_start(self, demo3x3):
        assert shared_start_lemma_holds(demo3x3)
        assert shared_start_lemma_holds(full(3, 3))

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 4) for n in range(1, 4)])
    def test_shared_start_exhaustive(self, m, n):
        for pattern in all_supports(m, n):
            assert shared_start_lemma_holds(pattern), pattern.to_rows()

    @pytest.mark.slow
    @hsettings(max_examples=150, deadline=None)
    @given(st.sets(st.sampled_from(list(itertools.product(range(1, 4), range(1, 5))))))
    def test_shared_start_random_3x4(self, cells):
        assert shared_start_lemma_holds(Pattern.from_positions(3, 4, cells))

    def test_cap(self, caps):
        caps.MAX_CHAIN_SUPPORT = 5
        with pytest.raises(SearchSpaceTooLarge):
            enumerate_all_chains(full(3, 3))

    @pytest.mark.slow
    def test_unique_length_exhaustive(self):
        for pattern in all_supports(3, 3):
            census = enumerate_all_chains(pattern)
            assert census.distinct_lengths == [1 + cycle_rank(pattern)]

    @pytest.mark.slow
    @hsettings(max_examples=200, deadline=None)
    @given(small_supports())
    def test_unique_length_random(self, pattern):
        assert enumerate_all_chains(pattern).distinct_lengths == [1 + cycle_rank(pattern)]

    @pytest.mark.slow
    def test_deletions_commute(self):
        for pattern in all_supports(3, 3):
            for chain in iter_chains(pattern):
                for order in itertools.permutations(chain.deletions):
                    assert replay_chain(pattern, order).is_valid()

    @pytest.mark.slow
    @hsettings(max_examples=150, deadline=None)
    @given(small_supports(), st.data())
    def test_deletions_commute_random(self, pattern, data):
        chains = list(itertools.islice(iter_chains(pattern), 200))
        chain = data.draw(st.sampled_from(chains))
        orders = itertools.permutations(chain.deletions)
        for order in itertools.islice(orders, 120):
            assert replay_chain(pattern, order).is_valid()
