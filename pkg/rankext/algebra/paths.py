"""
Paths in the support of a matrix.

Only the zero/nonzero pattern matters here, so every operation accepts a
MatrixFq or a Pattern and works on the set of nonzero positions. A support
is read as a bipartite graph with one vertex per row, one per column and one
edge per position: closed simple paths are exactly the cycles of that graph
and irreducible supports are exactly its forests.
"""

import enum
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

import numpy as np

from rankext.algebra.matfq import MatrixFq, raw
from rankext.core.config import settings
from rankext.core.errors import (
    InputError,
    InvariantViolation,
    NotInSupport,
    NotOnClosedSimplePath,
    SearchSpaceTooLarge,
)

logger = logging.getLogger(__name__)


class Position(NamedTuple):
    """1-based (row, column)."""

    i: int
    j: int


# Graph vertices: (0, i) for row i, (1, j) for column j.
Vertex = Tuple[int, int]


def _row(p: Position) -> Vertex:
    return (0, p.i)


def _col(p: Position) -> Vertex:
    return (1, p.j)


@dataclass(frozen=True)
class Pattern:
    """A zero/nonzero pattern on an m×n grid."""

    m: int
    n: int
    positions: FrozenSet[Position]

    @classmethod
    def of(cls, obj: Union["Pattern", MatrixFq]) -> "Pattern":
        if isinstance(obj, Pattern):
            return obj
        if isinstance(obj, MatrixFq):
            rows, cols = np.nonzero(raw(obj.array))
            return cls(obj.m, obj.n, frozenset(Position(int(i) + 1, int(j) + 1) for i, j in zip(rows, cols)))
        raise InputError(f"Expected a matrix or a pattern, got {type(obj).__name__}")

    @classmethod
    def from_positions(cls, m: int, n: int, positions: Iterable[Sequence[int]]) -> "Pattern":
        if m < 1 or n < 1:
            raise InputError(f"Pattern needs positive dimensions, got {m}x{n}")
        cells = set()
        for p in positions:
            pos = Position(int(p[0]), int(p[1]))
            if not (1 <= pos.i <= m and 1 <= pos.j <= n):
                raise InputError(f"Position {tuple(pos)} outside {m}x{n}", position=list(pos))
            cells.add(pos)
        return cls(m, n, frozenset(cells))

    def __len__(self) -> int:
        return len(self.positions)

    def __contains__(self, pos) -> bool:
        return Position(*pos) in self.positions

    def sorted(self) -> List[Position]:
        return sorted(self.positions)

    def without(self, pos: Position) -> "Pattern":
        return Pattern(self.m, self.n, self.positions - {Position(*pos)})

    def to_rows(self) -> List[List[int]]:
        grid = [[0] * self.n for _ in range(self.m)]
        for p in self.positions:
            grid[p.i - 1][p.j - 1] = 1
        return grid


def support(M: Union[MatrixFq, Pattern]) -> FrozenSet[Position]:
    return Pattern.of(M).positions


def _adjacency(positions: Iterable[Position]) -> Dict[Vertex, List[Position]]:
    adj: Dict[Vertex, List[Position]] = {}
    for p in sorted(positions):
        adj.setdefault(_row(p), []).append(p)
        adj.setdefault(_col(p), []).append(p)
    return adj


def _other_end(p: Position, v: Vertex) -> Vertex:
    return _col(p) if v == _row(p) else _row(p)


# Paths


def _canonical(seq: Tuple[Position, ...], closed: bool) -> Tuple[Position, ...]:
    if not seq:
        return seq
    if not closed:
        return min(seq, tuple(reversed(seq)))
    candidates = []
    for s in (seq, tuple(reversed(seq))):
        for r in range(len(s)):
            candidates.append(s[r:] + s[:r])
    return min(candidates)


def _shares(a: Position, b: Position) -> bool:
    return a.i == b.i or a.j == b.j


@dataclass(frozen=True)
class Path:
    positions: Tuple[Position, ...]
    closed: bool
    simple: bool

    @property
    def support(self) -> FrozenSet[Position]:
        return frozenset(self.positions)

    def __len__(self) -> int:
        return len(self.positions)

    def canonical(self) -> "Path":
        """Rotation/reflection-minimal representative of the same path."""
        return Path(_canonical(self.positions, self.closed), self.closed, self.simple)

    def to_lists(self) -> List[List[int]]:
        return [[p.i, p.j] for p in self.positions]


class PathVerdict(str, enum.Enum):
    INVALID = "invalid"
    OPEN_PATH = "open-path"
    SIMPLE_OPEN = "simple-open"
    CLOSED = "closed"
    CLOSED_SIMPLE = "closed-simple"


@dataclass(frozen=True)
class PathCheck:
    verdict: PathVerdict
    reason: str
    path: Optional[Path] = None


def _is_simple(seq: Sequence[Position]) -> bool:
    rows = Counter(p.i for p in seq)
    cols = Counter(p.j for p in seq)
    return max(rows.values()) <= 2 and max(cols.values()) <= 2


def validate_path(M: Union[MatrixFq, Pattern], seq: Sequence[Sequence[int]]) -> PathCheck:
    """
    Classify a position sequence as a path of M.

    A path visits distinct nonzero positions, consecutive ones sharing a row
    or a column. It is closed when it has length >= 4 and its ends share a
    line, and simple when no three of its positions share a line.
    """
    pattern = Pattern.of(M)
    if not seq:
        return PathCheck(PathVerdict.INVALID, "empty sequence")
    positions = tuple(Position(int(p[0]), int(p[1])) for p in seq)
    for p in positions:
        if p not in pattern.positions:
            return PathCheck(PathVerdict.INVALID, f"position {tuple(p)} is not a nonzero entry")
    if len(set(positions)) != len(positions):
        return PathCheck(PathVerdict.INVALID, "repeated position")
    for a, b in zip(positions, positions[1:]):
        if not _shares(a, b):
            return PathCheck(PathVerdict.INVALID, f"{tuple(a)} and {tuple(b)} share no line")

    simple = _is_simple(positions)
    closed = len(positions) >= 4 and _shares(positions[0], positions[-1])
    path = Path(positions, closed, simple)
    if closed and simple:
        return PathCheck(PathVerdict.CLOSED_SIMPLE, "closed and simple", path)
    if closed:
        return PathCheck(PathVerdict.CLOSED, "three positions share a line", path)
    if simple:
        return PathCheck(PathVerdict.SIMPLE_OPEN, "ends share no line" if len(positions) >= 4 else "shorter than 4", path)
    return PathCheck(PathVerdict.OPEN_PATH, "three positions share a line", path)


def prune(M: Union[MatrixFq, Pattern]) -> FrozenSet[Position]:
    """Repeatedly drop lines holding at most one position."""
    alive = set(support(M))
    changed = True
    while changed:
        rows = Counter(p.i for p in alive)
        cols = Counter(p.j for p in alive)
        dead = {p for p in alive if rows[p.i] <= 1 or cols[p.j] <= 1}
        changed = bool(dead)
        alive -= dead
    return frozenset(alive)


def _cycle_to_path(edges: Sequence[Position]) -> Path:
    return Path(tuple(edges), True, True).canonical()


def find_closed_simple_path(M: Union[MatrixFq, Pattern]) -> Optional[Path]:
    """
    Prune, then walk alternately along rows and columns.

    The walk starts at the smallest surviving position and moves along its
    row. At every step it takes the smallest position on the current line
    other than the one it arrived by; pruning leaves at least one. Once it
    reaches a line already visited, the positions since that line was first
    visited form a closed simple path.
    """
    alive = prune(M)
    if not alive:
        return None
    adj = _adjacency(alive)
    start = min(alive)
    edges: List[Position] = [start]
    first_seen: Dict[Vertex, int] = {_col(start): 0, _row(start): 1}
    current = _row(start)
    while True:
        last = edges[-1]
        step = next(p for p in adj[current] if p != last)
        nxt = _other_end(step, current)
        edges.append(step)
        if nxt in first_seen:
            return _cycle_to_path(edges[first_seen[nxt] :])
        first_seen[nxt] = len(edges)
        current = nxt


def _check_path_cap(pattern: Pattern) -> None:
    if len(pattern) > settings.MAX_PATH_SUPPORT:
        raise SearchSpaceTooLarge(
            f"Support of size {len(pattern)} exceeds the path cap {settings.MAX_PATH_SUPPORT}",
            size=len(pattern),
            cap=settings.MAX_PATH_SUPPORT,
        )


def enumerate_closed_simple_paths(M: Union[MatrixFq, Pattern]) -> List[Path]:
    """
    Every closed simple path once, as its canonical representative.

    Cycles are grown from their smallest position using larger positions
    only; each is met once per direction and deduplicated by support.
    """
    pattern = Pattern.of(M)
    _check_path_cap(pattern)
    alive = prune(pattern)
    adj = _adjacency(alive)
    found: Dict[FrozenSet[Position], Path] = {}

    for start in sorted(alive):
        target = _col(start)
        stack = [(_row(start), [start], {target, _row(start)})]
        while stack:
            current, edges, visited = stack.pop()
            for p in adj[current]:
                if p <= start or p == edges[-1]:
                    continue
                nxt = _other_end(p, current)
                if nxt == target and len(edges) >= 3:
                    cycle = edges + [p]
                    key = frozenset(cycle)
                    if key not in found:
                        found[key] = _cycle_to_path(cycle)
                elif nxt not in visited:
                    stack.append((nxt, edges + [p], visited | {nxt}))
    return sorted(found.values(), key=lambda path: path.positions)


def _connected_without(adj: Dict[Vertex, List[Position]], pos: Position) -> bool:
    """Do row(pos) and col(pos) stay connected once pos is removed?"""
    return _route_without(adj, pos) is not None


def _route_without(adj: Dict[Vertex, List[Position]], pos: Position) -> Optional[List[Position]]:
    source, target = _row(pos), _col(pos)
    parent: Dict[Vertex, Optional[Tuple[Vertex, Position]]] = {source: None}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if v == target:
            break
        for p in adj.get(v, []):
            if p == pos:
                continue
            w = _other_end(p, v)
            if w not in parent:
                parent[w] = (v, p)
                queue.append(w)
    if target not in parent:
        return None
    route: List[Position] = []
    v = target
    while parent[v] is not None:
        prev, p = parent[v]
        route.append(p)
        v = prev
    return route


def on_closed_simple_path(M: Union[MatrixFq, Pattern], pos: Sequence[int]) -> bool:
    pattern = Pattern.of(M)
    pos = Position(*pos)
    if pos not in pattern.positions:
        return False
    return _connected_without(_adjacency(pattern.positions), pos)


def path_through(M: Union[MatrixFq, Pattern], pos: Sequence[int]) -> Optional[Path]:
    """A shortest closed simple path containing pos, if any."""
    pattern = Pattern.of(M)
    pos = Position(*pos)
    if pos not in pattern.positions:
        raise NotInSupport(f"Position {tuple(pos)} is not in the support", position=list(pos))
    route = _route_without(_adjacency(pattern.positions), pos)
    if route is None:
        return None
    # route runs col(pos) -> row(pos); prepend pos to close it
    return _cycle_to_path([pos] + route)


def is_forest(M: Union[MatrixFq, Pattern]) -> bool:
    """Union-find test: no position closes a cycle among the lines."""
    parent: Dict[Vertex, Vertex] = {}

    def find(v: Vertex) -> Vertex:
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for p in sorted(support(M)):
        a, b = find(_row(p)), find(_col(p))
        if a == b:
            return False
        parent[a] = b
    return True


def cycle_rank(M: Union[MatrixFq, Pattern]) -> int:
    """|support| - |occupied lines| + connected components."""
    positions = support(M)
    adj = _adjacency(positions)
    seen: Set[Vertex] = set()
    components = 0
    for v in adj:
        if v in seen:
            continue
        components += 1
        queue = deque([v])
        seen.add(v)
        while queue:
            u = queue.popleft()
            for p in adj[u]:
                w = _other_end(p, u)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return len(positions) - len(adj) + components


def is_irreducible(M: Union[MatrixFq, Pattern]) -> bool:
    pattern = Pattern.of(M)
    irreducible = find_closed_simple_path(pattern) is None
    if irreducible and len(pattern) > pattern.m + pattern.n - 1:
        raise InvariantViolation(
            f"Irreducible support of size {len(pattern)} exceeds m + n - 1 = {pattern.m + pattern.n - 1}"
        )
    return irreducible


def reduce_at(M: Union[MatrixFq, Pattern], pos: Sequence[int]) -> Pattern:
    """Zero out pos, which must lie on a closed simple path."""
    pattern = Pattern.of(M)
    pos = Position(*pos)
    if pos not in pattern.positions:
        raise NotInSupport(f"Position {tuple(pos)} is not in the support", position=list(pos))
    if not on_closed_simple_path(pattern, pos):
        raise NotOnClosedSimplePath(
            f"Position {tuple(pos)} lies on no closed simple path", position=list(pos)
        )
    return pattern.without(pos)


# Chains


@dataclass(frozen=True)
class ReductionChain:
    patterns: Tuple[Pattern, ...]
    deletions: Tuple[Position, ...]

    @property
    def length(self) -> int:
        return len(self.patterns)

    @property
    def terminal(self) -> Pattern:
        return self.patterns[-1]

    def is_valid(self) -> bool:
        if len(self.patterns) != len(self.deletions) + 1:
            return False
        for before, after, pos in zip(self.patterns, self.patterns[1:], self.deletions):
            if not on_closed_simple_path(before, pos) or after != before.without(pos):
                return False
        return find_closed_simple_path(self.terminal) is None


def _deletable(pattern: Pattern) -> List[Position]:
    adj = _adjacency(pattern.positions)
    return [p for p in pattern.sorted() if _connected_without(adj, p)]


def reduction_chain(M: Union[MatrixFq, Pattern]) -> ReductionChain:
    """Greedy chain: always delete the smallest position on a closed simple path."""
    pattern = Pattern.of(M)
    patterns = [pattern]
    deletions: List[Position] = []
    while True:
        candidates = _deletable(pattern)
        if not candidates:
            break
        pos = candidates[0]
        pattern = pattern.without(pos)
        deletions.append(pos)
        patterns.append(pattern)
    return ReductionChain(tuple(patterns), tuple(deletions))


def replay_chain(M: Union[MatrixFq, Pattern], deletions: Sequence[Sequence[int]]) -> ReductionChain:
    """Apply the deletions in order; each must be a legal reduction."""
    pattern = Pattern.of(M)
    patterns = [pattern]
    done: List[Position] = []
    for pos in deletions:
        pattern = reduce_at(pattern, pos)
        done.append(Position(*pos))
        patterns.append(pattern)
    return ReductionChain(tuple(patterns), tuple(done))


def _check_chain_cap(pattern: Pattern) -> None:
    if len(pattern) > settings.MAX_CHAIN_SUPPORT:
        raise SearchSpaceTooLarge(
            f"Support of size {len(pattern)} exceeds the chain cap {settings.MAX_CHAIN_SUPPORT}",
            size=len(pattern),
            cap=settings.MAX_CHAIN_SUPPORT,
        )


def iter_chains(M: Union[MatrixFq, Pattern]) -> Iterator[ReductionChain]:
    """Every reduction chain, depth first, deletions in increasing order."""
    root = Pattern.of(M)
    _check_chain_cap(root)

    def walk(pattern: Pattern, patterns: Tuple[Pattern, ...], deletions: Tuple[Position, ...]):
        candidates = _deletable(pattern)
        if not candidates:
            yield ReductionChain(patterns, deletions)
            return
        for pos in candidates:
            nxt = pattern.without(pos)
            yield from walk(nxt, patterns + (nxt,), deletions + (pos,))

    yield from walk(root, (root,), ())


@dataclass(frozen=True)
class ChainCensus:
    """Multiset of chain lengths: length -> number of distinct chains."""

    lengths: Dict[int, int] = field(default_factory=dict)

    @property
    def distinct_lengths(self) -> List[int]:
        return sorted(self.lengths)

    @property
    def total(self) -> int:
        return sum(self.lengths.values())


def enumerate_all_chains(M: Union[MatrixFq, Pattern]) -> ChainCensus:
    """
    Exhaustive census of chain lengths over every legal deletion order.

    Counts are memoised per intermediate support, which only depends on the
    set of deleted positions.
    """
    root = Pattern.of(M)
    _check_chain_cap(root)
    memo: Dict[FrozenSet[Position], Counter] = {}

    def census(pattern: Pattern) -> Counter:
        key = pattern.positions
        if key in memo:
            return memo[key]
        candidates = _deletable(pattern)
        if not candidates:
            result = Counter({1: 1})
        else:
            result = Counter()
            for pos in candidates:
                for length, count in census(pattern.without(pos)).items():
                    result[length + 1] += count
        memo[key] = result
        return result

    counts = census(root)
    logger.info(f"Chain census over {len(memo)} intermediate supports: {dict(counts)}")
    return ChainCensus(dict(sorted(counts.items())))


def shared_start_lemma_holds(M: Union[MatrixFq, Pattern]) -> bool:
    """
    For two closed simple paths with different supports through a common
    position p, every position of the first outside the second must still
    lie on a closed simple path once p is removed.
    """
    pattern = Pattern.of(M)
    paths = enumerate_closed_simple_paths(pattern)
    for first in paths:
        for second in paths:
            if first.support == second.support:
                continue
            for p in first.support & second.support:
                reduced = pattern.without(p)
                for x in first.support - second.support:
                    if not on_closed_simple_path(reduced, x):
                        logger.warning(f"Shared-start property fails at {tuple(p)} for {tuple(x)}")
                        return False
    return True
