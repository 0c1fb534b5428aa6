import itertools
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from rankext.algebra.code import code_line_spaces, code_new, min_distance, rank_one_basis
from rankext.algebra.extend import oracle_extension
from rankext.algebra.gf import FieldSpec, field_from_order, is_irreducible_modulus
from rankext.algebra.isometry import (
    CodeMap,
    check_inclusion_pair,
    identity_fixing_obstruction,
    is_isometry,
    map_new,
    property_p_witness,
    refute_property_p,
    verify_property_p,
)
from rankext.algebra.matfq import (
    MatrixFq,
    all_vectors,
    elementary,
    identity,
    matrix_power,
    multiplicative_order,
)
from rankext.algebra.paths import (
    Pattern,
    cycle_rank,
    enumerate_all_chains,
    find_closed_simple_path,
    is_forest,
    is_irreducible,
    reduce_at,
    reduction_chain,
    replay_chain,
    validate_path,
)
from rankext.core.config import settings
from rankext.core.errors import (
    InputError,
    SearchExhausted,
    SearchSpaceTooLarge,
    UnknownFixture,
    UnsupportedParams,
)
from rankext.schemas.extension import PropertyPSchema, WitnessSchema
from rankext.schemas.fixture import FixtureDescriptor, FixtureReport
from rankext.schemas.reports import ObstructionSchema, RefutationSchema

logger = logging.getLogger(__name__)

Outcome = Tuple[Dict[str, Any], Dict[str, Any], Dict[str, Any]]


def primitive_companion(F: FieldSpec, n: int) -> MatrixFq:
    """
    Companion matrix of the first monic primitive polynomial of degree n.

    Candidates x^n + c_{n-1}x^{n-1} + ... + c_0 are scanned with the tail
    (c_0, ..., c_{n-1}) in vector enumeration order; the first irreducible
    one whose companion has order q^n - 1 wins.

    Args:
        F: A prime field
        n: Degree, at least 1

    Returns:
        An n×n matrix of multiplicative order q^n - 1
    """
    if not F.is_prime_field:
        raise UnsupportedParams(f"primitive_companion needs a prime field, got {F}")
    if n < 1:
        raise InputError(f"Degree must be positive, got {n}")
    target = F.q ** n - 1
    if target > settings.MAX_ORDER:
        raise SearchSpaceTooLarge(
            f"Order q^n - 1 = {target} exceeds the order cap {settings.MAX_ORDER}",
            size=target,
            cap=settings.MAX_ORDER,
        )

    for tail in all_vectors(F, n):
        if tail[0] == 0:
            continue
        if not is_irreducible_modulus(F.p, [int(c) for c in tail] + [1]):
            continue
        rows = [[0] * n for _ in range(n)]
        for i in range(1, n):
            rows[i][i - 1] = 1
        for i, c in enumerate(-tail):
            rows[i][n - 1] = int(c)
        C = MatrixFq.from_rows(F, rows)
        if multiplicative_order(C, bound=target) == target:
            logger.info(f"Primitive tail {[int(c) for c in tail]} over {F}")
            return C
    raise SearchExhausted(f"No primitive polynomial of degree {n} over {F}")


def _E(F: FieldSpec, m: int, n: int, i: int, j: int) -> MatrixFq:
    return elementary(F, m, n, i, j)


def _M(F: FieldSpec, rows) -> MatrixFq:
    return MatrixFq.from_rows(F, rows)


def _witness(w) -> Optional[Dict[str, Any]]:
    return WitnessSchema.from_domain(w).model_dump(mode="json") if w is not None else None


class FixtureService:
    """
    Catalogue of scripted reproductions of known isometry examples.

    Each fixture builds its objects, runs the relevant checks and reports the
    computed verdicts next to the expected ones.
    """

    def __init__(self):
        self._catalogue: Dict[str, Tuple[str, Dict[str, int], Callable[..., Outcome]]] = {
            "bg-transpose-2x3": (
                "Transpose inside the left 2x2 block of 2x3 matrices; isometric but not extendable",
                {"q": 2},
                self._bg_transpose,
            ),
            "bg-block-4x4": (
                "Block map (A, B) -> (A, B^t) on block-diagonal 4x4 matrices over GF(2)",
                {},
                self._bg_block,
            ),
            "rowspace-mismatch-2x3": (
                "Constant-rank-2 codes whose row spaces have dimensions 2 and 3",
                {},
                self._rowspace_mismatch,
            ),
            "singer-cycle": (
                "F_q[P] for a Singer cycle P with P -> P^(q-1); orders differ",
                {"q": 3, "n": 2},
                self._singer_cycle,
            ),
            "non-multiplicative-3x3": (
                "Identity-fixing isometry of a 3x3 code that does not respect products",
                {},
                self._non_multiplicative,
            ),
            "rank-one-nonextendable-2x3": (
                "Rank-one generated 2x3 code with an isometry failing Property 1",
                {},
                self._rank_one_nonextendable,
            ),
            "rank-one-family-n": (
                "Rank-one generated 2xn codes of dimension 2n-2 with a non-extendable isometry",
                {"n": 4},
                self._rank_one_family,
            ),
            "scalar-rank-one-2x4": (
                "Five rank-one generators, one scaled by alpha; row-space inclusion breaks",
                {"q": 3, "alpha": 2},
                self._scalar_rank_one,
            ),
            "arrow-irreducible": (
                "First row plus first column: irreducible with m+n-1 entries",
                {"m": 3, "n": 4},
                self._arrow,
            ),
            "path-demo-3x5": (
                "A 3x5 support with a closed simple path; both reductions are irreducible",
                {},
                self._path_demo,
            ),
            "chain-demo-3x3": (
                "Two displayed reduction chains of a 3x3 support; all chains have length 3",
                {},
                self._chain_demo,
            ),
        }

    def list_examples(self) -> List[FixtureDescriptor]:
        """Catalogue entries in registration order."""
        return [
            FixtureDescriptor(name=name, summary=summary, defaults=dict(defaults))
            for name, (summary, defaults, _) in self._catalogue.items()
        ]

    def run_example(self, name: str, params: Optional[Dict[str, Any]] = None) -> FixtureReport:
        """
        Run a fixture and compare against its expected verdicts.

        Args:
            name: Catalogue name
            params: Overrides of the fixture defaults; values may be strings

        Returns:
            FixtureReport with passed set iff every expected verdict matches

        Example:
            fixture_service.run_example("singer-cycle", {"q": 3, "n": 2})
        """
        if name not in self._catalogue:
            raise UnknownFixture(f"Unknown fixture '{name}'", known=sorted(self._catalogue))
        _, defaults, runner = self._catalogue[name]
        resolved = self._resolve_params(name, defaults, params or {})
        logger.info(f"Running fixture {name} with {resolved}")
        computed, expected, auxiliary = runner(**resolved)
        return self._report(name, resolved, computed, expected, auxiliary)

    def run_ingested(self, phi: CodeMap) -> FixtureReport:
        """
        Checks for an externally supplied map, such as codes taken from a
        classification table. There are no expected verdicts, so the report
        always passes.
        """
        C1 = phi.domain
        square = C1.m == C1.n
        Id_m, Id_n = identity(C1.field, C1.m), identity(C1.field, C1.n)
        refutation = refute_property_p(phi)
        witness = oracle_extension(phi, allow_transpose=square)
        computed = {
            "isometry": is_isometry(phi),
            "identity_pair": verify_property_p(phi, Id_m, Id_n),
            "refuted": refutation is not None,
            "extendable": witness is not None,
        }
        auxiliary = {
            "dim": C1.dim,
            "refutation": RefutationSchema.from_domain(refutation).model_dump(mode="json") if refutation else None,
            "witness": _witness(witness),
        }
        return self._report("ingested", {}, computed, {}, auxiliary)

    # Helpers

    def _resolve_params(self, name: str, defaults: Dict[str, int], given: Dict[str, Any]) -> Dict[str, int]:
        unknown = sorted(set(given) - set(defaults))
        if unknown:
            raise UnsupportedParams(
                f"Fixture '{name}' does not take {', '.join(unknown)}",
                accepted=sorted(defaults),
            )
        resolved = dict(defaults)
        for key, value in given.items():
            try:
                resolved[key] = int(value)
            except (TypeError, ValueError):
                raise UnsupportedParams(f"Parameter {key}={value!r} is not an integer")
        return resolved

    def _report(self, name, params, computed, expected, auxiliary) -> FixtureReport:
        mismatches = [
            f"{key}: expected {expected[key]!r}, computed {computed.get(key)!r}"
            for key in sorted(expected)
            if computed.get(key) != expected[key]
        ]
        if mismatches:
            logger.warning(f"Fixture {name} mismatches: {mismatches}")
        return FixtureReport(
            name=name,
            parameters=params,
            computed=computed,
            expected=expected,
            auxiliary=auxiliary,
            passed=not mismatches,
            mismatches=mismatches,
        )

    # Isometry fixtures

    def _bg_transpose(self, q: int) -> Outcome:
        F = field_from_order(q)
        positions = [(1, 1), (1, 2), (2, 1), (2, 2)]
        gens = [_E(F, 2, 3, i, j) for i, j in positions]
        images = [_E(F, 2, 3, j, i) for i, j in positions]
        phi = map_new(code_new(F, 2, 3, gens), images)
        witness = oracle_extension(phi, allow_transpose=True)
        computed = {
            "isometry": is_isometry(phi),
            "property_1": property_p_witness(phi) is not None,
            "extendable": witness is not None,
        }
        expected = {"isometry": True, "property_1": False, "extendable": False}
        return computed, expected, {"dim": phi.domain.dim}

    def _bg_block(self) -> Outcome:
        F = field_from_order(2)
        blocks = list(itertools.product((1, 2), repeat=2))
        gens = [_E(F, 4, 4, i, j) for i, j in blocks] + [_E(F, 4, 4, i + 2, j + 2) for i, j in blocks]
        images = [_E(F, 4, 4, i, j) for i, j in blocks] + [_E(F, 4, 4, j + 2, i + 2) for i, j in blocks]
        phi = map_new(code_new(F, 4, 4, gens), images)
        witness = oracle_extension(phi, allow_transpose=True)
        computed = {"isometry": is_isometry(phi), "extendable": witness is not None}
        expected = {"isometry": True, "extendable": False}
        return computed, expected, {"dim": phi.domain.dim, "pruned": phi.domain.contains(identity(F, 4))}

    def _rowspace_mismatch(self) -> Outcome:
        F = field_from_order(2)
        gens = [_M(F, [[1, 1, 0], [0, 1, 0]]), _M(F, [[0, 1, 0], [1, 0, 0]])]
        images = [_M(F, [[0, 0, 1], [0, 1, 0]]), _M(F, [[0, 1, 0], [1, 0, 0]])]
        C1 = code_new(F, 2, 3, gens)
        phi = map_new(C1, images)
        refutation = refute_property_p(phi)
        computed = {
            "isometry": is_isometry(phi),
            "row_dims": [code_line_spaces(C1)[0].dim, code_line_spaces(phi.codomain)[0].dim],
            "property_1": property_p_witness(phi) is not None,
            "refuted": refutation is not None,
            "extendable": oracle_extension(phi) is not None,
        }
        expected = {
            "isometry": True,
            "row_dims": [2, 3],
            "property_1": False,
            "refuted": True,
            "extendable": False,
        }
        auxiliary = {
            "min_distance": min_distance(C1),
            "refutation": RefutationSchema.from_domain(refutation).model_dump(mode="json") if refutation else None,
        }
        return computed, expected, auxiliary

    def _singer_cycle(self, q: int, n: int) -> Outcome:
        if q == 2:
            raise UnsupportedParams("singer-cycle needs q >= 3: over GF(2) the image P^(q-1) is P itself")
        if n < 2:
            raise UnsupportedParams(f"singer-cycle needs n >= 2, got {n}")
        F = field_from_order(q)
        if not F.is_prime_field:
            raise UnsupportedParams(f"singer-cycle needs a prime q, got {q}")
        P = primitive_companion(F, n)
        Q = matrix_power(P, q - 1)
        powers = [matrix_power(P, t) for t in range(n)]

        images = [identity(F, n), Q]
        for _ in range(2, n):
            span = code_new(F, n, n, images)
            images.append(next(X for X in powers if not span.contains(X)))
        C1 = code_new(F, n, n, powers)
        phi = map_new(C1, images)

        obstruction = identity_fixing_obstruction(phi)
        computed = {
            "isometry": is_isometry(phi),
            "min_distance": min_distance(C1),
            "order_P": multiplicative_order(P),
            "order_Q": multiplicative_order(Q),
            "extendable": oracle_extension(phi, allow_transpose=True) is not None,
        }
        expected = {
            "isometry": True,
            "min_distance": n,
            "order_P": q ** n - 1,
            "order_Q": (q ** n - 1) // (q - 1),
            "extendable": False,
        }
        auxiliary = {
            "P": P.to_rows(),
            "Q": Q.to_rows(),
            "obstruction": ObstructionSchema.from_domain(obstruction).model_dump(mode="json") if obstruction else None,
        }
        return computed, expected, auxiliary

    def _non_multiplicative(self) -> Outcome:
        F = field_from_order(2)
        Id = identity(F, 3)
        X = _M(F, [[1, 0, 0], [1, 1, 0], [0, 0, 0]])
        Y = _M(F, [[0, 0, 0], [1, 0, 0], [0, 0, 1]])
        phi = map_new(code_new(F, 3, 3, [Id, X, Y]), [Id, Y, X])
        A = _M(F, [[0, 0, 1], [1, 1, 1], [1, 0, 0]])
        B = _M(F, [[1, 0, 0], [1, 0, 1], [1, 1, 0]])
        found = property_p_witness(phi)
        obstruction = identity_fixing_obstruction(phi)
        computed = {
            "isometry": is_isometry(phi),
            "property_1": found is not None,
            "displayed_pair": verify_property_p(phi, A, B),
            "extendable": oracle_extension(phi, allow_transpose=True) is not None,
        }
        expected = {"isometry": True, "property_1": True, "displayed_pair": True, "extendable": False}
        auxiliary = {
            "dim": phi.domain.dim,
            "witness": PropertyPSchema.from_domain(found).model_dump(mode="json") if found else None,
            "obstruction": ObstructionSchema.from_domain(obstruction).model_dump(mode="json") if obstruction else None,
        }
        return computed, expected, auxiliary

    def _rank_one_generators(self, F: FieldSpec) -> Tuple[List[MatrixFq], List[MatrixFq]]:
        C1 = _M(F, [[1, 0, 0], [0, 0, 0]])
        C2 = _M(F, [[0, 0, 0], [0, 1, 0]])
        C3 = _M(F, [[0, 0, 1], [0, 0, 1]])
        C4 = _M(F, [[1, 1, 0], [1, 1, 0]])
        return [C1, C2, C3, C4], [C1, C2, C3, C4 + C3]

    def _rank_one_nonextendable(self) -> Outcome:
        F = field_from_order(2)
        gens, images = self._rank_one_generators(F)
        C1 = code_new(F, 2, 3, gens)
        phi = map_new(C1, images)
        basis = rank_one_basis(C1)
        computed = {
            "rank_one_generated": bool(basis),
            "isometry": is_isometry(phi),
            "property_1": property_p_witness(phi) is not None,
            "extendable": oracle_extension(phi) is not None,
        }
        expected = {"rank_one_generated": True, "isometry": True, "property_1": False, "extendable": False}
        return computed, expected, {"dim": C1.dim}

    def _rank_one_family(self, n: int) -> Outcome:
        if n < 4:
            raise UnsupportedParams(f"rank-one-family-n needs n >= 4, got {n}")
        F = field_from_order(2)
        small, small_images = self._rank_one_generators(F)

        def shifted(M: MatrixFq) -> MatrixFq:
            rows = [[0] * (n - 3) + row for row in M.to_rows()]
            return _M(F, rows)

        left = [_E(F, 2, n, i, j) for i in (1, 2) for j in range(1, n - 2)]
        gens = left + [shifted(M) for M in small]
        images = left + [shifted(M) for M in small_images]
        C1 = code_new(F, 2, n, gens)
        phi = map_new(C1, images)
        computed = {
            "dim": C1.dim,
            "isometry": is_isometry(phi),
            "extendable": oracle_extension(phi) is not None,
        }
        expected = {"dim": 2 * n - 2, "isometry": True, "extendable": False}
        return computed, expected, {"ambient_dim": 2 * n}

    def _scalar_rank_one(self, q: int, alpha: int) -> Outcome:
        F = field_from_order(q)
        if F.p == 2:
            raise UnsupportedParams(f"scalar-rank-one-2x4 needs odd characteristic, got q = {q}")
        if alpha in (0, 1) or not 0 <= alpha < q:
            raise UnsupportedParams(f"alpha must be a field element other than 0 and 1, got {alpha}")
        two = int(F.gf(1) + F.gf(1))
        gens = [
            _E(F, 2, 4, 1, 1),
            _E(F, 2, 4, 2, 2),
            _M(F, [[0, 0, 1, 0], [0, 0, two, 0]]),
            _M(F, [[0, 0, 0, 1], [0, 0, 0, 1]]),
            _M(F, [[0, 0, 0, 0], [1, 1, 1, 1]]),
        ]
        images = gens[:4] + [gens[4].scale(alpha)]
        phi = map_new(code_new(F, 2, 4, gens), images)
        C = gens[4] - gens[1]
        C_prime = gens[0] + gens[1] + gens[2] + gens[3] + gens[4]
        displayed = check_inclusion_pair(phi, C, C_prime)
        refutation = refute_property_p(phi)
        computed = {
            "isometry": is_isometry(phi),
            "refuted": refutation is not None,
            "displayed_pair_refutes": displayed is not None,
        }
        expected = {"isometry": True, "refuted": True, "displayed_pair_refutes": True}
        auxiliary = {
            "refutation": RefutationSchema.from_domain(refutation).model_dump(mode="json") if refutation else None,
            "displayed": RefutationSchema.from_domain(displayed).model_dump(mode="json") if displayed else None,
        }
        return computed, expected, auxiliary

    # Path fixtures

    def _arrow(self, m: int, n: int) -> Outcome:
        if not (1 <= m <= 12 and 1 <= n <= 12):
            raise UnsupportedParams(f"arrow-irreducible takes 1 <= m, n <= 12, got {m}x{n}")
        cells = {(1, j) for j in range(1, n + 1)} | {(i, 1) for i in range(1, m + 1)}
        pattern = Pattern.from_positions(m, n, cells)
        computed = {
            "irreducible": is_irreducible(pattern),
            "support": len(pattern),
            "forest": is_forest(pattern),
        }
        expected = {"irreducible": True, "support": m + n - 1, "forest": True}
        return computed, expected, {"chain_length": reduction_chain(pattern).length}

    def _path_demo(self) -> Outcome:
        M = Pattern.from_positions(3, 5, [(1, 1), (1, 4), (2, 2), (2, 4), (3, 1), (3, 2)])
        displayed = [(1, 1), (1, 4), (2, 4), (2, 2), (3, 2), (3, 1)]
        found = find_closed_simple_path(M)
        computed = {
            "support": len(M),
            "displayed_path": validate_path(M, displayed).verdict.value,
            "first_reduction_irreducible": is_irreducible(reduce_at(M, (1, 1))),
            "second_reduction_irreducible": is_irreducible(reduce_at(M, (1, 4))),
        }
        expected = {
            "support": 6,
            "displayed_path": "closed-simple",
            "first_reduction_irreducible": True,
            "second_reduction_irreducible": True,
        }
        auxiliary = {"found_path": found.to_lists() if found else None, "cycle_rank": cycle_rank(M)}
        return computed, expected, auxiliary

    def _chain_demo(self) -> Outcome:
        M = Pattern.from_positions(3, 3, [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
        first = replay_chain(M, [(1, 1), (3, 3)])
        second = replay_chain(M, [(2, 2), (3, 3)])
        census = enumerate_all_chains(M)
        computed = {
            "displayed_chains_valid": [first.is_valid(), second.is_valid()],
            "displayed_lengths": [first.length, second.length],
            "distinct_lengths": census.distinct_lengths,
        }
        expected = {
            "displayed_chains_valid": [True, True],
            "displayed_lengths": [3, 3],
            "distinct_lengths": [3],
        }
        return computed, expected, {"chains": census.total, "greedy_length": reduction_chain(M).length}


# Global instance
fixture_service = FixtureService()
