import argparse

from rankext.algebra.extend import (
    are_equivalent,
    extend_elementary,
    extend_rank_one_f2,
    oracle_extension,
    require_rank_one_f2,
)
from rankext.algebra.isometry import CodeMap, property_p_witness
from rankext.algebra.paths import Pattern, reduction_chain
from rankext.cli.deps import load_model
from rankext.core.errors import NotAnIsometry
from rankext.schemas.algebra import CodeSchema, MapSchema
from rankext.schemas.extension import AssignmentSchema, PropertyPSchema, WitnessSchema
from rankext.schemas.reports import ElementaryReport, ElementaryViolation, EquivalenceReport, OracleReport


def elementary(args: argparse.Namespace) -> ElementaryReport:
    """A non-isometric assignment is a verdict, not an error."""
    schema = load_model(args.assignment, AssignmentSchema)
    F, assignment = schema.to_domain()
    length = reduction_chain(Pattern(schema.m, schema.n, frozenset(assignment.positions))).length
    try:
        witness = extend_elementary(F, assignment, schema.m, schema.n)
    except NotAnIsometry as e:
        return ElementaryReport(
            isometry=False,
            violation=ElementaryViolation(position=e.position, expected=e.expected, found=e.found),
            chain_length=length,
        )
    return ElementaryReport(isometry=True, witness=WitnessSchema.from_domain(witness), chain_length=length)


def rank_one_f2(args: argparse.Namespace) -> OracleReport:
    """
    Uses the supplied Property 1 pair, or searches one. Without a pair the
    map has no untransposed extension, so only the transposed branch of the
    oracle is left to decide square codes.
    """
    phi = load_model(args.map, MapSchema).to_domain()
    require_rank_one_f2(phi)
    if args.witness is not None:
        pair = load_model(args.witness, PropertyPSchema).to_domain(phi.field)
    else:
        pair = property_p_witness(phi)
    if pair is None:
        if phi.domain.m == phi.domain.n:
            return _oracle_report(phi, allow_transpose=True, prune=True)
        return OracleReport(extendable=False)
    return OracleReport(extendable=True, witness=WitnessSchema.from_domain(extend_rank_one_f2(phi, pair)))


def _oracle_report(phi: CodeMap, allow_transpose: bool, prune: bool) -> OracleReport:
    witness = oracle_extension(phi, allow_transpose=allow_transpose, prune=prune)
    if witness is None:
        return OracleReport(extendable=False)
    return OracleReport(extendable=True, witness=WitnessSchema.from_domain(witness))


def oracle(args: argparse.Namespace) -> OracleReport:
    phi = load_model(args.map, MapSchema).to_domain()
    return _oracle_report(phi, allow_transpose=args.allow_transpose, prune=not args.no_prune)


def equivalent(args: argparse.Namespace) -> EquivalenceReport:
    C1 = load_model(args.code, CodeSchema).to_domain()
    C2 = load_model(args.other, CodeSchema).to_domain()
    witness = are_equivalent(C1, C2, allow_transpose=args.allow_transpose)
    if witness is None:
        return EquivalenceReport(equivalent=False)
    return EquivalenceReport(equivalent=True, witness=WitnessSchema.from_domain(witness))


def register(subparsers, common: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("extend-elementary", parents=[common], help="Extend E_h -> a_h E_h")
    p.add_argument("--assignment", required=True, help="Assignment JSON file")
    p.set_defaults(handler=elementary)

    p = subparsers.add_parser("extend-rankone-f2", parents=[common], help="Extend a rank-one generated map over GF(2)")
    p.add_argument("--map", required=True)
    p.add_argument("--witness", help="Property 1 pair JSON file; searched when omitted")
    p.set_defaults(handler=rank_one_f2)

    p = subparsers.add_parser("oracle", parents=[common], help="Exhaustive extension search")
    p.add_argument("--map", required=True)
    p.add_argument("--allow-transpose", action="store_true")
    p.add_argument("--no-prune", action="store_true", help="Always run the double loop")
    p.set_defaults(handler=oracle)

    p = subparsers.add_parser("equivalent", parents=[common], help="Exhaustive code equivalence search")
    p.add_argument("--code", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--allow-transpose", action="store_true")
    p.set_defaults(handler=equivalent)
