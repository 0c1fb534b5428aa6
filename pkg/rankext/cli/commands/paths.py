import argparse

from rankext.algebra.paths import (
    Pattern,
    enumerate_all_chains,
    find_closed_simple_path,
    iter_chains,
    reduction_chain,
    validate_path,
)
from rankext.cli.deps import load_model, parse_positions
from rankext.core.config import settings
from rankext.schemas.algebra import MatrixSchema
from rankext.schemas.reports import ChainCensusReport, ChainReport, PathReport


def _pattern(path: str) -> Pattern:
    return Pattern.of(load_model(path, MatrixSchema).to_domain())


def find(args: argparse.Namespace) -> PathReport:
    return PathReport.from_path(find_closed_simple_path(_pattern(args.matrix)))


def validate(args: argparse.Namespace) -> PathReport:
    return PathReport.from_check(validate_path(_pattern(args.matrix), parse_positions(args.path)))


def chain(args: argparse.Namespace):
    pattern = _pattern(args.matrix)
    if not args.all:
        return ChainReport.from_domain(reduction_chain(pattern))
    census = enumerate_all_chains(pattern)
    chains = list(iter_chains(pattern)) if census.total <= settings.MAX_LISTED_CHAINS else None
    return ChainCensusReport.from_domain(census, chains)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    path = subparsers.add_parser("path", help="Closed simple paths and reduction chains")
    actions = path.add_subparsers(dest="path_action", metavar="ACTION")
    actions.required = True

    p = actions.add_parser("find", parents=[common], help="A closed simple path, if any")
    p.add_argument("--matrix", required=True)
    p.set_defaults(handler=find)

    p = actions.add_parser("validate", parents=[common], help="Classify a position sequence")
    p.add_argument("--matrix", required=True)
    p.add_argument("--path", required=True, help="JSON list of [i, j] positions, inline or as a file")
    p.set_defaults(handler=validate)

    p = actions.add_parser("chain", parents=[common], help="A reduction chain")
    p.add_argument("--matrix", required=True)
    p.add_argument("--all", action="store_true", help="Census of every chain")
    p.set_defaults(handler=chain)
