import argparse

from rankext.cli.deps import load_model, parse_params
from rankext.schemas.algebra import MapSchema
from rankext.schemas.fixture import FixtureList, FixtureReport
from rankext.services.fixtures import fixture_service


def list_examples(args: argparse.Namespace) -> FixtureList:
    return FixtureList(fixtures=fixture_service.list_examples())


def run(args: argparse.Namespace) -> FixtureReport:
    return fixture_service.run_example(args.name, parse_params(args.param))


def ingest(args: argparse.Namespace) -> FixtureReport:
    return fixture_service.run_ingested(load_model(args.map, MapSchema).to_domain())


def register(subparsers, common: argparse.ArgumentParser) -> None:
    example = subparsers.add_parser("example", help="Catalogued example runs")
    actions = example.add_subparsers(dest="example_action", metavar="ACTION")
    actions.required = True

    p = actions.add_parser("list", parents=[common], help="List the fixtures")
    p.set_defaults(handler=list_examples)

    p = actions.add_parser("run", parents=[common], help="Run one fixture")
    p.add_argument("name")
    p.add_argument("--param", action="append", metavar="K=V", help="Override a default; repeatable")
    p.set_defaults(handler=run)

    p = actions.add_parser("ingest", parents=[common], help="Run the checks on a supplied map")
    p.add_argument("--map", required=True)
    p.set_defaults(handler=ingest)
