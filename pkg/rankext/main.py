"""
Command-line entry point.

Reports go to standard output, logs to standard error. Exit status 0 means
the computation completed, whatever the verdict.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from rankext.cli.commands import examples, extend, isometry, matrices, paths
from rankext.core.config import settings
from rankext.core.errors import InputError, RankExtError
from rankext.cli.deps import check_expectations
from rankext.schemas.reports import ErrorBody, ErrorReport

logger = logging.getLogger(__name__)


class CliParser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1), not argparse's status 2."""

    def error(self, message: str):
        raise InputError(message)


def setup_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    common = CliParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output")
    common.add_argument("--expect", help="JSON object (inline or file) the report must match")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = CliParser(prog=settings.PROJECT_NAME, description="Rank-metric code isometries and their extensions")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for module in (matrices, isometry, paths, extend, examples):
        module.register(subparsers, common)
    return parser


def render(data: Dict[str, Any], as_json: bool) -> str:
    if as_json:
        return json.dumps(data, sort_keys=True, indent=2)
    return "\n".join(f"{key}: {json.dumps(data[key], sort_keys=True)}" for key in sorted(data))


def emit_error(error: RankExtError, as_json: bool) -> None:
    if as_json:
        body = ErrorReport(error=ErrorBody(**error.to_dict()))
        print(render(body.model_dump(mode="json", exclude_none=True), True))
    else:
        print(f"error [{error.code}]: {error.detail}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        setup_logging(args.verbose)
        logger.info(f"{settings.PROJECT_NAME} {settings.VERSION}: {args.command}")
        report: BaseModel = args.handler(args)
        data = report.model_dump(mode="json")
        check_expectations(data, args.expect)
        print(render(data, args.json))
        return 0
    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else 0
    except RankExtError as e:
        logger.info(f"{type(e).__name__}: {e.detail}")
        emit_error(e, as_json)
        return e.exit_status
    except Exception as e:
        logger.exception(f"Unexpected failure: {e}")
        emit_error(RankExtError(f"Internal error: {e}"), as_json)
        return 4


if __name__ == "__main__":
    sys.exit(main())
