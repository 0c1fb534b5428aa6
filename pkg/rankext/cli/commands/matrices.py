import argparse

from rankext.algebra.code import code_line_spaces, min_distance
from rankext.algebra.matfq import line_spaces, mat_rank, rank_distance
from rankext.cli.deps import load_model
from rankext.core.errors import InputError
from rankext.schemas.algebra import CodeSchema, MatrixSchema
from rankext.schemas.reports import DistanceReport, LineSpacesReport, MinDistanceReport, RankReport


def rank(args: argparse.Namespace) -> RankReport:
    M = load_model(args.matrix, MatrixSchema).to_domain()
    return RankReport(rank=mat_rank(M))


def distance(args: argparse.Namespace) -> DistanceReport:
    M1 = load_model(args.matrix, MatrixSchema).to_domain()
    M2 = load_model(args.other, MatrixSchema).to_domain()
    return DistanceReport(distance=rank_distance(M1, M2))


def mindist(args: argparse.Namespace) -> MinDistanceReport:
    C = load_model(args.code, CodeSchema).to_domain()
    return MinDistanceReport(dim=C.dim, min_distance=min_distance(C))


def linespaces(args: argparse.Namespace) -> LineSpacesReport:
    """Line spaces of a single matrix, or of a whole code."""
    if (args.matrix is None) == (args.code is None):
        raise InputError("linespaces needs exactly one of --matrix and --code")
    if args.matrix is not None:
        rows, cols = line_spaces(load_model(args.matrix, MatrixSchema).to_domain())
    else:
        rows, cols = code_line_spaces(load_model(args.code, CodeSchema).to_domain())
    return LineSpacesReport(
        rowspace=rows.to_lists(),
        colspace=cols.to_lists(),
        row_dim=rows.dim,
        col_dim=cols.dim,
    )


def register(subparsers, common: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("rank", parents=[common], help="Rank of a matrix")
    p.add_argument("--matrix", required=True, help="Matrix JSON file")
    p.set_defaults(handler=rank)

    p = subparsers.add_parser("distance", parents=[common], help="Rank distance of two matrices")
    p.add_argument("--matrix", required=True)
    p.add_argument("--other", required=True)
    p.set_defaults(handler=distance)

    p = subparsers.add_parser("mindist", parents=[common], help="Minimum rank distance of a code")
    p.add_argument("--code", required=True, help="Code JSON file")
    p.set_defaults(handler=mindist)

    p = subparsers.add_parser("linespaces", parents=[common], help="Row and column space")
    p.add_argument("--matrix")
    p.add_argument("--code")
    p.set_defaults(handler=linespaces)
