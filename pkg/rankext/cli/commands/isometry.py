import argparse
import logging

from rankext.algebra.isometry import first_rank_violation, property_p_witness, refute_property_p
from rankext.cli.deps import load_model
from rankext.schemas.algebra import MapSchema
from rankext.schemas.extension import PropertyPSchema
from rankext.schemas.reports import IsometryReport, PropertyPReport, RankViolation, RefutationSchema

logger = logging.getLogger(__name__)


def check_isometry(args: argparse.Namespace) -> IsometryReport:
    phi = load_model(args.map, MapSchema).to_domain()
    violation = first_rank_violation(phi)
    if violation is None:
        return IsometryReport(isometry=True)
    C, r, s = violation
    return IsometryReport(isometry=False, violation=RankViolation(codeword=C.to_rows(), rank=r, image_rank=s))


def property_p(args: argparse.Namespace) -> PropertyPReport:
    """
    Cheap refutations run first; the exhaustive pair search only runs when
    they find nothing and --refute-only is not given.
    """
    phi = load_model(args.map, MapSchema).to_domain()
    refutation = refute_property_p(phi)
    if refutation is not None:
        return PropertyPReport(verdict="refuted", refutation=RefutationSchema.from_domain(refutation))
    if args.refute_only:
        return PropertyPReport(verdict="no-refutation")
    logger.info("No cheap refutation; searching for a pair")
    witness = property_p_witness(phi)
    if witness is None:
        return PropertyPReport(verdict="absent")
    return PropertyPReport(verdict="witness", witness=PropertyPSchema.from_domain(witness))


def register(subparsers, common: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("check-isometry", parents=[common], help="Does the map preserve ranks")
    p.add_argument("--map", required=True, help="Map JSON file")
    p.set_defaults(handler=check_isometry)

    p = subparsers.add_parser("property-p", parents=[common], help="Search or refute a Property 1 pair")
    p.add_argument("--map", required=True)
    p.add_argument("--refute-only", action="store_true", help="Skip the exhaustive search")
    p.set_defaults(handler=property_p)
