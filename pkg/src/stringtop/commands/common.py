"""
Argument helpers shared by every command module.
"""

import argparse
import logging

from ..exceptions import UsageError
from ..frobenius import FrobeniusAlgebra, ManifoldSpec, make_algebra

logger = logging.getLogger(__name__)

FORMATS = ("table", "json", "csv")


def parse_range(text: str, flag: str = "--window") -> tuple[int, int]:
    """'LO:HI' -> (lo, hi) with lo <= hi."""
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError as e:
        raise UsageError(f"{flag} expects LO:HI with integers, got '{text}'") from e
    if lo > hi:
        raise UsageError(f"{flag} is empty: {lo} > {hi}")
    return lo, hi


def add_manifold_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--manifold", required=True, help="S<k>, RP<n>, CP<n> or HP<n>"
    )


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=FORMATS, default="table")
    parser.add_argument("--out", default=None, help="write to a file instead of stdout")


def load_manifold(args: argparse.Namespace) -> tuple[ManifoldSpec, FrobeniusAlgebra]:
    spec = ManifoldSpec.parse(args.manifold)
    return spec, make_algebra(spec)
