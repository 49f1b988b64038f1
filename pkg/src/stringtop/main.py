"""
Command line entry point.

Exit codes: 0 when every check passes, 1 on a mathematical mismatch or
failure, 2 on usage errors.
"""

import argparse
import logging
import sys

from .commands import command_algebra, command_hochschild, command_spectral
from .commands.output import emit
from .config import settings
from .exceptions import StringTopError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stringtop",
        description="Mod 2 S^1-equivariant string topology of spheres and projective spaces",
    )
    parser.add_argument("--log-level", default=None, help=f"default {settings.LOG_LEVEL}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    # Include the command groups
    command_algebra.register(subparsers)
    command_hochschild.register(subparsers)
    command_spectral.register(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    logging.basicConfig(
        level=(args.log_level or settings.LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        document = args.handler(args)
        emit(document, args.format, args.out, sys.stdout)
    except StringTopError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    return 0 if document.passed else 1


if __name__ == "__main__":
    sys.exit(main())
