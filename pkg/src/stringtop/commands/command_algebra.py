"""
Algebra command

algebra: basis, degrees and product table of H*(M; F2) together with the
Frobenius check report.
"""

import argparse
import logging

from ..frobenius import check_frobenius
from ..schemas import AlgebraRow, Document, ProductRow
from .common import add_manifold_argument, add_output_arguments, load_manifold

logger = logging.getLogger(__name__)


def run_algebra(args: argparse.Namespace) -> Document:
    spec, a = load_manifold(args)
    report = check_frobenius(a)
    rows = [
        AlgebraRow(index=i, name=name, degree=a.degrees[i])
        for i, name in enumerate(a.basis_names)
    ]
    products = [
        ProductRow(left=a.basis_names[i], right=a.basis_names[j], product=a.label(a.mult[i][j]))
        for i in range(a.dim)
        for j in range(i, a.dim)
    ]
    logger.info(f"algebra {spec.name}: dim {a.dim}, checks passed {report.passed}")
    return Document(
        command="algebra",
        manifold=spec.name,
        passed=report.passed,
        rows=[row.model_dump() for row in rows],
        details={
            "dim_m": spec.dim_m,
            "failed": ", ".join(c.name for c in report.checks if not c.passed) or "none",
            "products": [p.model_dump() for p in products],
            "checks": [c.model_dump() for c in report.checks],
        },
    )


def register(subparsers) -> None:
    parser = subparsers.add_parser("algebra", help="Frobenius algebra H*(M; F2)")
    add_manifold_argument(parser)
    add_output_arguments(parser)
    parser.set_defaults(handler=run_algebra)
