"""
Hochschild commands

hh:      dimensions of HH^m(A, A) per topological degree, brute force against
         the presentation monomial count
delta:   Δ on every monomial class, closed form against B̌ on cocycles
bracket: Gerstenhaber brackets of the generators, the presentation relations
         and the BV identity
"""

import argparse
import logging

from .. import bvring
from ..config import settings
from ..connes import (
    BruteForceBackend,
    bracket_rows,
    delta_rows,
    generator_delta_report,
    relation_report,
)
from ..frobenius import FrobeniusAlgebra
from ..hochschild import bv_identity_check, component_degrees, hh, hh_dimensions
from ..schemas import Document, HHRow
from .common import add_manifold_argument, add_output_arguments, load_manifold, parse_range

logger = logging.getLogger(__name__)


# ===== Helper Functions =====


def tdeg_window(a: FrobeniusAlgebra, hdeg_max: int, text: str | None) -> tuple[int, int]:
    """The --window flag, or every tdeg with a cochain component up to hdeg_max."""
    if text is not None:
        return parse_range(text)
    degrees = [t for m in range(hdeg_max + 1) for t in component_degrees(a, m)]
    return min(degrees), max(degrees)


# ===== Commands =====


def run_hh(args: argparse.Namespace) -> Document:
    spec, a = load_manifold(args)
    ring = bvring.make_presentation(spec)
    window = tdeg_window(a, args.hdeg_max, args.window)
    rows = []
    for m in range(args.hdeg_max + 1):
        dims = hh_dimensions(a, m, window, normalized=args.normalized)
        for tdeg in range(window[0], window[1] + 1):
            monomials = bvring.monomials_at(ring, m, tdeg)
            if not dims.get(tdeg) and not monomials:
                continue
            rows.append(
                HHRow(
                    manifold=spec.name,
                    m=m,
                    tdeg=tdeg,
                    dim=dims.get(tdeg, 0),
                    labels=[bvring.label(ring, x) for x in monomials],
                    presented=len(monomials),
                )
            )
    mismatches = [row for row in rows if row.dim != row.presented]
    for row in mismatches[:1]:
        logger.error(f"{spec.name}: HH^{row.m} at tdeg {row.tdeg} has dim {row.dim}, presentation {row.presented}")
    return Document(
        command="hh",
        manifold=spec.name,
        passed=not mismatches,
        rows=[row.model_dump() for row in rows],
        details={"window": list(window), "normalized": args.normalized, "mismatches": len(mismatches)},
    )


def run_delta(args: argparse.Namespace) -> Document:
    spec, a = load_manifold(args)
    backend = BruteForceBackend(a, spec, args.hdeg_max)
    window = tdeg_window(a, args.hdeg_max, args.window)
    rows = delta_rows(backend, window, args.hdeg_max)
    generators = generator_delta_report(backend)
    disagreements = [row for row in rows if not row.agrees]
    for row in disagreements[:1]:
        logger.error(f"{spec.name}: Δ({row.label}) = {row.closed_form} but B̌ gives {row.brute_force}")
    return Document(
        command="delta",
        manifold=spec.name,
        passed=not disagreements and generators.passed,
        rows=[row.model_dump() for row in rows],
        details={
            "window": list(window),
            "disagreements": len(disagreements),
            "generators": generators.model_dump(),
        },
    )


def run_bracket(args: argparse.Namespace) -> Document:
    spec, a = load_manifold(args)
    backend = BruteForceBackend(a, spec)
    rows = bracket_rows(backend)
    relations = relation_report(backend)
    window = tdeg_window(a, args.bv_hdeg, None)
    classes = [c for m in range(args.bv_hdeg + 1) for c in hh(a, m, window)]
    bv = bv_identity_check(a, classes)
    passed = all(row.agrees for row in rows) and relations.passed and bv.passed
    return Document(
        command="bracket",
        manifold=spec.name,
        passed=passed,
        rows=[row.model_dump() for row in rows],
        details={
            "relations": relations.checked,
            "relation_violations": len(relations.violations),
            "bv_pairs": bv.checked,
            "bv_violations": len(bv.violations),
            "bv": bv.model_dump(),
        },
    )


def register(subparsers) -> None:
    parser = subparsers.add_parser("hh", help="Hochschild cohomology dimensions")
    add_manifold_argument(parser)
    parser.add_argument("--hdeg-max", type=int, default=settings.HDEG_MAX)
    parser.add_argument("--window", default=None, help="topological degrees LO:HI")
    parser.add_argument("--normalized", action="store_true")
    add_output_arguments(parser)
    parser.set_defaults(handler=run_hh)

    parser = subparsers.add_parser("delta", help="BV operator on monomial classes")
    add_manifold_argument(parser)
    parser.add_argument("--hdeg-max", type=int, default=settings.HDEG_MAX)
    parser.add_argument("--window", default=None, help="topological degrees LO:HI")
    add_output_arguments(parser)
    parser.set_defaults(handler=run_delta)

    parser = subparsers.add_parser("bracket", help="Gerstenhaber brackets of the generators")
    add_manifold_argument(parser)
    parser.add_argument("--bv-hdeg", type=int, default=2, help="Hochschild degrees checked by the BV identity")
    add_output_arguments(parser)
    parser.set_defaults(handler=run_bracket)
