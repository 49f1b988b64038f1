"""
Spectral sequence commands

e2:      E2 page in regraded (p, q) degrees with the monomial classification,
         from the presentation, from brute-force HH, or both compared
certify: degree witnesses that every d_r with r >= 2 vanishes
verify:  E2 Poincare series against the closed form for H^{S^1}_*(LM; F2)
hcf:     homology of the truncated total complex, per total degree
"""

import argparse
import logging

from .. import bvring
from ..config import settings
from ..connes import (
    GradingMode,
    collapse_certificate,
    e2_from_hh,
    e2_presented,
    e2_series,
    kind_of,
    page_window,
)
from ..exceptions import UsageError
from ..frobenius import ManifoldSpec
from ..hochschild import hcf_window
from ..schemas import ClassificationRow, Document, VerifyReport
from ..series import (
    RationalLaurentSeries,
    check_support,
    equal_in_window,
    expand,
    poincare_series,
)
from .common import add_manifold_argument, add_output_arguments, load_manifold, parse_range

logger = logging.getLogger(__name__)

BACKENDS = ("presented", "brute", "both")


# ===== Helper Functions =====


def is_even_projective(spec: ManifoldSpec) -> bool:
    return not spec.is_sphere and spec.n % 2 == 0


def reference_series(spec: ManifoldSpec) -> RationalLaurentSeries:
    """Closed form used by verify: the corrected one for even projective spaces."""
    return poincare_series(spec, corrected=is_even_projective(spec))


# ===== Commands =====


def run_e2(args: argparse.Namespace) -> Document:
    spec, a = load_manifold(args)
    ring = bvring.make_presentation(spec)
    q_lo, q_hi = parse_range(args.window)
    window = page_window(ring, args.pmax, q_lo, q_hi)
    mode = GradingMode(args.grading)
    pages = {}
    if args.backend in ("presented", "both"):
        pages["presented"] = e2_presented(ring, window)
    if args.backend in ("brute", "both"):
        pages["brute"] = e2_from_hh(a, spec, window, args.hdeg_max)
    page = pages.get("presented") or pages["brute"]
    agrees = True
    if len(pages) == 2:
        agrees = pages["presented"].entries == pages["brute"].entries
        if not agrees:
            logger.error(f"{spec.name}: E2 pages differ between the presentation and brute force")
    tdeg_hi = q_hi - spec.dim_m
    classification = [
        ClassificationRow(
            manifold=spec.name,
            label=bvring.label(ring, m),
            hdeg=ring.hdeg(m),
            tdeg=ring.tdeg(m),
            delta=bvring.element_label(ring, bvring.delta(ring, m)),
            kind=kind_of(ring, m).value,
        )
        for m in bvring.basis_in_window(ring, (q_lo - spec.dim_m - args.pmax, tdeg_hi), window.hdeg_max)
    ]
    return Document(
        command="e2",
        manifold=spec.name,
        passed=agrees,
        rows=[row.model_dump() for row in page.rows(mode)],
        details={
            "backend": args.backend,
            "grading": mode.value,
            "hdeg_max": window.hdeg_max,
            "series": str(e2_series(ring)),
            "classification": [row.model_dump() for row in classification],
        },
    )


def run_certify(args: argparse.Namespace) -> Document:
    spec, _ = load_manifold(args)
    l_range = parse_range(args.l_range, "--l-range") if args.l_range else None
    report = collapse_certificate(spec, args.rmax, l_range)
    strict_tight = [w for w in report.witnesses if w.strict_slack is not None and w.strict_slack >= 0]
    return Document(
        command="certify",
        manifold=spec.name,
        passed=report.passed,
        rows=[w.model_dump() for w in report.witnesses],
        details={
            "r_max": report.r_max,
            "l_range": list(report.l_range),
            "unresolved": len(report.unresolved),
            "strict_tight": len(strict_tight),
            "displayed": [d.model_dump() for d in report.displayed],
        },
    )


def verify(spec: ManifoldSpec, lo: int, hi: int) -> VerifyReport:
    ring = bvring.make_presentation(spec)
    e2 = e2_series(ring).shift(spec.dim_m)
    check_support(e2)
    corrected = is_even_projective(spec)
    _, mismatch = equal_in_window(reference_series(spec), e2, lo, hi)
    displayed_mismatch = None
    if corrected:
        _, displayed_mismatch = equal_in_window(poincare_series(spec), e2, lo, hi)
    if mismatch is not None:
        logger.error(f"{spec.name}: E2 series differs from the closed form at t^{mismatch.exponent}")
    return VerifyReport(
        manifold=spec.name,
        lo=lo,
        hi=hi,
        reference="corrected" if corrected else "displayed",
        coefficients=expand(e2, lo, hi),
        mismatch=mismatch,
        displayed_mismatch=displayed_mismatch,
    )


def run_verify(args: argparse.Namespace) -> Document:
    spec, _ = load_manifold(args)
    lo = settings.WINDOW_LO if args.lo is None else args.lo
    hi = settings.WINDOW_HI if args.hi is None else args.hi
    if lo > hi:
        raise UsageError(f"verify window is empty: {lo} > {hi}")
    report = verify(spec, lo, hi)
    reference = expand(reference_series(spec), lo, hi)
    rows = [
        {"degree": lo + i, "e2": c, "reference": r}
        for i, (c, r) in enumerate(zip(report.coefficients, reference))
    ]
    return Document(
        command="verify",
        manifold=spec.name,
        passed=report.passed,
        rows=rows,
        details={
            "reference": report.reference,
            "mismatch": report.mismatch.model_dump() if report.mismatch else None,
            "displayed_mismatch": (
                report.displayed_mismatch.model_dump() if report.displayed_mismatch else None
            ),
        },
    )


def run_hcf(args: argparse.Namespace) -> Document:
    spec, a = load_manifold(args)
    lo, hi = parse_range(args.window)
    table = hcf_window(a, (lo, hi), args.col_cap)
    expected = expand(reference_series(spec), lo, hi)
    rows = [
        {**row.model_dump(), "closed_form": expected[row.degree - lo]} for row in table.rows
    ]
    agrees = all(row["dim"] == row["closed_form"] for row in rows)
    return Document(
        command="hcf",
        manifold=spec.name,
        passed=agrees and not table.truncated,
        rows=rows,
        details={
            "column_cap": table.column_cap,
            "required_cap": table.required_cap,
            "truncated": table.truncated,
        },
    )


def register(subparsers) -> None:
    parser = subparsers.add_parser("e2", help="E2 page and monomial classification")
    add_manifold_argument(parser)
    parser.add_argument("--window", default="0:10", help="regraded degrees q LO:HI")
    parser.add_argument("--pmax", type=int, default=10, help="last column p")
    parser.add_argument("--hdeg-max", type=int, default=settings.HDEG_MAX, help="brute-force budget")
    parser.add_argument("--backend", choices=BACKENDS, default="presented")
    parser.add_argument("--grading", choices=[m.value for m in GradingMode], default="regraded")
    add_output_arguments(parser)
    parser.set_defaults(handler=run_e2)

    parser = subparsers.add_parser("certify", help="collapse certificate for d_r, r >= 2")
    add_manifold_argument(parser)
    parser.add_argument("--rmax", type=int, default=settings.R_MAX)
    parser.add_argument("--l-range", default=None, help="levels LO:HI")
    add_output_arguments(parser)
    parser.set_defaults(handler=run_certify)

    parser = subparsers.add_parser("verify", help="E2 series against the closed form")
    add_manifold_argument(parser)
    parser.add_argument("--lo", type=int, default=None)
    parser.add_argument("--hi", type=int, default=None)
    add_output_arguments(parser)
    parser.set_defaults(handler=run_verify)

    parser = subparsers.add_parser("hcf", help="homology of the truncated total complex")
    add_manifold_argument(parser)
    parser.add_argument("--window", default="0:8", help="total degrees LO:HI")
    parser.add_argument("--col-cap", type=int, default=settings.COL_CAP)
    add_output_arguments(parser)
    parser.set_defaults(handler=run_hcf)
