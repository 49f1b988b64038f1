"""
Acceptance sweep

Runs the full-size acceptance checks that the unit suite only samples:
1. Frobenius axioms for every built-in manifold family range
2. Bicomplex identities (exhaustive m <= 5, plus random cochains)
3. HH dimensions against the presentation, hdeg <= 6
4. Δ closed forms against B̌ on located cocycles
5. Generator brackets and the BV identity
6. Tilde duality
7. Δ on the algebra generators and the presentation relations in HH
8. E2 series against the closed form on [0, 60]
9. E2 from brute-force HH against the presentation, q <= 10, p <= 10
10. Collapse certificate, r <= 10, levels 0..20
11. Truncated total complex of S^2 on total degrees [0, 8]

Usage: python scripts/acceptance_sweep.py [--check NAME ...]
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Callable

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from stringtop import bvring  # noqa: E402
from stringtop.commands.command_hochschild import tdeg_window  # noqa: E402
from stringtop.commands.command_spectral import reference_series, verify  # noqa: E402
from stringtop.config import settings  # noqa: E402
from stringtop.connes import (  # noqa: E402
    BruteForceBackend,
    bracket_rows,
    collapse_certificate,
    delta_rows,
    e2_from_hh,
    e2_presented,
    generator_delta_report,
    monomial_basis_report,
    page_window,
    relation_report,
)
from stringtop.frobenius import ManifoldSpec, check_frobenius, make_algebra  # noqa: E402
from stringtop.hochschild import (  # noqa: E402
    bicomplex_check,
    bv_identity_check,
    duality_check,
    hcf_window,
    hh,
)
from stringtop.series import expand  # noqa: E402

FAMILIES = (
    [f"S{k}" for k in range(2, 7)]
    + [f"RP{n}" for n in range(2, 8)]
    + [f"CP{n}" for n in range(1, 6)]
    + [f"HP{n}" for n in range(1, 4)]
)
SMALL = ["S2", "RP2", "RP3", "CP2"]
BRACKETS = ["S2", "S3", "RP2", "RP3", "CP2"]
RELATIONS = ["CP1", "HP1", "RP3", "CP3", "RP5", "RP2", "CP2", "RP4"]
CROSS_ROUTE = ["S2", "RP3", "CP2"]


def load(name: str):
    spec = ManifoldSpec.parse(name)
    return spec, make_algebra(spec)


# ===== Checks =====


def check_frobenius_axioms(args, errors: list[str]) -> None:
    for name in FAMILIES:
        _, a = load(name)
        report = check_frobenius(a)
        errors.extend(f"{name}: {c.name} failed" for c in report.checks if not c.passed)


def check_bicomplex(args, errors: list[str]) -> None:
    for name in SMALL:
        _, a = load(name)
        report = bicomplex_check(a, sample_count=settings.SAMPLE_COUNT, exhaustive_m=5, sampled_m=7)
        errors.extend(f"{name}: {v.identity} at m={v.m} tdeg={v.tdeg}" for v in report.violations)


def check_hh_dimensions(args, errors: list[str]) -> None:
    for name in SMALL:
        spec, a = load(name)
        backend = BruteForceBackend(a, spec, args.hdeg_max)
        report = monomial_basis_report(backend, tdeg_window(a, args.hdeg_max, None), args.hdeg_max)
        errors.extend(f"{name}: {v.detail}" for v in report.violations)


def check_delta(args, errors: list[str]) -> None:
    for name in SMALL:
        spec, a = load(name)
        backend = BruteForceBackend(a, spec, args.hdeg_max)
        rows = delta_rows(backend, tdeg_window(a, args.hdeg_max, None), args.hdeg_max)
        errors.extend(
            f"{name}: Δ({row.label}) = {row.closed_form}, B̌ gives {row.brute_force}"
            for row in rows
            if not row.agrees
        )


def check_brackets(args, errors: list[str]) -> None:
    for name in BRACKETS:
        spec, a = load(name)
        for row in bracket_rows(BruteForceBackend(a, spec)):
            if not row.agrees:
                errors.append(f"{name}: [{row.left},{row.right}] = {row.computed}, expected {row.expected}")
        classes = [c for m in range(5) for c in hh(a, m, tdeg_window(a, 4, None))]
        report = bv_identity_check(a, classes)
        errors.extend(f"{name}: BV identity {v.detail}" for v in report.violations)


def check_duality(args, errors: list[str]) -> None:
    for name in SMALL:
        _, a = load(name)
        exhaustive = 4 if name in ("S2", "RP2") else 2
        report = duality_check(a, sample_count=settings.SAMPLE_COUNT, exhaustive_m=exhaustive)
        errors.extend(f"{name}: {v.identity} at m={v.m}: {v.detail}" for v in report.violations)


def check_generators(args, errors: list[str]) -> None:
    for name in BRACKETS:
        spec, a = load(name)
        report = generator_delta_report(BruteForceBackend(a, spec))
        errors.extend(f"{name}: {v.detail}" for v in report.violations)
    for name in RELATIONS:
        spec, a = load(name)
        report = relation_report(BruteForceBackend(a, spec))
        errors.extend(f"{name}: {v.detail}" for v in report.violations)


def check_series(args, errors: list[str]) -> None:
    for name in FAMILIES:
        report = verify(ManifoldSpec.parse(name), 0, args.hi)
        if report.mismatch is not None:
            m = report.mismatch
            errors.append(f"{name}: t^{m.exponent} closed form {m.left}, E2 {m.right}")


def check_cross_route(args, errors: list[str]) -> None:
    for name in CROSS_ROUTE:
        spec, a = load(name)
        window = page_window(bvring.make_presentation(spec), 10, 0, 10)
        presented = e2_presented(bvring.make_presentation(spec), window)
        brute = e2_from_hh(a, spec, window, hdeg_budget=window.hdeg_max)
        if presented.entries != brute.entries:
            errors.append(f"{name}: E2 pages differ in the q <= 10 window")


def check_certificate(args, errors: list[str]) -> None:
    for name in FAMILIES:
        report = collapse_certificate(ManifoldSpec.parse(name), settings.R_MAX, (0, settings.L_MAX))
        errors.extend(
            f"{name}: d_{w.r} at level {w.level} ({w.case}) slack {w.slack}"
            for w in report.unresolved
        )
        errors.extend(
            f"{name}: displayed {d.expression} = {d.value}" for d in report.displayed if not d.holds
        )


def check_hcf(args, errors: list[str]) -> None:
    spec, a = load("S2")
    table = hcf_window(a, (0, 8), column_cap=5)
    expected = expand(reference_series(spec), 0, 8)
    if table.truncated:
        errors.append("S2: column cap below the required cap")
    for row in table.rows:
        if row.dim != expected[row.degree]:
            errors.append(f"S2: total degree {row.degree} has {row.dim}, expected {expected[row.degree]}")


CHECKS: dict[str, Callable[[argparse.Namespace, list[str]], None]] = {
    "frobenius": check_frobenius_axioms,
    "bicomplex": check_bicomplex,
    "hh": check_hh_dimensions,
    "delta": check_delta,
    "bracket": check_brackets,
    "duality": check_duality,
    "generators": check_generators,
    "series": check_series,
    "cross-route": check_cross_route,
    "certificate": check_certificate,
    "hcf": check_hcf,
}


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Run the full acceptance sweep.")
    parser.add_argument(
        "--check",
        action="append",
        choices=sorted(CHECKS),
        default=None,
        help="Check to run. Repeatable. Default: all.",
    )
    parser.add_argument("--hdeg-max", type=int, default=6, help="Hochschild degree ceiling (default: 6)")
    parser.add_argument("--hi", type=int, default=settings.WINDOW_HI, help="series window end")
    parser.add_argument("--log-level", default="INFO")
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    logging.basicConfig(level=args.log_level.upper(), format="%(asctime)s %(levelname)s %(message)s")
    failed = 0
    for name in args.check or list(CHECKS):
        errors: list[str] = []
        started = time.perf_counter()
        CHECKS[name](args, errors)
        elapsed = time.perf_counter() - started
        status = "FAIL" if errors else "PASS"
        print(f"[acceptance] {name}: {status} ({elapsed:.1f}s)")
        for err in errors[:20]:
            print(f"  - {err}")
        failed += bool(errors)
    if failed:
        print(f"[acceptance] {failed} check(s) failed")
        return 1
    print("[acceptance] all checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
