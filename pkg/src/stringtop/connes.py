"""
Connes' spectral sequence of the cyclic Frobenius cochain complex.

Entries are triply graded by column p, Hochschild degree h and topological
degree tdeg. The regraded index q = tdeg + dim M + p places column p at
Σ^{p - dim M} H_*(LM); an entry counts in degree p + q of the Poincare
series. Every column of E1 is a copy of HH and d1 = Δ maps (p, h, tdeg)
to (p - 1, h - 1, tdeg + 1), preserving q.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from . import bvring
from .bvring import Monomial, PresentedBVRing, make_presentation
from .cochains import Cochain
from .config import settings
from .exceptions import BudgetExceededError, StringTopError, UsageError
from .f2core import F2Matrix, rank
from .frobenius import FrobeniusAlgebra, ManifoldSpec
from .hochschild import (
    GeneratorCocycles,
    HHClass,
    class_coordinates,
    cohomologous,
    connes_B,
    cup,
    delta_on_hh,
    explicit_u,
    gerstenhaber_bracket,
    hh,
    is_coboundary,
    locate_generators,
    monomial_cocycle,
)
from .schemas import (
    BracketRow,
    CertificateReport,
    DeltaRow,
    DisplayedInequality,
    InequalityWitness,
    PageRow,
    Violation,
    ViolationReport,
)
from .series import RationalLaurentSeries

logger = logging.getLogger(__name__)

Spot = tuple[int, int, int]  # (p, hdeg, tdeg)


class GradingMode(str, Enum):
    HOCHSCHILD = "hochschild"
    REGRADED = "regraded"


class Kind(str, Enum):
    SURVIVE_ALONE = "survive-alone"
    HIT = "hit"
    PROPAGATE_STRIPE = "propagate"


def regrade(spec: ManifoldSpec, p: int, hdeg: int, tdeg: int) -> tuple[int, int]:
    return p, tdeg + spec.dim_m + p


def regrade_inverse(spec: ManifoldSpec, p: int, q: int) -> tuple[int, int]:
    """(p, q) back to (p, tdeg); the Hochschild degree is not recoverable."""
    return p, q - spec.dim_m - p


@dataclass(frozen=True)
class PageWindow:
    """Columns 0..p_max, regraded degrees q_lo..q_hi, Hochschild degrees 0..hdeg_max."""

    p_max: int
    q_lo: int
    q_hi: int
    hdeg_max: int

    def __post_init__(self):
        if self.p_max < 0 or self.hdeg_max < 0:
            raise UsageError(f"window needs p_max, hdeg_max >= 0: {self}")

    def column(self, dim_m: int, p: int) -> Iterator[tuple[int, int]]:
        """(hdeg, tdeg) spots of column p, ascending."""
        for h in range(self.hdeg_max + 1):
            for q in range(self.q_lo, self.q_hi + 1):
                yield h, q - dim_m - p

    def spots(self, dim_m: int) -> Iterator[Spot]:
        for p in range(self.p_max + 1):
            for h, tdeg in self.column(dim_m, p):
                yield p, h, tdeg


def page_window(r: PresentedBVRing, p_max: int, q_lo: int, q_hi: int) -> PageWindow:
    """Smallest window whose Hochschild degrees hold every class with q <= q_hi."""
    tdeg_hi = q_hi - r.spec.dim_m

    def lowest(hdeg: int) -> int:
        return min(r.tdeg(m) for m in bvring.monomials_at_hdeg(r, hdeg))

    hdeg_max, h = 0, 0
    while True:
        hits = [k for k in (h, h + 1) if lowest(k) <= tdeg_hi]
        if not hits:
            break
        hdeg_max = max(hdeg_max, *hits)
        h += 2
    return PageWindow(p_max, q_lo, q_hi, hdeg_max)


@dataclass
class SpectralPage:
    manifold: str
    r: int
    dim_m: int
    entries: dict[Spot, int] = field(default_factory=dict)
    labels: dict[Spot, list[str]] = field(default_factory=dict)

    def add(self, spot: Spot, dim: int, labels: list[str] | None = None) -> None:
        if dim < 0:
            raise StringTopError(f"negative dimension {dim} at {spot}")
        if dim:
            self.entries[spot] = dim
            if labels:
                self.labels[spot] = labels

    def grid(self, mode: GradingMode = GradingMode.REGRADED) -> dict[tuple[int, int], int]:
        """
        Regraded: (p, q) with q = tdeg + dim M + p.
        Hochschild: (p, q) with Hochschild degree p - q.
        """
        table: dict[tuple[int, int], int] = {}
        for (p, h, tdeg), dim in self.entries.items():
            key = (p, tdeg + self.dim_m + p) if mode == GradingMode.REGRADED else (p, p - h)
            table[key] = table.get(key, 0) + dim
        return table

    def totals(self) -> dict[int, int]:
        """Dimensions per degree p + q of the Poincare series."""
        totals: dict[int, int] = {}
        for (p, q), dim in self.grid(GradingMode.REGRADED).items():
            totals[p + q] = totals.get(p + q, 0) + dim
        return totals

    def rows(self, mode: GradingMode = GradingMode.REGRADED) -> list[PageRow]:
        if mode == GradingMode.REGRADED:
            labels: dict[tuple[int, int], list[str]] = {}
            for (p, h, tdeg), names in self.labels.items():
                labels.setdefault((p, tdeg + self.dim_m + p), []).extend(names)
        else:
            labels = {}
        return [
            PageRow(manifold=self.manifold, r=self.r, p=p, q=q, dim=dim, labels=labels.get((p, q), []))
            for (p, q), dim in sorted(self.grid(mode).items())
        ]


class ClassSource(ABC):
    """A basis of HH^h at each tdeg together with the matrices of Δ."""

    def __init__(self, spec: ManifoldSpec):
        self.spec = spec
        self.ring = make_presentation(spec)

    @property
    def manifold(self) -> str:
        return self.spec.name

    @abstractmethod
    def basis(self, hdeg: int, tdeg: int) -> list[str]:
        ...

    @abstractmethod
    def delta_matrix(self, hdeg: int, tdeg: int) -> F2Matrix:
        """Δ: HH^h_tdeg -> HH^{h-1}_{tdeg+1} in the bases of ``basis``."""


class PresentedBackend(ClassSource):
    def basis(self, hdeg: int, tdeg: int) -> list[str]:
        return [bvring.label(self.ring, m) for m in bvring.monomials_at(self.ring, hdeg, tdeg)]

    def delta_matrix(self, hdeg: int, tdeg: int) -> F2Matrix:
        source = bvring.monomials_at(self.ring, hdeg, tdeg)
        target = {m: i for i, m in enumerate(bvring.monomials_at(self.ring, hdeg - 1, tdeg + 1))}
        columns = []
        for m in source:
            column = 0
            for image in bvring.delta(self.ring, m):
                column ^= 1 << target[image]
            columns.append(column)
        return F2Matrix.from_columns(len(target), columns)


class BruteForceBackend(ClassSource):
    """Canonical HH bases from the cochain complex of H*(M; F2)."""

    def __init__(self, algebra: FrobeniusAlgebra, spec: ManifoldSpec, hdeg_budget: int | None = None):
        super().__init__(spec)
        self.algebra = algebra
        self.hdeg_budget = settings.HDEG_MAX if hdeg_budget is None else hdeg_budget
        self._classes: dict[tuple[int, int], list[HHClass]] = {}
        self._generators: GeneratorCocycles | None = None
        self._monomials: dict[Monomial, HHClass] = {}

    def classes(self, hdeg: int, tdeg: int) -> list[HHClass]:
        if hdeg > self.hdeg_budget + 1:
            raise BudgetExceededError(
                f"{self.manifold}: Hochschild degree {hdeg} exceeds the budget "
                f"{self.hdeg_budget} (+1 for incoming differentials)"
            )
        key = (hdeg, tdeg)
        if key not in self._classes:
            self._classes[key] = hh(self.algebra, hdeg, (tdeg, tdeg)) if hdeg >= 0 else []
        return self._classes[key]

    def basis(self, hdeg: int, tdeg: int) -> list[str]:
        return [f"HH^{hdeg}[{tdeg}]#{i}" for i in range(len(self.classes(hdeg, tdeg)))]

    def delta_matrix(self, hdeg: int, tdeg: int) -> F2Matrix:
        source = self.classes(hdeg, tdeg)
        target = self.classes(hdeg - 1, tdeg + 1) if hdeg >= 1 else []
        columns = []
        for c in source:
            image = delta_on_hh(self.algebra, c)
            coordinates = 0 if image is None else class_coordinates(self.algebra, target, image.rep)
            if coordinates is None:
                raise StringTopError(f"Δ of {c.m}-class at tdeg {c.tdeg} left the cocycles")
            columns.append(coordinates)
        return F2Matrix.from_columns(len(target), columns)

    @property
    def generators(self) -> GeneratorCocycles:
        if self._generators is None:
            self._generators = locate_generators(self.algebra, self.spec)
        return self._generators

    def monomial_class(self, m: Monomial) -> HHClass:
        if m not in self._monomials:
            rep = monomial_cocycle(self.algebra, self.generators, tuple(m))
            self._monomials[m] = HHClass(
                self.ring.hdeg(m), self.ring.tdeg(m), rep, bvring.label(self.ring, m)
            )
        return self._monomials[m]

    def element_cocycle(self, element: frozenset[Monomial]) -> Cochain:
        """Sum of the monomial cocycles of a bvring element (zero when empty)."""
        total = Cochain.zero(0)
        for m in element:
            rep = self.monomial_class(m).rep
            total = rep if not total else total + rep
        return total

    def in_monomial_basis(self, f: Cochain, hdeg: int, tdeg: int) -> frozenset[Monomial] | None:
        """Express the class of f in the monomial classes at (hdeg, tdeg)."""
        monomials = bvring.monomials_at(self.ring, hdeg, tdeg)
        classes = [self.monomial_class(m) for m in monomials]
        bits = class_coordinates(self.algebra, classes, f)
        if bits is None:
            return None
        return frozenset(m for i, m in enumerate(monomials) if (bits >> i) & 1)


def e1(source: ClassSource, window: PageWindow) -> SpectralPage:
    page = SpectralPage(source.manifold, 1, source.spec.dim_m)
    for p, h, tdeg in window.spots(source.spec.dim_m):
        labels = source.basis(h, tdeg)
        page.add((p, h, tdeg), len(labels), labels)
    return page


def _column_layout(
    source: ClassSource, window: PageWindow, p: int
) -> tuple[dict[tuple[int, int], int], int]:
    offsets, size = {}, 0
    for h, tdeg in window.column(source.spec.dim_m, p):
        offsets[(h, tdeg)] = size
        size += len(source.basis(h, tdeg))
    return offsets, size


def d1_matrix(source: ClassSource, p: int, window: PageWindow) -> F2Matrix:
    """Δ from column p to column p - 1, blocks ordered as in PageWindow.column."""
    column_offsets, ncols = _column_layout(source, window, p)
    if p == 0:
        return F2Matrix.zeros(0, ncols)
    row_offsets, nrows = _column_layout(source, window, p - 1)
    rows = [0] * nrows
    for (h, tdeg), column_offset in column_offsets.items():
        if h == 0 or not source.basis(h, tdeg):
            continue
        row_offset = row_offsets[(h - 1, tdeg + 1)]
        for i, row in enumerate(source.delta_matrix(h, tdeg).rows):
            rows[row_offset + i] |= row << column_offset
    return F2Matrix(nrows, ncols, tuple(rows))


def e2_page(source: ClassSource, window: PageWindow) -> SpectralPage:
    """E2 = ker d1 / im d1 entrywise: dim HH - rank(Δ out) - rank(Δ in)."""
    ranks: dict[tuple[int, int], int] = {}

    def delta_rank(h: int, tdeg: int) -> int:
        if (h, tdeg) not in ranks:
            ranks[(h, tdeg)] = rank(source.delta_matrix(h, tdeg)) if h >= 1 else 0
        return ranks[(h, tdeg)]

    page = SpectralPage(source.manifold, 2, source.spec.dim_m)
    for p, h, tdeg in window.spots(source.spec.dim_m):
        dim = len(source.basis(h, tdeg))
        if not dim:
            continue
        outgoing = delta_rank(h, tdeg) if p >= 1 else 0
        page.add((p, h, tdeg), dim - outgoing - delta_rank(h + 1, tdeg - 1))
    return page


def e2_from_hh(
    a: FrobeniusAlgebra,
    spec: ManifoldSpec,
    window: PageWindow,
    hdeg_budget: int | None = None,
) -> SpectralPage:
    backend = BruteForceBackend(a, spec, hdeg_budget)
    if window.hdeg_max > backend.hdeg_budget:
        raise BudgetExceededError(
            f"{spec.name}: window Hochschild degree {window.hdeg_max} exceeds "
            f"the budget {backend.hdeg_budget}"
        )
    logger.info(f"Computing E2 of {spec.name} from brute-force HH, {window}")
    return e2_page(backend, window)


def kind_of(r: PresentedBVRing, m: Monomial) -> Kind:
    if bvring.delta(r, m):
        return Kind.SURVIVE_ALONE
    hdeg, tdeg = r.hdeg(m), r.tdeg(m)
    for preimage in bvring.monomials_at(r, hdeg + 1, tdeg - 1):
        if m in bvring.delta(r, preimage):
            return Kind.HIT
    return Kind.PROPAGATE_STRIPE


def classify(r: PresentedBVRing, window: tuple[int, int], hdeg_max: int) -> dict[Monomial, Kind]:
    """Kinds of all normal-form monomials in the window; preimages are searched one hdeg up."""
    return {m: kind_of(r, m) for m in bvring.basis_in_window(r, window, hdeg_max)}


def e2_presented(r: PresentedBVRing, window: PageWindow) -> SpectralPage:
    """
    Survive-alone monomials contribute at column 0 only, propagating ones at
    every column, hit ones nowhere.
    """
    page = SpectralPage(r.spec.name, 2, r.spec.dim_m)
    for p, h, tdeg in window.spots(r.spec.dim_m):
        kept = []
        for m in bvring.monomials_at(r, h, tdeg):
            kind = kind_of(r, m)
            if kind == Kind.PROPAGATE_STRIPE or (p == 0 and kind == Kind.SURVIVE_ALONE):
                kept.append(bvring.label(r, m))
        page.add((p, h, tdeg), len(kept), kept)
    return page


def e2_series(r: PresentedBVRing) -> RationalLaurentSeries:
    """
    Exact E2 series in topological degree. Monomials come in families
    base * stripe^c (stripe = v on spheres, t otherwise) whose kind depends
    only on c = 0 or the parity of c >= 1.
    """
    if r.case == bvring.Case.SPHERE:
        stripe = Monomial(0, 1, 0)
        bases = [Monomial(a, 0, 0) for a in range(2)]
    else:
        stripe = Monomial(0, 0, 1)
        bases = [Monomial(a, b, 0) for a in range(r.n + 1) for b in range(2)]
    period = 2 * r.tdeg(stripe)
    total = RationalLaurentSeries.zero()
    for base in bases:
        for c in range(3):
            m = Monomial(*(e + c * s for e, s in zip(base, stripe)))
            if not bvring.is_normal(r, m):
                continue
            kind = kind_of(r, m)
            if kind == Kind.HIT:
                continue
            denominators = [period] if c else []
            if kind == Kind.PROPAGATE_STRIPE:
                denominators.append(2)
            total = total + RationalLaurentSeries.monomial(r.tdeg(m), denominators)
    return total


def _displayed_inequalities(spec: ManifoldSpec, r_max: int) -> list[DisplayedInequality]:
    d, n = spec.d, spec.n
    rows = []
    for r in range(2, r_max + 1):
        for expression, value in (
            ("(r-1)(2-d-nd)", (r - 1) * (2 - d - n * d)),
            ("(2dn-d-2)-r(dn+d-2)", (2 * d * n - d - 2) - r * (d * n + d - 2)),
        ):
            rows.append(DisplayedInequality(r=r, expression=expression, value=value, holds=value < 0))
    return rows


def collapse_certificate(
    spec: ManifoldSpec, r_max: int | None = None, l_range: tuple[int, int] | None = None
) -> CertificateReport:
    """
    d_r maps (p, h, tdeg) to (p - r, h + 1 - 2r, tdeg + 2r - 1). Sources in
    columns p >= r >= 2 are propagating classes; targets are all E2 classes.
    d_r vanishes when every target tdeg is below every source tdeg + 2r - 1.
    """
    r_max = settings.R_MAX if r_max is None else r_max
    l_range = (0, settings.L_MAX) if l_range is None else l_range
    if r_max < 2:
        raise UsageError(f"rmax must be at least 2, got {r_max}")
    if l_range[0] < 0 or l_range[0] > l_range[1]:
        raise UsageError(f"invalid level range {l_range}")
    ring = make_presentation(spec)
    kinds: dict[int, list[tuple[int, Kind]]] = {}

    def at(hdeg: int) -> list[tuple[int, Kind]]:
        if hdeg not in kinds:
            kinds[hdeg] = [(ring.tdeg(m), kind_of(ring, m)) for m in bvring.monomials_at_hdeg(ring, hdeg)]
        return kinds[hdeg]

    report = CertificateReport(manifold=spec.name, r_max=r_max, l_range=l_range)
    for r in range(2, r_max + 1):
        shift = 2 * r - 1
        for level in range(l_range[0], l_range[1] + 1):
            for case, source_hdeg in (("even-to-odd", 2 * level), ("odd-to-even", 2 * level + 1)):
                target_hdeg = source_hdeg + 1 - 2 * r
                sources = [t for t, kind in at(source_hdeg) if kind == Kind.PROPAGATE_STRIPE]
                targets = [t for t, kind in at(target_hdeg) if kind != Kind.HIT]
                source_min = min(sources) if sources else None
                target_max = max(targets) if targets else None
                slack = strict = None
                if sources and targets:
                    slack = target_max - (source_min + shift)
                    strict = target_max - (source_min + 1)
                report.witnesses.append(
                    InequalityWitness(
                        r=r,
                        level=level,
                        case=case,
                        source_hdeg=source_hdeg,
                        target_hdeg=target_hdeg,
                        source_min=source_min,
                        target_max=target_max,
                        degree_shift=shift,
                        slack=slack,
                        strict_slack=strict,
                        holds=slack is None or slack < 0,
                    )
                )
    if ring.case == bvring.Case.ODD_PROJECTIVE:
        report.displayed = _displayed_inequalities(spec, r_max)
    if not report.passed:
        logger.warning(f"{spec.name}: {len(report.unresolved)} collapse witnesses fail")
    return report


def delta_rows(backend: BruteForceBackend, window: tuple[int, int], hdeg_max: int) -> list[DeltaRow]:
    """Δ of every monomial class by closed form and by B̌ on its cocycle."""
    ring, a = backend.ring, backend.algebra
    rows = []
    for m in bvring.basis_in_window(ring, window, hdeg_max):
        h, tdeg = ring.hdeg(m), ring.tdeg(m)
        expected = bvring.delta(ring, m)
        image = connes_B(a, backend.monomial_class(m).rep)
        computed = backend.in_monomial_basis(image, h - 1, tdeg + 1)
        rows.append(
            DeltaRow(
                manifold=backend.manifold,
                label=bvring.label(ring, m),
                hdeg=h,
                tdeg=tdeg,
                closed_form=bvring.element_label(ring, expected),
                brute_force="?" if computed is None else bvring.element_label(ring, computed),
                agrees=computed == expected,
            )
        )
    return rows


def monomial_basis_report(backend: BruteForceBackend, window: tuple[int, int], hdeg_max: int) -> ViolationReport:
    """Monomial cocycles form a basis of HH at every (hdeg, tdeg) in the window."""
    ring, a = backend.ring, backend.algebra
    report = ViolationReport(subject=backend.manifold)
    lo, hi = window
    for h in range(hdeg_max + 1):
        for tdeg in range(lo, hi + 1):
            monomials = bvring.monomials_at(ring, h, tdeg)
            classes = backend.classes(h, tdeg)
            report.checked += 1
            if len(monomials) != len(classes):
                report.violations.append(
                    Violation(identity="count", m=h, tdeg=tdeg, detail=f"{len(monomials)} monomials, dim HH {len(classes)}")
                )
                continue
            coordinates = [class_coordinates(a, classes, backend.monomial_class(m).rep) for m in monomials]
            if any(c is None for c in coordinates) or rank(F2Matrix.from_columns(len(classes), coordinates)) != len(classes):
                report.violations.append(
                    Violation(identity="basis", m=h, tdeg=tdeg, detail=", ".join(bvring.label(ring, m) for m in monomials))
                )
    return report


def bracket_rows(backend: BruteForceBackend) -> list[BracketRow]:
    """Gerstenhaber brackets of the located generators against the generator table."""
    ring, a = backend.ring, backend.algebra
    cocycles = {"x": backend.generators.x, ring.odd.name: backend.generators.odd}
    if backend.generators.t is not None:
        cocycles["t"] = backend.generators.t
    generators = list(ring.generators)
    rows = []
    for i, g in enumerate(generators):
        for h in generators[i + 1 :]:
            expected = bvring.bracket(ring, g.exponents, h.exponents)
            computed = gerstenhaber_bracket(a, cocycles[g.name], cocycles[h.name])
            located = backend.in_monomial_basis(computed, g.hdeg + h.hdeg - 1, g.tdeg + h.tdeg + 1)
            rows.append(
                BracketRow(
                    manifold=backend.manifold,
                    left=g.name,
                    right=h.name,
                    expected=bvring.element_label(ring, expected),
                    computed="?" if located is None else bvring.element_label(ring, located),
                    agrees=located == expected,
                )
            )
    return rows


def generator_delta_report(backend: BruteForceBackend) -> ViolationReport:
    """Δ vanishes on x, v (or u) and t; on even projective spaces B̌ of x^i -> i x^i is zero."""
    a = backend.algebra
    report = ViolationReport(subject=backend.manifold)
    generators = backend.generators
    named = [("x", generators.x), (generators.odd_name, generators.odd)]
    if generators.t is not None:
        named.append(("t", generators.t))
    for name, cocycle in named:
        report.checked += 1
        if not is_coboundary(a, connes_B(a, cocycle)):
            report.violations.append(Violation(identity="Δ", m=cocycle.m, tdeg=cocycle.tdeg, detail=name))
    if backend.ring.case == bvring.Case.EVEN_PROJECTIVE:
        u_bar = explicit_u(a)
        report.checked += 2
        if not cohomologous(a, u_bar, generators.odd):
            report.violations.append(Violation(identity="u", m=1, tdeg=-1, detail="x^i -> i x^i is not the located u"))
        if connes_B(a, u_bar):
            report.violations.append(Violation(identity="Δ", m=1, tdeg=-1, detail="B̌ of x^i -> i x^i"))
    return report


def _relations(ring: PresentedBVRing) -> list[tuple[str, Monomial, Monomial]]:
    n = ring.n
    x, odd = ring.x.exponents, ring.odd.exponents
    top = Monomial(n, 0, 0)
    relations = [(f"x^{n} x", top, x), (f"{ring.odd.name}^2", odd, odd)]
    if ring.case == bvring.Case.EVEN_PROJECTIVE:
        relations += [(f"u x^{n}", odd, top), (f"t x^{n}", ring.t.exponents, top)]
    return relations


def relation_report(backend: BruteForceBackend) -> ViolationReport:
    """Cup products of the generator cocycles obey the presentation relations."""
    ring, a = backend.ring, backend.algebra
    report = ViolationReport(subject=backend.manifold)
    for name, left, right in _relations(ring):
        expected = bvring.multiply(ring, left, right)
        product = cup(a, backend.monomial_class(left).rep, backend.monomial_class(right).rep)
        hdeg, tdeg = ring.hdeg(left) + ring.hdeg(right), ring.tdeg(left) + ring.tdeg(right)
        located = backend.in_monomial_basis(product, hdeg, tdeg)
        report.checked += 1
        if located != expected:
            found = "?" if located is None else bvring.element_label(ring, located)
            report.violations.append(
                Violation(
                    identity="relation",
                    m=hdeg,
                    tdeg=tdeg,
                    detail=f"{name} = {found}, presentation gives {bvring.element_label(ring, expected)}",
                )
            )
    if not report.passed:
        logger.error(f"{backend.manifold}: {len(report.violations)} presentation relations fail in HH")
    return report
