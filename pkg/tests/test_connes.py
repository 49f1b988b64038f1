import pytest

from stringtop import bvring
from stringtop.bvring import Monomial, make_presentation
from stringtop.connes import (
    BruteForceBackend,
    GradingMode,
    Kind,
    PageWindow,
    PresentedBackend,
    SpectralPage,
    bracket_rows,
    classify,
    collapse_certificate,
    d1_matrix,
    delta_rows,
    e1,
    e2_from_hh,
    e2_page,
    e2_presented,
    e2_series,
    generator_delta_report,
    kind_of,
    monomial_basis_report,
    page_window,
    regrade,
    regrade_inverse,
    relation_report,
)
from stringtop.exceptions import BudgetExceededError, StringTopError, UsageError
from stringtop.frobenius import ManifoldSpec, make_algebra
from stringtop.hochschild import cup
from stringtop.series import equal_in_window, poincare_series

WIDE = (-30, 30)


# --- Test Fixtures ---


def spec_of(name: str) -> ManifoldSpec:
    return ManifoldSpec.parse(name)


def backend(name: str, budget: int | None = None) -> BruteForceBackend:
    spec = spec_of(name)
    return BruteForceBackend(make_algebra(spec), spec, budget)


def compose_is_zero(first, second) -> bool:
    """second ∘ first == 0 for bit-packed F2 matrices."""
    columns = second.columns()
    for column in first.columns():
        image = 0
        for i, target in enumerate(columns):
            if (column >> i) & 1:
                image ^= target
        if image:
            return False
    return True


# --- Grading ---


def test_regrade_round_trip():
    s2 = spec_of("S2")
    assert regrade(s2, 0, 0, -2) == (0, 0)
    assert regrade(s2, 0, 1, 1) == (0, 3)
    assert regrade(s2, 2, 1, 1) == (2, 5)
    assert regrade_inverse(s2, 2, 5) == (2, 1)


def test_page_window_covers_classes():
    window = page_window(make_presentation(spec_of("S2")), 3, 0, 4)
    # v^4 has tdeg 4 and x v^4 tdeg 2 = q_hi - dim M
    assert window.hdeg_max == 4
    assert page_window(make_presentation(spec_of("CP2")), 2, 0, 8).hdeg_max == 3
    with pytest.raises(UsageError):
        PageWindow(-1, 0, 4, 2)


def test_spectral_page_grids():
    page = SpectralPage("S2", 2, 2)
    page.add((1, 1, 1), 1, ["v"])
    page.add((0, 0, 0), 0)
    assert page.entries == {(1, 1, 1): 1}
    assert page.grid(GradingMode.REGRADED) == {(1, 4): 1}
    assert page.grid(GradingMode.HOCHSCHILD) == {(1, 0): 1}
    assert page.totals() == {5: 1}
    assert page.rows()[0].labels == ["v"]
    with pytest.raises(StringTopError):
        page.add((0, 0, 0), -1)


# --- Classification ---


def test_classify_sphere():
    r = make_presentation(spec_of("S2"))
    kinds = classify(r, WIDE, 4)
    assert kinds[Monomial(1, 1, 0)] == Kind.SURVIVE_ALONE
    assert kinds[Monomial(1, 3, 0)] == Kind.SURVIVE_ALONE
    assert kinds[Monomial(0, 2, 0)] == Kind.HIT
    assert kinds[Monomial(0, 0, 0)] == Kind.HIT
    assert kinds[Monomial(0, 1, 0)] == Kind.PROPAGATE_STRIPE
    assert kinds[Monomial(1, 2, 0)] == Kind.PROPAGATE_STRIPE
    assert kinds[Monomial(1, 0, 0)] == Kind.PROPAGATE_STRIPE


def test_classify_odd_projective():
    r = make_presentation(spec_of("CP3"))
    assert kind_of(r, Monomial(1, 1, 2)) == Kind.SURVIVE_ALONE
    assert kind_of(r, Monomial(3, 1, 0)) == Kind.SURVIVE_ALONE
    assert kind_of(r, Monomial(2, 1, 1)) == Kind.PROPAGATE_STRIPE
    assert kind_of(r, Monomial(1, 0, 3)) == Kind.PROPAGATE_STRIPE
    assert kind_of(r, Monomial(2, 0, 1)) == Kind.HIT
    assert kind_of(r, Monomial(0, 0, 0)) == Kind.HIT


def test_classify_even_projective():
    r = make_presentation(spec_of("RP2"))
    assert kind_of(r, Monomial(0, 1, 1)) == Kind.SURVIVE_ALONE
    assert kind_of(r, Monomial(1, 1, 0)) == Kind.SURVIVE_ALONE
    assert kind_of(r, Monomial(0, 0, 1)) == Kind.HIT
    assert kind_of(r, Monomial(1, 0, 0)) == Kind.HIT
    assert kind_of(r, Monomial(0, 0, 0)) == Kind.PROPAGATE_STRIPE
    assert kind_of(r, Monomial(2, 0, 0)) == Kind.PROPAGATE_STRIPE
    assert kind_of(r, Monomial(0, 1, 0)) == Kind.PROPAGATE_STRIPE


@pytest.mark.parametrize("name", ["S2", "RP2", "RP3", "CP2", "CP3"])
def test_survive_alone_pairs_with_hit(name):
    r = make_presentation(spec_of(name))
    kinds = classify(r, WIDE, 5)
    for m, kind in kinds.items():
        if kind != Kind.SURVIVE_ALONE:
            continue
        (image,) = bvring.delta(r, m)
        assert kind_of(r, image) == Kind.HIT


# --- Pages ---


def test_d1_matrix_blocks():
    source = PresentedBackend(spec_of("S2"))
    window = PageWindow(3, 0, 6, 5)
    assert d1_matrix(source, 0, window).nrows == 0
    for p in range(2, 4):
        assert compose_is_zero(d1_matrix(source, p, window), d1_matrix(source, p - 1, window))
    # xv -> 1 is the only nonzero entry between the q = 2 blocks
    small = PageWindow(1, 2, 2, 1)
    matrix = d1_matrix(source, 1, small)
    assert sum(row.bit_count() for row in matrix.rows) == 1


@pytest.mark.parametrize("name", ["S2", "S3", "RP2", "RP3", "CP2", "HP1"])
def test_e2_routes_agree_on_presentation(name):
    r = make_presentation(spec_of(name))
    window = page_window(r, 6, 0, 10)
    assert e2_presented(r, window).entries == e2_page(PresentedBackend(r.spec), window).entries


@pytest.mark.parametrize("name, p_max, q_hi", [("S2", 3, 6), ("CP2", 2, 8), ("RP3", 2, 3)])
def test_e2_from_hh_matches_presentation(name, p_max, q_hi):
    spec = spec_of(name)
    r = make_presentation(spec)
    window = page_window(r, p_max, 0, q_hi)
    brute = e2_from_hh(make_algebra(spec), spec, window, hdeg_budget=window.hdeg_max)
    assert brute.entries == e2_presented(r, window).entries


def test_e1_dimensions_agree_between_backends():
    spec = spec_of("S2")
    window = PageWindow(1, 0, 3, 3)
    presented = e1(PresentedBackend(spec), window)
    brute = e1(backend("S2"), window)
    assert presented.entries == brute.entries
    assert presented.labels[(0, 1, 1)] == ["v"]


def test_e2_from_hh_respects_budget():
    spec = spec_of("S2")
    with pytest.raises(BudgetExceededError):
        e2_from_hh(make_algebra(spec), spec, PageWindow(1, 0, 4, 6), hdeg_budget=4)
    with pytest.raises(BudgetExceededError):
        backend("S2", 2).classes(4, 2)


@pytest.mark.parametrize("name, bound", [("S2", 8), ("RP2", 6), ("CP3", 8)])
def test_e2_series_counts_page_entries(name, bound):
    r = make_presentation(spec_of(name))
    totals = e2_presented(r, page_window(r, bound, 0, bound)).totals()
    expected = e2_series(r).shift(r.spec.dim_m).expand(0, bound)
    assert [totals.get(N, 0) for N in range(bound + 1)] == expected


@pytest.mark.parametrize(
    "name",
    ["S2", "S3", "S4", "S5", "S6", "RP2", "RP3", "RP4", "RP5", "RP6", "RP7",
     "CP1", "CP2", "CP3", "CP4", "CP5", "HP1", "HP2", "HP3"],
)
def test_e2_series_matches_closed_form(name):
    spec = spec_of(name)
    even = not spec.is_sphere and spec.n % 2 == 0
    reference = poincare_series(spec, corrected=even)
    equal, mismatch = equal_in_window(reference, e2_series(make_presentation(spec)).shift(spec.dim_m), 0, 60)
    assert equal, mismatch


# --- Collapse certificate ---


@pytest.mark.parametrize("name", ["S2", "S5", "RP2", "RP3", "RP6", "CP2", "CP3", "HP2", "HP3"])
def test_collapse_certificate_passes(name):
    report = collapse_certificate(spec_of(name), 10, (0, 20))
    assert report.passed, report.unresolved[:3]
    assert len(report.witnesses) == 9 * 21 * 2


def test_certificate_records_tight_strict_comparison():
    report = collapse_certificate(spec_of("RP2"), 2, (0, 3))
    tight = [w for w in report.witnesses if w.strict_slack == 0]
    assert tight
    assert all(w.r == 2 and w.level % 2 == 1 and w.case == "odd-to-even" for w in tight)
    assert report.passed


def test_certificate_displayed_inequalities_for_odd_projective():
    report = collapse_certificate(spec_of("CP3"), 3, (0, 2))
    assert [(d.r, d.value) for d in report.displayed] == [(2, -6), (2, -4), (3, -12), (3, -10)]
    assert collapse_certificate(spec_of("S2"), 3, (0, 2)).displayed == []


def test_certificate_rejects_bad_ranges():
    with pytest.raises(UsageError):
        collapse_certificate(spec_of("S2"), 1)
    with pytest.raises(UsageError):
        collapse_certificate(spec_of("S2"), 3, (4, 2))


# --- Brute force against the presentation ---


@pytest.mark.parametrize("name", ["S2", "RP2", "RP3"])
def test_delta_rows_agree(name):
    rows = delta_rows(backend(name), WIDE, 3)
    assert rows
    assert all(row.agrees for row in rows), [row for row in rows if not row.agrees][:2]


def test_delta_rows_contain_ut_to_t():
    rows = {row.label: row for row in delta_rows(backend("RP2"), WIDE, 3)}
    assert rows["u t"].closed_form == "t"
    assert rows["u t"].brute_force == "t"


@pytest.mark.parametrize("name", ["S2", "RP2", "CP2"])
def test_monomial_cocycles_form_a_basis(name):
    report = monomial_basis_report(backend(name), (-12, 12), 3)
    assert report.passed, report.violations[:3]
    assert report.checked == 4 * 25


@pytest.mark.parametrize(
    "name, expected",
    [
        ("S2", {("x", "v"): "1"}),
        ("S3", {("x", "v"): "1"}),
        ("RP2", {("x", "u"): "x", ("x", "t"): "0", ("u", "t"): "t"}),
        ("RP3", {("x", "v"): "1", ("x", "t"): "0", ("v", "t"): "0"}),
        ("CP2", {("x", "u"): "x", ("x", "t"): "0", ("u", "t"): "t"}),
    ],
)
def test_bracket_rows(name, expected):
    rows = bracket_rows(backend(name))
    assert {(row.left, row.right): row.computed for row in rows} == expected
    assert all(row.agrees for row in rows)


@pytest.mark.parametrize("name", ["S2", "RP2", "RP3", "CP2"])
def test_generator_delta_report(name):
    report = generator_delta_report(backend(name))
    assert report.passed, report.violations


@pytest.mark.parametrize(
    "name, checked",
    [
        ("CP1", 2),
        ("HP1", 2),
        ("RP3", 2),
        ("CP3", 2),
        ("RP5", 2),
        ("RP2", 4),
        ("CP2", 4),
        ("RP4", 4),
    ],
)
def test_relation_report(name, checked):
    report = relation_report(backend(name))
    assert report.passed, report.violations
    assert report.checked == checked


def test_odd_generator_square():
    # v^2 = t when (n+1)/2 is odd, 0 otherwise
    b = backend("CP1")
    v = b.generators.odd
    assert b.in_monomial_basis(cup(b.algebra, v, v), 2, 2) == {Monomial(0, 0, 1)}
    b = backend("RP3")
    v = b.generators.odd
    assert b.in_monomial_basis(cup(b.algebra, v, v), 2, 0) == frozenset()


def test_element_cocycle_of_sum():
    b = backend("S2")
    element = frozenset({Monomial(0, 1, 0), Monomial(1, 1, 0)})
    assert not b.element_cocycle(frozenset())
    with pytest.raises(ValueError):
        # v and x v live in different topological degrees
        b.element_cocycle(element)
    assert b.in_monomial_basis(b.element_cocycle(frozenset({Monomial(0, 2, 0)})), 2, 2) == {
        Monomial(0, 2, 0)
    }
