import pytest

from stringtop import bvring
from stringtop.cochains import Cochain
from stringtop.exceptions import CertificationError
from stringtop.frobenius import ManifoldSpec, from_tables, make_algebra
from stringtop.hochschild import (
    HHClass,
    bicomplex_check,
    bv_identity_check,
    class_coordinates,
    cochain_space,
    cohomologous,
    component_degrees,
    connes_B,
    connes_matrix,
    coboundary_matrix,
    cup,
    delta_on_hh,
    duality_check,
    explicit_u,
    gerstenhaber_bracket,
    hcf_window,
    hh,
    hh_dimensions,
    hochschild_d,
    is_coboundary,
    locate_generators,
    monomial_cocycle,
    unit_cochain,
)
from stringtop.series import expand, poincare_series

WIDE = (-40, 40)


# --- Test Fixtures ---


def algebra(name: str):
    spec = ManifoldSpec.parse(name)
    return spec, make_algebra(spec)


# --- Tests ---


@pytest.mark.parametrize("name, m_max", [("S2", 4), ("S3", 3), ("RP2", 3), ("RP3", 3), ("CP2", 3)])
def test_hh_dimensions_match_presentation(name, m_max):
    spec, a = algebra(name)
    ring = bvring.make_presentation(spec)
    for m in range(m_max + 1):
        expected: dict[int, int] = {}
        for monomial in bvring.monomials_at_hdeg(ring, m):
            tdeg = ring.tdeg(monomial)
            expected[tdeg] = expected.get(tdeg, 0) + 1
        assert hh_dimensions(a, m, WIDE) == expected, f"HH^{m}"


def test_hh_of_sphere_low_degrees():
    _, a = algebra("S2")
    assert [c.tdeg for c in hh(a, 0, WIDE)] == [-2, 0]
    assert [c.tdeg for c in hh(a, 1, WIDE)] == [-1, 1]


@pytest.mark.parametrize("name", ["S2", "RP2"])
def test_normalized_complex_has_same_cohomology(name):
    _, a = algebra(name)
    for m in range(4):
        assert hh_dimensions(a, m, WIDE, normalized=True) == hh_dimensions(a, m, WIDE)


def test_cochain_space_degrees():
    _, a = algebra("S2")
    # 1-cochains of F2[x]/x^2: inputs 1, x and outputs 1, x
    assert component_degrees(a, 1) == [-3, -1, 1]
    assert len(cochain_space(a, 1, -1)) == 2
    assert cochain_space(a, -1, 0).basis == ()


@pytest.mark.parametrize("name", ["S2", "RP2", "RP3"])
def test_bicomplex_identities(name):
    _, a = algebra(name)
    report = bicomplex_check(a, sample_count=5, exhaustive_m=3, sampled_m=4, seed=7)
    assert report.passed, report.violations[:3]
    assert report.checked > 0


@pytest.mark.parametrize("name", ["S2", "RP2"])
def test_duality_with_chain_operators(name):
    _, a = algebra(name)
    report = duality_check(a, sample_count=5, exhaustive_m=3, sampled_m=4, seed=7)
    assert report.passed, report.violations[:3]


def test_matrices_compose_to_zero():
    _, a = algebra("RP2")
    for tdeg in component_degrees(a, 1):
        d0 = coboundary_matrix(a, 1, tdeg)
        d1 = coboundary_matrix(a, 2, tdeg - 1)
        for column in d0.columns():
            image = 0
            for i in range(d1.ncols):
                if (column >> i) & 1:
                    image ^= d1.columns()[i]
            assert image == 0
    assert connes_matrix(a, 0, 0).nrows == 0


def test_zero_cochains_are_cocycles_and_coboundaries_are_trivial():
    _, a = algebra("RP3")
    assert not hochschild_d(a, unit_cochain(a))
    f = Cochain(1, -1, {(1,): 1 << 2})
    assert is_coboundary(a, hochschild_d(a, f))


def test_class_coordinates_of_non_cocycle():
    _, a = algebra("S2")
    # 1 -> x is not a derivation: b̌f(1, 1) = x
    f = Cochain(1, -2, {(0,): 1 << 1})
    assert hochschild_d(a, f)
    assert class_coordinates(a, [], f) is None


def test_cup_products_on_sphere():
    spec, a = algebra("S2")
    gens = locate_generators(a, spec)
    assert not cup(a, gens.x, gens.x)
    v_squared = cup(a, gens.odd, gens.odd)
    assert v_squared
    assert not hochschild_d(a, v_squared)
    assert not is_coboundary(a, v_squared)


def test_delta_sends_xv_to_unit_on_sphere():
    spec, a = algebra("S2")
    gens = locate_generators(a, spec)
    xv = monomial_cocycle(a, gens, (1, 1, 0))
    image = delta_on_hh(a, HHClass(1, -1, xv))
    assert image is not None
    assert (image.m, image.tdeg) == (0, 0)
    assert cohomologous(a, image.rep, unit_cochain(a))
    assert delta_on_hh(a, HHClass(1, 1, gens.odd)) is None


def test_connes_b_vanishes_on_zero_cochains():
    _, a = algebra("S2")
    image = connes_B(a, unit_cochain(a))
    assert image.m == -1
    assert not image


def test_bracket_of_x_and_v_is_unit():
    spec, a = algebra("S3")
    gens = locate_generators(a, spec)
    bracket = gerstenhaber_bracket(a, gens.x, gens.odd)
    assert (bracket.m, bracket.tdeg) == (0, 0)
    assert cohomologous(a, bracket, unit_cochain(a))


@pytest.mark.parametrize("name", ["S2", "RP2"])
def test_bv_identity(name):
    _, a = algebra(name)
    classes = [c for m in range(3) for c in hh(a, m, WIDE)]
    assert bv_identity_check(a, classes).passed


@pytest.mark.parametrize("name", ["RP2", "CP2", "RP4"])
def test_explicit_u_for_even_projective_spaces(name):
    spec, a = algebra(name)
    gens = locate_generators(a, spec)
    u_bar = explicit_u(a)
    assert not hochschild_d(a, u_bar)
    assert cohomologous(a, u_bar, gens.odd)
    assert not connes_B(a, u_bar)


def test_generators_are_delta_closed():
    spec, a = algebra("RP3")
    gens = locate_generators(a, spec)
    for cocycle in (gens.x, gens.odd, gens.t):
        assert is_coboundary(a, connes_B(a, cocycle))


def test_hcf_window_matches_closed_form_on_sphere():
    spec, a = algebra("S2")
    table = hcf_window(a, (0, 8), column_cap=12)
    assert not table.truncated
    assert table.required_cap == 4
    expected = expand(poincare_series(spec), 0, 8)
    assert expected[:6] == [1, 1, 2, 2, 3, 3]
    assert [table.dims()[N] for N in range(9)] == expected


def test_hcf_window_truncation_is_flagged():
    _, a = algebra("S2")
    table = hcf_window(a, (0, 6), column_cap=1)
    assert table.truncated


def test_hcf_window_rejects_unit_step():
    _, a = algebra("RP2")
    with pytest.raises(CertificationError):
        hcf_window(a, (0, 4))


def test_bicomplex_check_catches_non_invariant_pairing():
    # F2[x]/x^3 with the identity Gram matrix is not Frobenius
    a = from_tables(
        name="identity-gram",
        basis_names=["1", "x", "x^2"],
        degrees=[0, -2, -4],
        products=[(0, 0, 0), (0, 1, 1), (1, 0, 1), (0, 2, 2), (2, 0, 2), (1, 1, 2)],
        unit_index=0,
        pairing=[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    )
    report = bicomplex_check(a, exhaustive_m=2)
    assert not report.passed
    assert "B̌b̌+b̌B̌" in {v.identity for v in report.violations}


@pytest.mark.parametrize("name", ["CP2", "HP2"])
def test_hcf_window_matches_corrected_series(name):
    spec, a = algebra(name)
    table = hcf_window(a, (0, 10), column_cap=12)
    assert not table.truncated
    dims = [table.dims()[N] for N in range(11)]
    assert dims == expand(poincare_series(spec, corrected=True), 0, 10)
    assert dims != expand(poincare_series(spec), 0, 10)


def test_hcf_window_on_cp2():
    _, a = algebra("CP2")
    table = hcf_window(a, (0, 10), column_cap=12)
    assert [table.dims()[N] for N in range(11)] == [1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 3]
