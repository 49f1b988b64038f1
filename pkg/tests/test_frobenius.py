import pytest

from stringtop.cochains import Cochain
from stringtop.exceptions import InvalidManifoldError
from stringtop.frobenius import (
    Family,
    ManifoldSpec,
    check_frobenius,
    from_tables,
    make_algebra,
    tilde,
    untilde,
)
from stringtop.hochschild import explicit_u, unit_cochain


# --- Tests ---


@pytest.mark.parametrize(
    "name, family, d, n, dim_m",
    [
        ("S2", Family.SPHERE, 2, 1, 2),
        ("S5", Family.SPHERE, 5, 1, 5),
        ("RP3", Family.REAL_PROJECTIVE, 1, 3, 3),
        ("cp2", Family.COMPLEX_PROJECTIVE, 2, 2, 4),
        ("HP3", Family.QUATERNIONIC_PROJECTIVE, 4, 3, 12),
    ],
)
def test_parse_manifold(name, family, d, n, dim_m):
    spec = ManifoldSpec.parse(name)
    assert spec.family == family
    assert (spec.d, spec.n, spec.dim_m) == (d, n, dim_m)


@pytest.mark.parametrize("name", ["S1", "S0", "RP1", "RP0", "CP0", "XP3", "S", ""])
def test_parse_rejects_unsupported(name):
    with pytest.raises(InvalidManifoldError):
        ManifoldSpec.parse(name)


def test_invalid_manifold_exit_code():
    with pytest.raises(InvalidManifoldError) as info:
        ManifoldSpec.parse("RP1")
    assert info.value.exit_code == 2


def test_make_algebra_degrees_and_pairing():
    a = make_algebra(ManifoldSpec.parse("CP3"))
    assert a.basis_names == ("1", "x", "x^2", "x^3")
    assert a.degrees == (0, -2, -4, -6)
    assert a.top_degree == -6
    assert a.multiply(1 << 1, 1 << 2) == 1 << 3
    assert a.multiply(1 << 2, 1 << 2) == 0
    assert a.pair(1 << 1, 1 << 2) == 1
    assert a.pair(1 << 1, 1 << 1) == 0


@pytest.mark.parametrize(
    "name", ["S2", "S3", "S6", "RP2", "RP3", "RP7", "CP1", "CP5", "HP1", "HP3"]
)
def test_check_frobenius_passes(name):
    report = check_frobenius(make_algebra(ManifoldSpec.parse(name)))
    assert report.passed
    assert len(report.checks) == 6


def test_check_frobenius_reports_degenerate_pairing():
    a = from_tables(
        name="degenerate",
        basis_names=["1", "x"],
        degrees=[0, -2],
        products=[(0, 0, 0), (0, 1, 1), (1, 0, 1)],
        unit_index=0,
        pairing=[[0, 0], [0, 0]],
    )
    report = check_frobenius(a)
    assert not report.passed
    assert not report.result("nondegeneracy").passed
    assert report.result("associativity").passed


def test_tilde_untilde_inverse():
    a = make_algebra(ManifoldSpec.parse("RP2"))
    # f(x) = x^2, f(x^2) = 0: shift -1
    f = Cochain(1, -1, {(1,): 1 << 2})
    g = tilde(a, f)
    # <a_0, x^2> = 1 only for a_0 = 1
    assert g.support == frozenset({(0, 1)})
    assert untilde(a, g, shift=-1).values == f.values


def test_check_frobenius_reports_non_invariant_pairing():
    # F2[x]/x^3 with the identity Gram matrix: <x, x> = 1 but <1, x^2> = 0
    a = from_tables(
        name="identity-gram",
        basis_names=["1", "x", "x^2"],
        degrees=[0, -2, -4],
        products=[(0, 0, 0), (0, 1, 1), (1, 0, 1), (0, 2, 2), (2, 0, 2), (1, 1, 2)],
        unit_index=0,
        pairing=[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    )
    report = check_frobenius(a)
    assert not report.passed
    assert not report.result("invariance").passed
    assert not report.result("degree_compatibility").passed
    assert report.result("associativity").passed
    assert report.result("unitality").passed
    assert report.result("nondegeneracy").passed


def test_tilde_of_sphere_unit():
    a = make_algebra(ManifoldSpec.parse("S2"))
    g = tilde(a, unit_cochain(a))
    # <a_0, 1> = 1 only for the fundamental class
    assert g.arity == 1
    assert g.support == frozenset({(1,)})


def test_tilde_of_even_projective_u():
    a = make_algebra(ManifoldSpec.parse("RP2"))
    g = tilde(a, explicit_u(a))
    # u(x) = x and <x, x> = 1
    assert g.arity == 2
    assert g.support == frozenset({(1, 1)})
