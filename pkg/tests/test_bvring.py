import pytest

from stringtop.bvring import (
    ONE,
    ZERO,
    Case,
    Monomial,
    basis_in_window,
    bracket,
    delta,
    delta_element,
    delta_via_bv,
    element_label,
    is_normal,
    label,
    make_presentation,
    monomials_at,
    monomials_at_hdeg,
    multiply,
    normal_form,
)
from stringtop.frobenius import ManifoldSpec


# --- Test Fixtures ---


def ring(name: str):
    return make_presentation(ManifoldSpec.parse(name))


X, V, T = Monomial(1, 0, 0), Monomial(0, 1, 0), Monomial(0, 0, 1)


# --- Tests ---


def test_generator_degrees():
    s2 = ring("S2")
    assert s2.case == Case.SPHERE
    assert [(g.name, g.tdeg, g.hdeg) for g in s2.generators] == [("x", -2, 0), ("v", 1, 1)]
    cp3 = ring("CP3")
    assert cp3.case == Case.ODD_PROJECTIVE
    assert [(g.name, g.tdeg) for g in cp3.generators] == [("x", -2), ("v", 1), ("t", 6)]
    rp2 = ring("RP2")
    assert rp2.case == Case.EVEN_PROJECTIVE
    assert [(g.name, g.tdeg) for g in rp2.generators] == [("x", -1), ("u", -1), ("t", 1)]


def test_v_squared_relation_depends_on_half_dimension():
    # (n + 1) / 2 is even for n = 3 and odd for n = 1
    assert normal_form(ring("RP3"), 0, 2, 0) is None
    assert normal_form(ring("CP1"), 0, 2, 0) == T
    assert multiply(ring("CP1"), V, V) == frozenset({T})
    assert multiply(ring("CP5"), V, V) == frozenset({Monomial(4, 0, 1)})


def test_even_case_relations():
    r = ring("RP2")
    assert normal_form(r, 2, 0, 0) == Monomial(2, 0, 0)
    assert normal_form(r, 2, 1, 0) is None
    assert normal_form(r, 2, 0, 1) is None
    assert normal_form(r, 0, 2, 0) is None
    assert normal_form(r, 3, 0, 0) is None
    assert is_normal(r, Monomial(1, 1, 4))


def test_sphere_products():
    r = ring("S2")
    assert multiply(r, X, X) == ZERO
    assert multiply(r, V, V) == frozenset({Monomial(0, 2, 0)})
    assert normal_form(r, 0, 0, 1) is None


def test_delta_closed_forms():
    s2 = ring("S2")
    assert delta(s2, Monomial(1, 1, 0)) == frozenset({ONE})
    assert delta(s2, Monomial(1, 2, 0)) == ZERO
    assert delta(s2, Monomial(1, 3, 0)) == frozenset({Monomial(0, 2, 0)})
    assert delta(s2, V) == ZERO
    rp3 = ring("RP3")
    assert delta(rp3, Monomial(1, 1, 2)) == frozenset({Monomial(0, 0, 2)})
    assert delta(rp3, Monomial(2, 1, 0)) == ZERO
    assert delta(rp3, Monomial(3, 1, 0)) == frozenset({Monomial(2, 0, 0)})
    rp2 = ring("RP2")
    assert delta(rp2, Monomial(0, 1, 1)) == frozenset({T})
    assert delta(rp2, Monomial(1, 1, 0)) == frozenset({X})
    assert delta(rp2, Monomial(1, 1, 1)) == ZERO
    assert delta(rp2, Monomial(0, 1, 0)) == ZERO


def test_delta_squares_to_zero():
    for name in ("S2", "RP3", "RP2", "CP4"):
        r = ring(name)
        for m in basis_in_window(r, (-40, 40), 5):
            assert delta_element(r, delta(r, m)) == ZERO


def test_generator_brackets():
    s3 = ring("S3")
    assert bracket(s3, X, V) == frozenset({ONE})
    cp2 = ring("CP2")
    assert bracket(cp2, X, V) == frozenset({X})
    assert bracket(cp2, V, T) == frozenset({T})
    assert bracket(cp2, X, T) == ZERO
    rp3 = ring("RP3")
    assert bracket(rp3, V, T) == ZERO
    assert bracket(rp3, X, T) == ZERO


def test_bracket_is_a_biderivation():
    r = ring("S2")
    # [x, x v] = x [x, v]
    assert bracket(r, X, Monomial(1, 1, 0)) == frozenset({X})
    # [x, v^3] = 3 v^2 [x, v]
    assert bracket(r, X, Monomial(0, 3, 0)) == frozenset({Monomial(0, 2, 0)})
    assert bracket(r, X, Monomial(0, 2, 0)) == ZERO


@pytest.mark.parametrize("name", ["S2", "S3", "RP2", "RP3", "CP1", "CP2", "RP4", "HP3"])
def test_closed_form_delta_satisfies_bv_relation(name):
    r = ring(name)
    monomials = basis_in_window(r, (-40, 40), 3)
    for m1 in monomials:
        for m2 in monomials:
            expected = delta_element(r, multiply(r, m1, m2))
            assert delta_via_bv(r, m1, m2) == expected, (label(r, m1), label(r, m2))


def test_monomial_enumeration():
    r = ring("RP2")
    assert monomials_at_hdeg(r, 0) == [ONE, X, Monomial(2, 0, 0)]
    assert monomials_at_hdeg(r, 3) == [Monomial(0, 1, 1), Monomial(1, 1, 1)]
    assert monomials_at_hdeg(r, -1) == []
    assert monomials_at(r, 3, 0) == [Monomial(0, 1, 1)]
    window = basis_in_window(r, (-1, 1), 2)
    assert window == [ONE, X, Monomial(0, 1, 0), T, Monomial(1, 0, 1)]


def test_labels():
    r = ring("RP3")
    assert label(r, Monomial(2, 1, 3)) == "x^2 v t^3"
    assert label(r, ONE) == "1"
    assert element_label(r, ZERO) == "0"
    assert element_label(r, {T, X}) == "x + t"
