"""
Presented BV rings HH*(C*(M), C*(M)) for spheres and projective spaces.

  S^k:            F2[x, v] / (x^2)
  KP^n, n odd:    F2[x, v, t] / (x^{n+1}, v^2 - ((n+1)/2) t x^{n-1})
  KP^n, n even:   F2[x, u, t] / (x^{n+1}, u^2, t x^n, u x^n)

Monomials are stored as exponent triples (a, b, c) of x, the odd generator
(v or u) and t. Ring elements are frozensets of normal-form monomials.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

from .frobenius import ManifoldSpec

logger = logging.getLogger(__name__)


class Case(str, Enum):
    SPHERE = "sphere"
    ODD_PROJECTIVE = "odd-projective"
    EVEN_PROJECTIVE = "even-projective"


class Monomial(NamedTuple):
    a: int
    b: int
    c: int


Element = frozenset[Monomial]

ZERO: Element = frozenset()
ONE = Monomial(0, 0, 0)


class Generator(NamedTuple):
    name: str
    tdeg: int
    hdeg: int
    exponents: Monomial


@dataclass(frozen=True)
class PresentedBVRing:
    spec: ManifoldSpec
    case: Case
    n: int
    x: Generator
    odd: Generator
    t: Generator | None
    v_square_coefficient: int = 0

    @property
    def generators(self) -> tuple[Generator, ...]:
        return tuple(g for g in (self.x, self.odd, self.t) if g is not None)

    def tdeg(self, m: Monomial) -> int:
        t_degree = self.t.tdeg if self.t else 0
        return m.a * self.x.tdeg + m.b * self.odd.tdeg + m.c * t_degree

    @staticmethod
    def hdeg(m: Monomial) -> int:
        return m.b + 2 * m.c


def make_presentation(spec: ManifoldSpec) -> PresentedBVRing:
    d, n = spec.d, spec.n
    x = Generator("x", -d, 0, Monomial(1, 0, 0))
    if spec.is_sphere:
        v = Generator("v", d - 1, 1, Monomial(0, 1, 0))
        return PresentedBVRing(spec, Case.SPHERE, 1, x, v, None)
    t = Generator("t", d * (n + 1) - 2, 2, Monomial(0, 0, 1))
    if n % 2:
        v = Generator("v", d - 1, 1, Monomial(0, 1, 0))
        coefficient = ((n + 1) // 2) % 2
        return PresentedBVRing(spec, Case.ODD_PROJECTIVE, n, x, v, t, coefficient)
    u = Generator("u", -1, 1, Monomial(0, 1, 0))
    return PresentedBVRing(spec, Case.EVEN_PROJECTIVE, n, x, u, t)


def normal_form(r: PresentedBVRing, a: int, b: int, c: int) -> Monomial | None:
    """Reduce x^a (v|u)^b t^c by the relations; None when it vanishes."""
    n = r.n
    if a > n:
        return None
    if r.case == Case.SPHERE:
        return Monomial(a, b, 0) if c == 0 else None
    if r.case == Case.ODD_PROJECTIVE:
        while b >= 2:
            if not r.v_square_coefficient:
                return None
            b, c, a = b - 2, c + 1, a + n - 1
            if a > n:
                return None
        return Monomial(a, b, c)
    if b >= 2:
        return None
    if (b or c) and a > n - 1:
        return None
    return Monomial(a, b, c)


def is_normal(r: PresentedBVRing, m: Monomial) -> bool:
    return normal_form(r, *m) == m


def multiply(r: PresentedBVRing, m1: Monomial, m2: Monomial) -> Element:
    product = normal_form(r, m1.a + m2.a, m1.b + m2.b, m1.c + m2.c)
    return ZERO if product is None else frozenset({product})


def multiply_elements(r: PresentedBVRing, e1: Iterable[Monomial], e2: Iterable[Monomial]) -> Element:
    result: set[Monomial] = set()
    right = list(e2)
    for m1 in e1:
        for m2 in right:
            result ^= multiply(r, m1, m2)
    return frozenset(result)


def delta(r: PresentedBVRing, m: Monomial) -> Element:
    """
    Closed forms, mod 2:
      spheres      Δ(x^a v^b)     = ab x^{a-1} v^{b-1}
      odd KP^n     Δ(x^a v^b t^c) = ab x^{a-1} t^c
      even KP^n    Δ(x^a u^b t^c) = (a+c)b x^a t^c
    """
    if r.case == Case.SPHERE:
        if m.a == 1 and m.b % 2:
            return frozenset({Monomial(0, m.b - 1, 0)})
        return ZERO
    if m.b != 1:
        return ZERO
    if r.case == Case.ODD_PROJECTIVE:
        if m.a % 2:
            return frozenset({Monomial(m.a - 1, 0, m.c)})
        return ZERO
    if (m.a + m.c) % 2:
        image = normal_form(r, m.a, 0, m.c)
        return ZERO if image is None else frozenset({image})
    return ZERO


def delta_element(r: PresentedBVRing, e: Iterable[Monomial]) -> Element:
    result: set[Monomial] = set()
    for m in e:
        result ^= delta(r, m)
    return frozenset(result)


def _generator_bracket(r: PresentedBVRing, g: Generator, h: Generator) -> Element:
    names = frozenset({g.name, h.name})
    if g.name == h.name:
        return ZERO
    if names == {"x", "v"}:
        return frozenset({ONE})
    if names == {"x", "u"}:
        return frozenset({r.x.exponents})
    if names == {"u", "t"}:
        return frozenset({r.t.exponents})
    return ZERO


def _exponent(m: Monomial, g: Generator) -> int:
    return m[g.exponents.index(1)]


def _divide(m: Monomial, g: Generator) -> Monomial:
    return Monomial(*(e - f for e, f in zip(m, g.exponents)))


def bracket(r: PresentedBVRing, m1: Monomial, m2: Monomial) -> Element:
    """
    Biderivation extension of the generator table:
    [m1, m2] = sum over generators g, h of e_g(m1) e_h(m2) (m1/g)(m2/h)[g, h].
    """
    result: set[Monomial] = set()
    for g in r.generators:
        e_g = _exponent(m1, g)
        if not e_g % 2:
            continue
        for h in r.generators:
            e_h = _exponent(m2, h)
            if not e_h % 2:
                continue
            table = _generator_bracket(r, g, h)
            if not table:
                continue
            rest = multiply(r, _divide(m1, g), _divide(m2, h))
            result ^= multiply_elements(r, rest, table)
    return frozenset(result)


def bracket_elements(r: PresentedBVRing, e1: Iterable[Monomial], e2: Iterable[Monomial]) -> Element:
    result: set[Monomial] = set()
    right = list(e2)
    for m1 in e1:
        for m2 in right:
            result ^= bracket(r, m1, m2)
    return frozenset(result)


def _delta_recursive(r: PresentedBVRing, m: Monomial) -> Element:
    """Δ from Δ(generator) = 0 by peeling one generator at a time."""
    for g in r.generators:
        if _exponent(m, g):
            rest = _divide(m, g)
            if rest == ONE:
                return ZERO
            peeled = multiply_elements(r, {g.exponents}, _delta_recursive(r, rest))
            return peeled ^ bracket(r, g.exponents, rest)
    return ZERO


def delta_via_bv(r: PresentedBVRing, m1: Monomial, m2: Monomial) -> Element:
    """Δ(m1 m2) = Δ(m1) m2 + m1 Δ(m2) + [m1, m2]."""
    return (
        multiply_elements(r, _delta_recursive(r, m1), {m2})
        ^ multiply_elements(r, {m1}, _delta_recursive(r, m2))
        ^ bracket(r, m1, m2)
    )


def basis_in_window(
    r: PresentedBVRing, window: tuple[int, int], hdeg_max: int
) -> list[Monomial]:
    """Normal-form monomials with tdeg in the window, ordered by (hdeg, a, b, c)."""
    lo, hi = window
    monomials = [
        m
        for hdeg in range(hdeg_max + 1)
        for m in monomials_at_hdeg(r, hdeg)
        if lo <= r.tdeg(m) <= hi
    ]
    return sorted(monomials, key=lambda m: (r.hdeg(m), m.a, m.b, m.c))


def label(r: PresentedBVRing, m: Monomial) -> str:
    parts = []
    for g in r.generators:
        e = _exponent(m, g)
        if e == 1:
            parts.append(g.name)
        elif e > 1:
            parts.append(f"{g.name}^{e}")
    return " ".join(parts) or "1"


def element_label(r: PresentedBVRing, e: Iterable[Monomial]) -> str:
    monomials = sorted(e, key=lambda m: (r.hdeg(m), m.a, m.b, m.c))
    return " + ".join(label(r, m) for m in monomials) or "0"


def monomials_at_hdeg(r: PresentedBVRing, hdeg: int) -> list[Monomial]:
    """All normal-form monomials of one Hochschild degree, ordered by a."""
    if hdeg < 0:
        return []
    if r.case == Case.SPHERE:
        candidates = [Monomial(a, hdeg, 0) for a in range(2)]
    else:
        candidates = [Monomial(a, hdeg % 2, hdeg // 2) for a in range(r.n + 1)]
    return [m for m in candidates if is_normal(r, m)]


def monomials_at(r: PresentedBVRing, hdeg: int, tdeg: int) -> list[Monomial]:
    return [m for m in monomials_at_hdeg(r, hdeg) if r.tdeg(m) == tdeg]
