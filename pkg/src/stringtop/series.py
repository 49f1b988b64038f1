"""
Exact rational Laurent series p(t) / prod (1 - t^k) with integer coefficients,
and the closed-form Poincare series of S^1-equivariant loop homology.

Equality of series is windowed: two series are equal on [lo, hi] when their
expansions agree coefficientwise there.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .exceptions import SeriesSupportError
from .frobenius import ManifoldSpec
from .schemas import Mismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LaurentPoly:
    """Finitely supported integer coefficients, sorted by exponent, no zeros."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_mapping(cls, coefficients: Mapping[int, int]) -> LaurentPoly:
        return cls(tuple(sorted((e, c) for e, c in coefficients.items() if c)))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPoly:
        return cls.from_mapping({exponent: coefficient})

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls.monomial(0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coefficient(self, exponent: int) -> int:
        return self.as_dict().get(exponent, 0)

    @property
    def min_exponent(self) -> int:
        return self.terms[0][0] if self.terms else 0

    @property
    def max_exponent(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        total = Counter(self.as_dict())
        for e, c in other.terms:
            total[e] += c
        return LaurentPoly.from_mapping(total)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.from_mapping({e: c * other for e, c in self.terms})
        product: Counter[int] = Counter()
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                product[e1 + e2] += c1 * c2
        return LaurentPoly.from_mapping(product)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            power = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if c == 1:
                parts.append(power)
            elif c == -1 and e != 0:
                parts.append(f"-{power}")
            elif e == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c} {power}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class RationalLaurentSeries:
    numerator: LaurentPoly
    denominators: tuple[int, ...] = ()

    def __post_init__(self):
        if any(k <= 0 for k in self.denominators):
            raise ValueError(f"denominator factors must be positive: {self.denominators}")
        object.__setattr__(self, "denominators", tuple(sorted(self.denominators)))

    @classmethod
    def of(cls, numerator: LaurentPoly, denominators: Iterable[int] = ()) -> RationalLaurentSeries:
        return cls(numerator, tuple(denominators))

    @classmethod
    def monomial(cls, exponent: int, denominators: Iterable[int] = ()) -> RationalLaurentSeries:
        return cls(LaurentPoly.monomial(exponent), tuple(denominators))

    @classmethod
    def zero(cls) -> RationalLaurentSeries:
        return cls(LaurentPoly())

    def __add__(self, other: RationalLaurentSeries) -> RationalLaurentSeries:
        return add(self, other)

    def __mul__(self, other: RationalLaurentSeries | LaurentPoly) -> RationalLaurentSeries:
        if isinstance(other, LaurentPoly):
            other = RationalLaurentSeries(other)
        return mul(self, other)

    def shift(self, k: int) -> RationalLaurentSeries:
        return RationalLaurentSeries(self.numerator.shift(k), self.denominators)

    def expand(self, lo: int, hi: int) -> list[int]:
        return expand(self, lo, hi)

    def __str__(self) -> str:
        denominator = "".join(f"(1 - t^{k})" for k in self.denominators)
        if not denominator:
            return str(self.numerator)
        return f"({self.numerator}) / {denominator}"


def _factor(k: int) -> LaurentPoly:
    return LaurentPoly.from_mapping({0: 1, k: -1})


def add(s1: RationalLaurentSeries, s2: RationalLaurentSeries) -> RationalLaurentSeries:
    """Sum over the common denominator given by the factor-multiset union."""
    c1, c2 = Counter(s1.denominators), Counter(s2.denominators)
    union = c1 | c2
    n1, n2 = s1.numerator, s2.numerator
    for k, count in (union - c1).items():
        for _ in range(count):
            n1 = n1 * _factor(k)
    for k, count in (union - c2).items():
        for _ in range(count):
            n2 = n2 * _factor(k)
    return RationalLaurentSeries(n1 + n2, tuple(union.elements()))


def mul(s1: RationalLaurentSeries, s2: RationalLaurentSeries) -> RationalLaurentSeries:
    return RationalLaurentSeries(
        s1.numerator * s2.numerator, s1.denominators + s2.denominators
    )


def geometric_ratio(m: int, step: int, negative: bool = False) -> LaurentPoly:
    """sum_{j<m} t^{±step j}, i.e. (1 - t^{±step m}) / (1 - t^{±step})."""
    if m < 1 or step < 1:
        raise ValueError(f"geometric_ratio needs m >= 1 and step >= 1, got {m}, {step}")
    sign = -1 if negative else 1
    return LaurentPoly.from_mapping({sign * step * j: 1 for j in range(m)})


def expand(s: RationalLaurentSeries, lo: int, hi: int) -> list[int]:
    """Coefficients of t^lo .. t^hi of the power series expansion."""
    if lo > hi:
        return []
    low = min(s.numerator.min_exponent, lo)
    depth = hi - low
    partitions = [1] + [0] * depth
    for k in s.denominators:
        for j in range(k, depth + 1):
            partitions[j] += partitions[j - k]
    coefficients = []
    for q in range(lo, hi + 1):
        total = 0
        for e, c in s.numerator.terms:
            if 0 <= q - e <= depth:
                total += c * partitions[q - e]
        coefficients.append(total)
    return coefficients


def equal_in_window(
    s1: RationalLaurentSeries, s2: RationalLaurentSeries, lo: int, hi: int
) -> tuple[bool, Mismatch | None]:
    for exponent, (left, right) in enumerate(
        zip(expand(s1, lo, hi), expand(s2, lo, hi)), start=lo
    ):
        if left != right:
            return False, Mismatch(exponent=exponent, left=left, right=right)
    return True, None


def check_support(s: RationalLaurentSeries) -> None:
    """Raise when the expansion has a nonzero coefficient in negative degree."""
    low = s.numerator.min_exponent
    if low >= 0:
        return
    for exponent, c in enumerate(expand(s, low, -1), start=low):
        if c:
            raise SeriesSupportError(
                f"series {s} has coefficient {c} at t^{exponent}"
            )


def alpha_beta(d: int, n: int) -> tuple[RationalLaurentSeries, RationalLaurentSeries]:
    """
    alpha_{d,n} = t^{-d-1} + t^{2dn-3} / (1 - t^2)
    beta_{d,n}  = t^{d(2n+1)-3} + (1 + t^{2dn-2} + t^{-1}) / (1 - t^2)
    """
    alpha = RationalLaurentSeries(
        LaurentPoly.monomial(-d - 1) * _factor(2) + LaurentPoly.monomial(2 * d * n - 3),
        (2,),
    )
    beta_tail = LaurentPoly.from_mapping({0: 1, -1: 1}) + LaurentPoly.monomial(2 * d * n - 2)
    beta = RationalLaurentSeries(
        LaurentPoly.monomial(d * (2 * n + 1) - 3) * _factor(2) + beta_tail, (2,)
    )
    return alpha, beta


def _sphere_series(k: int) -> RationalLaurentSeries:
    inner = RationalLaurentSeries.monomial(k - 1) + RationalLaurentSeries(
        LaurentPoly.from_mapping({0: 1, 2 * k - 1: 1}), (2,)
    )
    return mul(RationalLaurentSeries(LaurentPoly.one(), (2 * (k - 1),)), inner)


def _odd_projective_e2(d: int, n: int) -> RationalLaurentSeries:
    """E2 of KP^{2n+1} in topological degree, before the t^{dim M} shift."""
    stripe = d * (2 * n + 2) - 2
    families = RationalLaurentSeries.monomial(-1) + RationalLaurentSeries(
        LaurentPoly.from_mapping({d - 1: 1, -d: 1}), (2,)
    )
    return mul(
        RationalLaurentSeries(geometric_ratio(n + 1, 2 * d, negative=True), (stripe,)),
        families,
    )


def poincare_series(spec: ManifoldSpec, corrected: bool = False) -> RationalLaurentSeries:
    """
    Poincare series of H^{S^1}_*(LM; F2). For even projective spaces the
    displayed closed form weights beta by (1 - t^{-2d(n+1)}) / (1 - t^{-2d}),
    which counts the vanishing products u x^n and t x^n; ``corrected=True``
    uses the weight of alpha for both and adds the stripe of x^n.
    """
    if spec.is_sphere:
        return _sphere_series(spec.parameter)
    d, dim_m = spec.d, spec.dim_m
    if spec.n % 2:
        return _odd_projective_e2(d, (spec.n - 1) // 2).shift(dim_m)
    n = spec.n // 2
    alpha, beta = alpha_beta(d, n)
    prefix = RationalLaurentSeries.monomial(dim_m, (2 * d * (2 * n + 1) - 4,))
    short = geometric_ratio(n, 2 * d, negative=True)
    if corrected:
        return mul(prefix, (alpha + beta) * short) + RationalLaurentSeries.monomial(0, (2,))
    long = geometric_ratio(n + 1, 2 * d, negative=True)
    return mul(prefix, alpha * short + beta * long)


def e2_closed_form(spec: ManifoldSpec) -> RationalLaurentSeries:
    """
    E2 Poincare series in topological degree, assembled from the survive-alone
    family plus the propagating families times 1 / (1 - t^2).
    """
    if spec.is_sphere:
        k = spec.parameter
        families = RationalLaurentSeries.monomial(-1) + RationalLaurentSeries(
            LaurentPoly.from_mapping({-k: 1, k - 1: 1}), (2,)
        )
        return mul(RationalLaurentSeries(LaurentPoly.one(), (2 * (k - 1),)), families)
    if spec.n % 2:
        return _odd_projective_e2(spec.d, (spec.n - 1) // 2)
    return poincare_series(spec, corrected=True).shift(-spec.dim_m)
