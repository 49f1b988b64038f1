"""
Brute-force Hochschild cochain complex of a Frobenius algebra.

Cochain components are indexed by Hochschild degree m and topological
degree tdeg = shift - m. Both differentials preserve the internal shift:
b̌ raises m by one (tdeg - 1) and B̌ lowers it by one (tdeg + 1). B̌ is
computed as the pairing adjoint of Connes' B = (1 - t) s N on chains.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement, product
from typing import Callable, Sequence

from .cochains import Chain, Cochain, Functional, Tensor
from .config import settings
from .exceptions import CertificationError, StringTopError
from .f2core import (
    Echelon,
    F2Matrix,
    F2Vector,
    iter_bits,
    kernel_basis,
    rank,
    solve,
    subquotient_basis,
)
from .frobenius import FrobeniusAlgebra, ManifoldSpec, tilde, untilde
from .schemas import HcfRow, HcfTable, Violation, ViolationReport

logger = logging.getLogger(__name__)

Window = tuple[int, int]


@lru_cache(maxsize=None)
def _tensors_by_weight(
    a: FrobeniusAlgebra, m: int, normalized: bool
) -> dict[int, tuple[Tensor, ...]]:
    indices = [i for i in range(a.dim) if not (normalized and i == a.unit_index)]
    table: dict[int, list[Tensor]] = {}
    for tensor in product(indices, repeat=m):
        table.setdefault(a.weight(tensor), []).append(tensor)
    return {w: tuple(sorted(tensors)) for w, tensors in table.items()}


@lru_cache(maxsize=None)
def _factorizations(a: FrobeniusAlgebra) -> dict[int, list[tuple[int, int]]]:
    return a.factorizations()


@dataclass(frozen=True)
class CochainSpace:
    """Canonical basis of one (m, tdeg) component: pairs (input tensor, output index)."""

    m: int
    tdeg: int
    normalized: bool
    basis: tuple[tuple[Tensor, int], ...]

    @property
    def shift(self) -> int:
        return self.tdeg + self.m

    def __len__(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> dict[tuple[Tensor, int], int]:
        return {element: i for i, element in enumerate(self.basis)}

    def element(self, i: int) -> Cochain:
        inputs, output = self.basis[i]
        return Cochain(self.m, self.shift, {inputs: 1 << output})

    def cochain(self, bits: int) -> Cochain:
        values: dict[Tensor, int] = {}
        for i in iter_bits(bits):
            inputs, output = self.basis[i]
            values[inputs] = values.get(inputs, 0) | (1 << output)
        return Cochain(self.m, self.shift, values)

    def vector(self, f: Cochain) -> int:
        if not f:
            return 0
        if (f.m, f.shift) != (self.m, self.shift):
            raise ValueError(
                f"cochain (m={f.m}, tdeg={f.tdeg}) outside component "
                f"(m={self.m}, tdeg={self.tdeg})"
            )
        bits = 0
        for element in f.support():
            position = self.index.get(element)
            if position is None:
                raise ValueError(f"basis element {element} not in component")
            bits |= 1 << position
        return bits


@lru_cache(maxsize=None)
def cochain_space(
    a: FrobeniusAlgebra, m: int, tdeg: int, normalized: bool = False
) -> CochainSpace:
    if m < 0:
        return CochainSpace(m, tdeg, normalized, ())
    shift = tdeg + m
    by_degree: dict[int, list[int]] = {}
    for i, degree in enumerate(a.degrees):
        by_degree.setdefault(degree, []).append(i)
    basis = []
    for weight, tensors in _tensors_by_weight(a, m, normalized).items():
        for output in by_degree.get(weight + shift, ()):
            basis.extend((tensor, output) for tensor in tensors)
    return CochainSpace(m, tdeg, normalized, tuple(sorted(basis)))


def component_degrees(
    a: FrobeniusAlgebra, m: int, normalized: bool = False
) -> list[int]:
    """All tdeg values with a nonzero (m, tdeg) component."""
    if m < 0:
        return []
    degrees = set()
    for weight in _tensors_by_weight(a, m, normalized):
        for output in set(a.degrees):
            degrees.add(output - weight - m)
    return sorted(degrees)


def _coboundary_toggles(
    a: FrobeniusAlgebra, inputs: Tensor, output: int, toggles: dict[Tensor, int]
) -> None:
    """Add b̌ of the basis cochain (inputs -> e_output) into ``toggles``."""
    for j in range(a.dim):
        left = a.mult[j][output]
        if left:
            key = (j,) + inputs
            toggles[key] = toggles.get(key, 0) ^ left
        right = a.mult[output][j]
        if right:
            key = inputs + (j,)
            toggles[key] = toggles.get(key, 0) ^ right
    bit = 1 << output
    factorizations = _factorizations(a)
    for i, entry in enumerate(inputs):
        head, tail = inputs[:i], inputs[i + 1 :]
        for p, q in factorizations[entry]:
            key = head + (p, q) + tail
            toggles[key] = toggles.get(key, 0) ^ bit


def hochschild_d(a: FrobeniusAlgebra, f: Cochain) -> Cochain:
    """(b̌f)(a_1..a_{m+1}) = a_1 f(a_2..) + sum f(..a_i a_{i+1}..) + f(a_1..a_m) a_{m+1}."""
    toggles: dict[Tensor, int] = {}
    for inputs, output in f.support():
        _coboundary_toggles(a, inputs, output, toggles)
    return Cochain.from_toggles(f.m + 1, f.shift, toggles)


def _rotations(tensor: Tensor) -> list[Tensor]:
    return [tensor[i:] + tensor[:i] for i in range(len(tensor))]


def connes_B(a: FrobeniusAlgebra, f: Cochain) -> Cochain:
    """
    B̌f with tilde(B̌f)(z) = tilde(f)(Bz), where Bz is the sum over cyclic
    rotations c of z of (1 ⊗ c) + (c_last ⊗ 1 ⊗ c_rest). Zero on CH^0.
    """
    if f.m == 0:
        return Cochain.zero(-1, f.shift)
    unit = a.unit_index
    support: set[Tensor] = set()

    def toggle_rotations(tensor: Tensor) -> None:
        for rotated in _rotations(tensor):
            support.symmetric_difference_update((rotated,))

    for inputs, output in f.support():
        # <1, f(c)> with c a rotation of z
        if a.pairing.entry(unit, output):
            toggle_rotations(inputs)
        # <c_last, f(1 ⊗ c_rest)>
        if inputs[0] == unit:
            rest = inputs[1:]
            for y in range(a.dim):
                if a.pairing.entry(y, output):
                    toggle_rotations(rest + (y,))
    return untilde(a, Functional(f.m, frozenset(support)), shift=f.shift)


def differential_matrix(
    a: FrobeniusAlgebra,
    source: CochainSpace,
    target: CochainSpace,
    operator: Callable[[FrobeniusAlgebra, Cochain], Cochain],
) -> F2Matrix:
    columns = [target.vector(operator(a, source.element(i))) for i in range(len(source))]
    return F2Matrix.from_columns(len(target), columns)


def coboundary_matrix(
    a: FrobeniusAlgebra, m: int, tdeg: int, normalized: bool = False
) -> F2Matrix:
    """b̌: CH^m_tdeg -> CH^{m+1}_{tdeg-1}."""
    return differential_matrix(
        a,
        cochain_space(a, m, tdeg, normalized),
        cochain_space(a, m + 1, tdeg - 1, normalized),
        hochschild_d,
    )


def connes_matrix(
    a: FrobeniusAlgebra, m: int, tdeg: int, normalized: bool = False
) -> F2Matrix:
    """B̌: CH^m_tdeg -> CH^{m-1}_{tdeg+1}."""
    source = cochain_space(a, m, tdeg, normalized)
    if m == 0:
        return F2Matrix.zeros(0, len(source))
    return differential_matrix(
        a, source, cochain_space(a, m - 1, tdeg + 1, normalized), connes_B
    )


@lru_cache(maxsize=None)
def _coboundary_image(
    a: FrobeniusAlgebra, m: int, tdeg: int, normalized: bool = False
) -> Echelon:
    """Echelon basis of im(b̌: CH^{m-1}_{tdeg+1} -> CH^m_tdeg)."""
    if m == 0:
        return Echelon()
    return Echelon(coboundary_matrix(a, m - 1, tdeg + 1, normalized).columns())


@dataclass(frozen=True)
class HHClass:
    m: int
    tdeg: int
    rep: Cochain
    label: str | None = None

    def labelled(self, label: str) -> HHClass:
        return HHClass(self.m, self.tdeg, self.rep, label)


def _hh_component(
    a: FrobeniusAlgebra, m: int, tdeg: int, normalized: bool
) -> list[HHClass]:
    space = cochain_space(a, m, tdeg, normalized)
    if not len(space):
        return []
    kernel = kernel_basis(coboundary_matrix(a, m, tdeg, normalized))
    image = [
        F2Vector(len(space), row)
        for row in _coboundary_image(a, m, tdeg, normalized).basis()
    ]
    classes = [
        HHClass(m, tdeg, space.cochain(rep.bits))
        for rep in subquotient_basis(kernel, image)
    ]
    logger.debug(
        f"HH^{m} tdeg {tdeg}: dim CH {len(space)}, kernel {len(kernel)}, "
        f"image {len(image)}, classes {len(classes)}"
    )
    return classes


def hh(
    a: FrobeniusAlgebra, m: int, window: Window, normalized: bool = False
) -> list[HHClass]:
    """Canonical classes of HH^m(A, A) for every tdeg in the window, ascending."""
    lo, hi = window
    degrees = [t for t in component_degrees(a, m, normalized) if lo <= t <= hi]
    if settings.THREADS > 1 and len(degrees) > 1:
        with ThreadPoolExecutor(max_workers=settings.THREADS) as pool:
            parts = list(
                pool.map(lambda t: _hh_component(a, m, t, normalized), degrees)
            )
    else:
        parts = [_hh_component(a, m, t, normalized) for t in degrees]
    return [c for part in parts for c in part]


def hh_dimensions(
    a: FrobeniusAlgebra, m: int, window: Window, normalized: bool = False
) -> dict[int, int]:
    dims: dict[int, int] = {}
    for c in hh(a, m, window, normalized):
        dims[c.tdeg] = dims.get(c.tdeg, 0) + 1
    return dims


def is_coboundary(a: FrobeniusAlgebra, f: Cochain, normalized: bool = False) -> bool:
    if not f:
        return True
    space = cochain_space(a, f.m, f.tdeg, normalized)
    return _coboundary_image(a, f.m, f.tdeg, normalized).contains(space.vector(f))


def cohomologous(a: FrobeniusAlgebra, f: Cochain, g: Cochain) -> bool:
    if not f or not g:
        return is_coboundary(a, f or g)
    if (f.m, f.tdeg) != (g.m, g.tdeg):
        return is_coboundary(a, f) and is_coboundary(a, g)
    return is_coboundary(a, f + g)


def class_coordinates(
    a: FrobeniusAlgebra, basis: Sequence[HHClass], f: Cochain
) -> int | None:
    """
    Coordinates of the class of f in the given HH basis (bit i for basis[i]),
    or None when f is not a cocycle in their span modulo coboundaries.
    """
    if not f:
        return 0
    if not basis:
        return 0 if is_coboundary(a, f) else None
    m, tdeg = basis[0].m, basis[0].tdeg
    if (f.m, f.tdeg) != (m, tdeg):
        return None
    space = cochain_space(a, m, tdeg)
    image = _coboundary_image(a, m, tdeg).basis()
    columns = [space.vector(c.rep) for c in basis] + image
    matrix = F2Matrix.from_columns(len(space), columns)
    solution = solve(matrix, F2Vector(len(space), space.vector(f)))
    if solution is None:
        return None
    return solution.bits & ((1 << len(basis)) - 1)


def cup(a: FrobeniusAlgebra, f: Cochain, g: Cochain) -> Cochain:
    """(f ⌣ g)(a_1..a_{m+m'}) = f(a_1..a_m) g(a_{m+1}..)."""
    values: dict[Tensor, int] = {}
    for left_inputs, left in f.values.items():
        for right_inputs, right in g.values.items():
            value = a.multiply(left, right)
            if value:
                values[left_inputs + right_inputs] = value
    return Cochain(f.m + g.m, f.shift + g.shift, values)


def _compose_into(
    f: Cochain, g: Cochain, toggles: dict[Tensor, int]
) -> None:
    """Add f ∘ g (g substituted into every slot of f) into ``toggles``."""
    for inputs, output in f.values.items():
        for slot, entry in enumerate(inputs):
            head, tail = inputs[:slot], inputs[slot + 1 :]
            for g_inputs, g_output in g.values.items():
                if (g_output >> entry) & 1:
                    key = head + g_inputs + tail
                    toggles[key] = toggles.get(key, 0) ^ output


def gerstenhaber_bracket(a: FrobeniusAlgebra, f: Cochain, g: Cochain) -> Cochain:
    """[f, g] = f ∘ g + g ∘ f mod 2."""
    toggles: dict[Tensor, int] = {}
    _compose_into(f, g, toggles)
    _compose_into(g, f, toggles)
    return Cochain.from_toggles(f.m + g.m - 1, f.shift + g.shift, toggles)


def delta_on_hh(a: FrobeniusAlgebra, c: HHClass) -> HHClass | None:
    """The class of B̌(rep) in HH^{m-1} at tdeg + 1, or None when it vanishes."""
    if c.m == 0:
        return None
    image = connes_B(a, c.rep)
    if not image:
        return None
    space = cochain_space(a, c.m - 1, c.tdeg + 1)
    reduced = _coboundary_image(a, c.m - 1, c.tdeg + 1).reduce(space.vector(image))
    if not reduced:
        return None
    return HHClass(c.m - 1, c.tdeg + 1, space.cochain(reduced))


@dataclass(frozen=True)
class GeneratorCocycles:
    """Cocycles for x, the odd generator (v or u) and t; t is None on spheres."""

    x: Cochain
    odd: Cochain
    t: Cochain | None
    odd_name: str


def unit_cochain(a: FrobeniusAlgebra) -> Cochain:
    return Cochain(0, 0, {(): a.unit})


def explicit_u(a: FrobeniusAlgebra) -> Cochain:
    """The derivation x^i -> i x^i (shift 0, tdeg -1)."""
    return Cochain(1, 0, {(i,): 1 << i for i in range(a.dim) if i % 2})


def _unique_class(a: FrobeniusAlgebra, m: int, tdeg: int, name: str) -> Cochain:
    classes = hh(a, m, (tdeg, tdeg))
    if len(classes) != 1:
        raise StringTopError(
            f"{a.name}: expected one HH^{m} class at tdeg {tdeg} for {name}, "
            f"found {len(classes)}"
        )
    return classes[0].rep


def locate_generators(a: FrobeniusAlgebra, spec: ManifoldSpec) -> GeneratorCocycles:
    d, n = spec.d, spec.n
    x = Cochain(0, a.degrees[1], {(): 1 << 1})
    if spec.is_sphere:
        return GeneratorCocycles(x, _unique_class(a, 1, d - 1, "v"), None, "v")
    t = _unique_class(a, 2, d * (n + 1) - 2, "t")
    if n % 2:
        return GeneratorCocycles(x, _unique_class(a, 1, d - 1, "v"), t, "v")
    return GeneratorCocycles(x, _unique_class(a, 1, -1, "u"), t, "u")


def monomial_cocycle(
    a: FrobeniusAlgebra, generators: GeneratorCocycles, exponents: tuple[int, int, int]
) -> Cochain:
    """Cup product x^a ⌣ odd^b ⌣ t^c of the located generator cocycles."""
    power_x, power_odd, power_t = exponents
    if power_t and generators.t is None:
        return Cochain.zero(power_odd + 2 * power_t)
    result = unit_cochain(a)
    factors = (
        [generators.x] * power_x
        + [generators.odd] * power_odd
        + [generators.t] * power_t
    )
    for factor in factors:
        result = cup(a, result, factor)
    return result


def bv_identity_check(a: FrobeniusAlgebra, classes: Sequence[HHClass]) -> ViolationReport:
    """Δ(fg) = Δf·g + f·Δg + [f, g] in cohomology, for every pair of classes."""
    report = ViolationReport(subject=a.name)
    for f, g in combinations_with_replacement(classes, 2):
        if f.m + g.m == 0:
            continue
        m, tdeg = f.m + g.m - 1, f.tdeg + g.tdeg + 1
        space = cochain_space(a, m, tdeg)
        terms = [
            connes_B(a, cup(a, f.rep, g.rep)),
            cup(a, connes_B(a, f.rep), g.rep),
            cup(a, f.rep, connes_B(a, g.rep)),
            gerstenhaber_bracket(a, f.rep, g.rep),
        ]
        defect = 0
        for term in terms:
            defect ^= space.vector(term)
        report.checked += 1
        if not _coboundary_image(a, m, tdeg).contains(defect):
            report.violations.append(
                Violation(
                    identity="bv",
                    m=m,
                    tdeg=tdeg,
                    detail=f"pair {f.label or (f.m, f.tdeg)} / {g.label or (g.m, g.tdeg)}",
                )
            )
    if not report.passed:
        logger.error(f"BV identity fails on {len(report.violations)} pairs for {a.name}")
    return report


def chain_b(a: FrobeniusAlgebra, z: Chain) -> Chain:
    """b(a_0..a_n) = sum_{i<n} (..a_i a_{i+1}..) + (a_n a_0, a_1..a_{n-1})."""
    terms: set[Tensor] = set()
    for tensor in z.terms:
        n = len(tensor) - 1
        for i in range(n):
            head, tail = tensor[:i], tensor[i + 2 :]
            for k in iter_bits(a.mult[tensor[i]][tensor[i + 1]]):
                terms.symmetric_difference_update({head + (k,) + tail})
        if n >= 1:
            for k in iter_bits(a.mult[tensor[n]][tensor[0]]):
                terms.symmetric_difference_update({(k,) + tensor[1:n]})
    return Chain(z.n - 1, frozenset(terms))


def chain_B(a: FrobeniusAlgebra, z: Chain) -> Chain:
    """Connes' B = (1 - t) s N: sum over rotations c of (1 ⊗ c) + (c_last ⊗ 1 ⊗ c_rest)."""
    unit = a.unit_index
    terms: set[Tensor] = set()
    for tensor in z.terms:
        for rotated in _rotations(tensor):
            terms.symmetric_difference_update({(unit,) + rotated})
            terms.symmetric_difference_update({(rotated[-1], unit) + rotated[:-1]})
    return Chain(z.n + 1, frozenset(terms))


def _weight_chains(a: FrobeniusAlgebra, length: int, weight: int) -> tuple[Tensor, ...]:
    return _tensors_by_weight(a, length, False).get(weight, ())


def _random_cochain(rng: random.Random, space: CochainSpace) -> Cochain:
    return space.cochain(rng.getrandbits(len(space)) if len(space) else 0)


def _duality_defects(a: FrobeniusAlgebra, f: Cochain, chains: Sequence[Tensor]):
    """Yield (identity, chain) where an adjointness identity fails."""
    f_tilde = tilde(a, f)
    b_tilde = tilde(a, hochschild_d(a, f))
    for tensor in chains:
        z = Chain(len(tensor) - 1, frozenset({tensor}))
        if len(tensor) == f.m + 2 and b_tilde(tensor) != f_tilde.pair(chain_b(a, z)):
            yield "b", tensor
    if f.m == 0:
        return
    B_tilde = tilde(a, connes_B(a, f))
    for tensor in chains:
        z = Chain(len(tensor) - 1, frozenset({tensor}))
        if len(tensor) == f.m and B_tilde(tensor) != f_tilde.pair(chain_B(a, z)):
            yield "B", tensor


def duality_check(
    a: FrobeniusAlgebra,
    sample_count: int = 0,
    exhaustive_m: int = 3,
    sampled_m: int = 6,
    seed: int | None = None,
) -> ViolationReport:
    """
    <tilde(b̌f), z> = <tilde(f), bz> and <tilde(B̌f), z> = <tilde(f), Bz>,
    exhaustively over basis cochains with m <= exhaustive_m and on random
    cochains otherwise. Only chains of the matching weight can pair nonzero.
    """
    report = ViolationReport(subject=a.name)
    rng = random.Random(settings.RANDOM_SEED if seed is None else seed)

    def check(f: Cochain) -> None:
        weight = a.top_degree - f.shift
        chains = _weight_chains(a, f.m + 2, weight) + _weight_chains(a, f.m, weight)
        for identity, tensor in _duality_defects(a, f, chains):
            report.violations.append(
                Violation(identity=identity, m=f.m, tdeg=f.tdeg, detail=f"chain {tensor}")
            )
        report.checked += 1

    for m in range(exhaustive_m + 1):
        for tdeg in component_degrees(a, m):
            space = cochain_space(a, m, tdeg)
            for i in range(len(space)):
                check(space.element(i))
    for _ in range(sample_count):
        m = rng.randint(0, sampled_m)
        degrees = component_degrees(a, m)
        check(_random_cochain(rng, cochain_space(a, m, rng.choice(degrees))))
    if not report.passed:
        logger.error(f"Duality fails {len(report.violations)} times for {a.name}")
    return report


def _bicomplex_defects(a: FrobeniusAlgebra, f: Cochain) -> list[str]:
    defects = []
    bf = hochschild_d(a, f)
    if hochschild_d(a, bf):
        defects.append("b̌b̌")
    Bf = connes_B(a, f)
    if f.m >= 2 and connes_B(a, Bf):
        defects.append("B̌B̌")
    anti = connes_B(a, bf)
    if f.m >= 1:
        anti = anti + hochschild_d(a, Bf)
    if anti:
        defects.append("B̌b̌+b̌B̌")
    return defects


def bicomplex_check(
    a: FrobeniusAlgebra,
    sample_count: int = 0,
    exhaustive_m: int = 3,
    sampled_m: int = 7,
    seed: int | None = None,
) -> ViolationReport:
    """b̌² = 0, B̌² = 0 and B̌b̌ + b̌B̌ = 0 on basis cochains and random cochains."""
    report = ViolationReport(subject=a.name)
    rng = random.Random(settings.RANDOM_SEED if seed is None else seed)

    def check(f: Cochain) -> None:
        for identity in _bicomplex_defects(a, f):
            report.violations.append(
                Violation(identity=identity, m=f.m, tdeg=f.tdeg, detail=str(f.values))
            )
        report.checked += 1

    for m in range(exhaustive_m + 1):
        for tdeg in component_degrees(a, m):
            space = cochain_space(a, m, tdeg)
            for i in range(len(space)):
                check(space.element(i))
    for _ in range(sample_count):
        m = rng.randint(0, sampled_m)
        check(_random_cochain(rng, cochain_space(a, m, rng.choice(component_degrees(a, m)))))
    if not report.passed:
        logger.error(f"Bicomplex identities fail {len(report.violations)} times for {a.name}")
    return report


def _total_blocks(
    a: FrobeniusAlgebra, degree: int, column_cap: int
) -> list[tuple[int, CochainSpace]]:
    """
    Normalized components (p, CH̄^m_tau) of total degree tau + 2p + dim M.
    A normalized m-cochain has tdeg >= m (step - 1) - dim M.
    """
    step, dim_m = -a.degrees[1], -a.top_degree
    blocks = []
    for p in range(min(column_cap, degree // 2) + 1):
        tdeg = degree - dim_m - 2 * p
        for m in range((degree - 2 * p) // (step - 1) + 1):
            space = cochain_space(a, m, tdeg, normalized=True)
            if len(space):
                blocks.append((p, space))
    return blocks


def _total_rank(
    a: FrobeniusAlgebra,
    source: list[tuple[int, CochainSpace]],
    target: list[tuple[int, CochainSpace]],
) -> int:
    offsets, size = {}, 0
    for p, space in target:
        offsets[(p, space.m)] = (size, space)
        size += len(space)
    columns = []
    for p, space in source:
        for i in range(len(space)):
            f = space.element(i)
            column = 0
            images = [(p, hochschild_d(a, f))]
            if p >= 1:
                images.append((p - 1, connes_B(a, f)))
            for column_index, image in images:
                if not image:
                    continue
                offset, block = offsets[(column_index, image.m)]
                column ^= block.vector(image) << offset
            columns.append(column)
    return rank(F2Matrix.from_columns(size, columns))


def hcf_window(
    a: FrobeniusAlgebra, window: Window, column_cap: int | None = None
) -> HcfTable:
    """
    Homology of the truncated total complex (columns p <= column_cap) with
    D = b̌ + B̌, per total degree in the window.
    """
    lo, hi = window
    cap = settings.COL_CAP if column_cap is None else column_cap
    step = -a.degrees[1]
    if step <= 1:
        raise CertificationError(
            f"{a.name}: normalized cochains are unbounded in Hochschild degree "
            f"when |x| = -1; the total complex cannot be truncated"
        )
    required = max(hi + 1, 0) // 2
    truncated = cap < required
    if truncated:
        logger.warning(
            f"{a.name}: column cap {cap} below the required {required} for "
            f"total degrees up to {hi}; result is truncated"
        )
    rows = []
    if lo <= hi:
        blocks = {N: _total_blocks(a, N, cap) for N in range(lo - 1, hi + 2)}
        ranks = {
            N: _total_rank(a, blocks[N], blocks[N - 1]) for N in range(lo, hi + 2)
        }
        for N in range(lo, hi + 1):
            size = sum(len(space) for _, space in blocks[N])
            dim = size - ranks[N] - ranks[N + 1]
            logger.debug(f"{a.name} total degree {N}: dim Tot {size}, homology {dim}")
            rows.append(HcfRow(manifold=a.name, degree=N, dim=dim))
    return HcfTable(
        manifold=a.name,
        column_cap=cap,
        required_cap=required,
        truncated=truncated,
        rows=rows,
    )
