"""
Graded Frobenius algebras H*(M; F2) for spheres and projective spaces.

Cohomology is graded negatively: x has degree -k on S^k and -d on KP^n,
and the pairing <a, b> evaluates the cup product on the fundamental class.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Sequence

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from .cochains import Cochain, Functional, Tensor
from .exceptions import InvalidManifoldError
from .f2core import F2Matrix, F2Vector, iter_bits, parity, rank, solve
from .schemas import CheckReport, CheckResult

logger = logging.getLogger(__name__)

_NAME_PATTERN = re.compile(r"^(S|RP|CP|HP)(\d+)$")


class Family(str, Enum):
    SPHERE = "S"
    REAL_PROJECTIVE = "RP"
    COMPLEX_PROJECTIVE = "CP"
    QUATERNIONIC_PROJECTIVE = "HP"


_DIVISION_DIMENSION = {
    Family.REAL_PROJECTIVE: 1,
    Family.COMPLEX_PROJECTIVE: 2,
    Family.QUATERNIONIC_PROJECTIVE: 4,
}


class ManifoldSpec(BaseModel):
    """
    A sphere S^k (k >= 2) or a projective space KP^n (n >= 1, n >= 2 for K = R).
    """

    model_config = ConfigDict(frozen=True)

    family: Family
    parameter: int

    @model_validator(mode="after")
    def _check_range(self):
        if self.family == Family.SPHERE and self.parameter <= 1:
            raise ValueError(f"S{self.parameter}: spheres need k > 1")
        if self.family == Family.REAL_PROJECTIVE and self.parameter <= 1:
            raise ValueError(f"RP{self.parameter}: real projective spaces need n > 1")
        if self.parameter < 1:
            raise ValueError(f"{self.family.value}{self.parameter}: need n >= 1")
        return self

    @classmethod
    def parse(cls, name: str) -> ManifoldSpec:
        match = _NAME_PATTERN.match(name.strip().upper())
        if not match:
            raise InvalidManifoldError(
                f"cannot parse manifold '{name}' (expected S<k>, RP<n>, CP<n>, HP<n>)"
            )
        try:
            return cls(family=Family(match.group(1)), parameter=int(match.group(2)))
        except ValidationError as e:
            raise InvalidManifoldError(e.errors()[0]["msg"]) from e

    @property
    def name(self) -> str:
        return f"{self.family.value}{self.parameter}"

    @property
    def is_sphere(self) -> bool:
        return self.family == Family.SPHERE

    @property
    def d(self) -> int:
        """Degree of the generator x up to sign: k for S^k, dim_R(K) for KP^n."""
        if self.is_sphere:
            return self.parameter
        return _DIVISION_DIMENSION[self.family]

    @property
    def n(self) -> int:
        """Truncation height: x^{n+1} = 0 (n = 1 for spheres)."""
        return 1 if self.is_sphere else self.parameter

    @property
    def dim_m(self) -> int:
        return self.d * self.n

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class FrobeniusAlgebra:
    """
    Finite dimensional graded commutative F2-algebra with a pairing.

    ``mult[i][j]`` is the bit-packed product of basis elements i and j;
    ``pairing`` is the Gram matrix <e_i, e_j>.
    """

    name: str
    basis_names: tuple[str, ...]
    degrees: tuple[int, ...]
    mult: tuple[tuple[int, ...], ...]
    unit_index: int
    pairing: F2Matrix

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @property
    def top_degree(self) -> int:
        """Degree of the fundamental class, i.e. -dim M."""
        return min(self.degrees)

    @property
    def unit(self) -> int:
        return 1 << self.unit_index

    def multiply(self, left: int, right: int) -> int:
        """Product of two bit-packed elements."""
        result = 0
        for i in iter_bits(left):
            row = self.mult[i]
            for j in iter_bits(right):
                result ^= row[j]
        return result

    def pair(self, left: int, right: int) -> int:
        """<left, right> for bit-packed elements."""
        result = 0
        for i in iter_bits(left):
            result ^= parity(self.pairing.rows[i] & right)
        return result

    def weight(self, tensor: Tensor) -> int:
        return sum(self.degrees[i] for i in tensor)

    def label(self, element: int) -> str:
        if not element:
            return "0"
        return " + ".join(self.basis_names[i] for i in iter_bits(element))

    def factorizations(self) -> dict[int, list[tuple[int, int]]]:
        """For each basis index k, the pairs (p, q) whose product contains e_k."""
        table: dict[int, list[tuple[int, int]]] = {k: [] for k in range(self.dim)}
        for p in range(self.dim):
            for q in range(self.dim):
                for k in iter_bits(self.mult[p][q]):
                    table[k].append((p, q))
        return table


def from_tables(
    name: str,
    basis_names: Sequence[str],
    degrees: Sequence[int],
    products: Iterable[tuple[int, int, int]],
    unit_index: int,
    pairing: Sequence[Sequence[int]],
) -> FrobeniusAlgebra:
    """
    Generic constructor: ``products`` lists triples (i, j, k) meaning that
    e_k occurs in e_i * e_j.
    """
    dim = len(basis_names)
    mult = [[0] * dim for _ in range(dim)]
    for i, j, k in products:
        mult[i][j] ^= 1 << k
    return FrobeniusAlgebra(
        name=name,
        basis_names=tuple(basis_names),
        degrees=tuple(degrees),
        mult=tuple(tuple(row) for row in mult),
        unit_index=unit_index,
        pairing=F2Matrix.from_lists([list(row) for row in pairing]),
    )


def make_algebra(spec: ManifoldSpec) -> FrobeniusAlgebra:
    """H*(M; F2) = F2[x]/x^{n+1} with |x| = -d and <x^i, x^j> = 1 iff i + j = n."""
    n, step = spec.n, spec.d
    names = ["1", "x"] + [f"x^{i}" for i in range(2, n + 1)]
    products = [(i, j, i + j) for i in range(n + 1) for j in range(n + 1) if i + j <= n]
    pairing = [[1 if i + j == n else 0 for j in range(n + 1)] for i in range(n + 1)]
    algebra = from_tables(
        name=spec.name,
        basis_names=names,
        degrees=[-step * i for i in range(n + 1)],
        products=products,
        unit_index=0,
        pairing=pairing,
    )
    logger.debug(f"Built H*({spec.name}; F2) with basis {algebra.basis_names}")
    return algebra


def check_frobenius(a: FrobeniusAlgebra) -> CheckReport:
    basis = range(a.dim)

    def first_failure(predicate, tuples) -> str | None:
        for args in tuples:
            if not predicate(*args):
                return f"fails at {tuple(a.basis_names[i] for i in args)}"
        return None

    def associative(i, j, k):
        ij_k = a.multiply(a.mult[i][j], 1 << k)
        i_jk = a.multiply(1 << i, a.mult[j][k])
        return ij_k == i_jk

    def unital(i):
        return a.mult[a.unit_index][i] == 1 << i == a.mult[i][a.unit_index]

    def symmetric(i, j):
        return a.pairing.entry(i, j) == a.pairing.entry(j, i)

    def invariant(i, j, k):
        return a.pair(a.mult[i][j], 1 << k) == a.pair(1 << i, a.mult[j][k])

    def degree_compatible(i, j):
        return not a.pairing.entry(i, j) or a.degrees[i] + a.degrees[j] == a.top_degree

    triples = list(product(basis, repeat=3))
    pairs = list(product(basis, repeat=2))
    failures = {
        "associativity": first_failure(associative, triples),
        "unitality": first_failure(unital, [(i,) for i in basis]),
        "symmetry": first_failure(symmetric, pairs),
        "invariance": first_failure(invariant, triples),
        "nondegeneracy": (
            None
            if rank(a.pairing) == a.dim
            else f"pairing has rank {rank(a.pairing)} < {a.dim}"
        ),
        "degree_compatibility": first_failure(degree_compatible, pairs),
    }
    report = CheckReport(
        subject=a.name,
        checks=[
            CheckResult(name=name, passed=detail is None, detail=detail)
            for name, detail in failures.items()
        ],
    )
    if not report.passed:
        logger.warning(f"Frobenius check failed for {a.name}: {failures}")
    return report


def tilde(a: FrobeniusAlgebra, f: Cochain) -> Functional:
    """f~(a_0 ⊗ ... ⊗ a_m) = <a_0, f(a_1 ⊗ ... ⊗ a_m)>."""
    support = set()
    for inputs, output in f.values.items():
        for a0 in range(a.dim):
            if parity(a.pairing.rows[a0] & output):
                support.add((a0,) + inputs)
    return Functional(f.m + 1, frozenset(support))


def untilde(a: FrobeniusAlgebra, g: Functional, shift: int | None = None) -> Cochain:
    """
    The unique cochain f with tilde(f) = g, found by inverting the pairing
    for each tail a_1 ⊗ ... ⊗ a_m.
    """
    m = g.arity - 1
    if not g.support:
        return Cochain.zero(m, shift or 0)
    by_tail: dict[Tensor, int] = {}
    for tensor in g.support:
        by_tail[tensor[1:]] = by_tail.get(tensor[1:], 0) | (1 << tensor[0])
    if shift is None:
        first = min(g.support)
        shift = a.top_degree - a.weight(first)
    values = {}
    for tail, column in by_tail.items():
        solution = solve(a.pairing, F2Vector(a.dim, column))
        if solution is None:
            raise ValueError(f"pairing cannot represent functional at {tail}")
        if solution.bits:
            values[tail] = solution.bits
    return Cochain(m, shift, values)
