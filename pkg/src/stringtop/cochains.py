"""
Value types shared by the Frobenius and Hochschild modules.

Tensors are tuples of basis indices; elements of the algebra are bit-packed
integers over its basis (bit ``k`` is the coefficient of basis element ``k``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .f2core import F2Matrix, iter_bits

Tensor = tuple[int, ...]


@dataclass(frozen=True)
class Cochain:
    """
    A homogeneous Hochschild cochain f: A^{⊗m} -> A.

    ``values`` maps an input tensor to the bit-packed output element; inputs
    with zero output are absent. f maps (A^{⊗m})_w into A_{w+shift}, and its
    topological degree is ``shift - m``.
    """

    m: int
    shift: int
    values: dict[Tensor, int] = field(default_factory=dict)

    def __post_init__(self):
        for inputs, output in self.values.items():
            if len(inputs) != self.m:
                raise ValueError(f"input {inputs} has arity != {self.m}")
            if not output:
                raise ValueError(f"stored zero output at {inputs}")

    @classmethod
    def zero(cls, m: int, shift: int = 0) -> Cochain:
        return cls(m, shift, {})

    @classmethod
    def from_toggles(cls, m: int, shift: int, toggles: dict[Tensor, int]) -> Cochain:
        return cls(m, shift, {k: v for k, v in toggles.items() if v})

    @property
    def tdeg(self) -> int:
        return self.shift - self.m

    def __call__(self, inputs: Tensor) -> int:
        return self.values.get(inputs, 0)

    def __bool__(self) -> bool:
        return bool(self.values)

    def __add__(self, other: Cochain) -> Cochain:
        if other.m != self.m:
            raise ValueError(f"cannot add cochains of arity {self.m} and {other.m}")
        if not other.values:
            return self
        if not self.values:
            return other
        if other.shift != self.shift:
            raise ValueError(
                f"cannot add cochains of shift {self.shift} and {other.shift}"
            )
        values = dict(self.values)
        for inputs, output in other.values.items():
            values[inputs] = values.get(inputs, 0) ^ output
        return Cochain.from_toggles(self.m, self.shift, values)

    def support(self) -> Iterator[tuple[Tensor, int]]:
        """Pairs (input tensor, output basis index) with coefficient one."""
        for inputs, output in self.values.items():
            for index in iter_bits(output):
                yield inputs, index

    def matrix(self, inputs: Sequence[Tensor], dim: int) -> F2Matrix:
        """The matrix from the given input tensors to the basis of A."""
        return F2Matrix.from_columns(dim, [self(i) for i in inputs])


@dataclass(frozen=True)
class Functional:
    """A linear functional on A^{⊗arity}, stored as its support."""

    arity: int
    support: frozenset[Tensor] = frozenset()

    def __call__(self, tensor: Tensor) -> int:
        return 1 if tensor in self.support else 0

    def __add__(self, other: Functional) -> Functional:
        return Functional(self.arity, self.support ^ other.support)

    def __bool__(self) -> bool:
        return bool(self.support)

    def pair(self, chain: Chain) -> int:
        return len(self.support & chain.terms) & 1


@dataclass(frozen=True)
class Chain:
    """A Hochschild chain in CH_n(A, A) = A^{⊗(n+1)}, as a sum of basis tensors."""

    n: int
    terms: frozenset[Tensor] = frozenset()

    def __add__(self, other: Chain) -> Chain:
        return Chain(self.n, self.terms ^ other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)
