"""
Exact linear algebra over the two-element field.

Vectors and matrix rows are bit-packed into Python integers (bit ``j`` is
coordinate ``j``), so row operations are single word-level XORs regardless
of the dimension. Every basis returned here is canonical: reduced echelon
form with pivots at the lowest set bit, listed in ascending pivot order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .exceptions import SubquotientError


def lowest_bit(value: int) -> int:
    """Index of the lowest set bit of a nonzero integer."""
    return (value & -value).bit_length() - 1


def iter_bits(value: int) -> Iterator[int]:
    """Indices of the set bits of ``value``, ascending."""
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


def parity(value: int) -> int:
    return value.bit_count() & 1


@dataclass(frozen=True)
class F2Vector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.bits >> self.length:
            raise ValueError(
                f"bits {self.bits:#x} exceed vector length {self.length}"
            )

    @classmethod
    def from_list(cls, values: Sequence[int]) -> F2Vector:
        bits = 0
        for index, value in enumerate(values):
            if value & 1:
                bits |= 1 << index
        return cls(len(values), bits)

    @classmethod
    def unit(cls, length: int, index: int) -> F2Vector:
        return cls(length, 1 << index)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def __getitem__(self, index: int) -> int:
        return (self.bits >> index) & 1

    def __add__(self, other: F2Vector) -> F2Vector:
        if other.length != self.length:
            raise ValueError("cannot add vectors of different lengths")
        return F2Vector(self.length, self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return list(iter_bits(self.bits))


@dataclass(frozen=True)
class F2Matrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        for row in self.rows:
            if row >> self.ncols:
                raise ValueError(f"row {row:#x} exceeds {self.ncols} columns")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> F2Matrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, size: int) -> F2Matrix:
        return cls(size, size, tuple(1 << i for i in range(size)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> F2Matrix:
        ncols = len(entries[0]) if entries else 0
        rows = tuple(F2Vector.from_list(row).bits for row in entries)
        return cls(len(entries), ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> F2Matrix:
        """Build a matrix from bit-packed columns (bit ``i`` is row ``i``)."""
        rows = [0] * nrows
        for j, column in enumerate(columns):
            for i in iter_bits(column):
                rows[i] |= 1 << j
        return cls(nrows, len(columns), tuple(rows))

    def columns(self) -> list[int]:
        cols = [0] * self.ncols
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                cols[j] |= 1 << i
        return cols

    def transpose(self) -> F2Matrix:
        return F2Matrix(self.ncols, self.nrows, tuple(self.columns()))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [F2Vector(self.ncols, row).to_list() for row in self.rows]

    def apply(self, x: F2Vector) -> F2Vector:
        if x.length != self.ncols:
            raise ValueError(f"vector of length {x.length} for {self.ncols} columns")
        bits = 0
        for i, row in enumerate(self.rows):
            if parity(row & x.bits):
                bits |= 1 << i
        return F2Vector(self.nrows, bits)


class Echelon:
    """
    Incrementally maintained reduced row-echelon basis of a subspace.

    Each stored row has its pivot at its lowest set bit and no other row has
    that bit set, so reducing a vector yields the canonical coset
    representative modulo the span.
    """

    def __init__(self, vectors: Iterable[int] = ()):
        self.rows: dict[int, int] = {}
        self.pivot_mask = 0
        for vector in vectors:
            self.add(vector)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vector: int) -> int:
        hits = vector & self.pivot_mask
        while hits:
            pivot = lowest_bit(hits)
            vector ^= self.rows[pivot]
            hits = vector & self.pivot_mask
        return vector

    def add(self, vector: int) -> int:
        """Insert a vector; returns its reduced remainder (0 if dependent)."""
        remainder = self.reduce(vector)
        if not remainder:
            return 0
        pivot = lowest_bit(remainder)
        bit = 1 << pivot
        for other, row in self.rows.items():
            if row & bit:
                self.rows[other] = row ^ remainder
        self.rows[pivot] = remainder
        self.pivot_mask |= bit
        return remainder

    def contains(self, vector: int) -> bool:
        return self.reduce(vector) == 0

    def basis(self) -> list[int]:
        return [self.rows[p] for p in sorted(self.rows)]


def rank(m: F2Matrix) -> int:
    return len(Echelon(m.rows))


def kernel_basis(m: F2Matrix) -> list[F2Vector]:
    """Null space basis, one vector per pivot-free column in ascending order."""
    echelon = Echelon(m.rows)
    free_columns = [j for j in range(m.ncols) if not (echelon.pivot_mask >> j) & 1]
    basis = []
    for free in free_columns:
        bits = 1 << free
        for pivot, row in echelon.rows.items():
            if (row >> free) & 1:
                bits |= 1 << pivot
        basis.append(F2Vector(m.ncols, bits))
    return basis


def image_basis(m: F2Matrix) -> list[F2Vector]:
    """Reduced echelon basis of the column space."""
    echelon = Echelon(m.columns())
    return [F2Vector(m.nrows, row) for row in echelon.basis()]


def subquotient_basis(
    kernel: Sequence[F2Vector], image: Sequence[F2Vector]
) -> list[F2Vector]:
    """
    Coset representatives of span(kernel) / span(image).

    The image echelon is extended greedily by the kernel vectors in order;
    each vector that enlarges the span contributes its reduced remainder.
    """
    if not kernel:
        if any(image):
            raise SubquotientError("nonzero image inside a zero kernel")
        return []
    length = kernel[0].length
    kernel_span = Echelon(v.bits for v in kernel)
    for vector in image:
        if not kernel_span.contains(vector.bits):
            raise SubquotientError(
                f"image vector {vector.support()} is not in the kernel span"
            )
    quotient = Echelon(v.bits for v in image)
    representatives = []
    for vector in kernel:
        remainder = quotient.add(vector.bits)
        if remainder:
            representatives.append(F2Vector(length, remainder))
    return representatives


def solve(m: F2Matrix, b: F2Vector) -> F2Vector | None:
    """
    One solution of ``m x = b`` with all free variables set to zero, or
    ``None`` when the system is inconsistent.
    """
    if b.length != m.nrows:
        raise ValueError(f"right-hand side of length {b.length} for {m.nrows} rows")
    rhs_bit = 1 << m.ncols
    augmented = [
        row | (rhs_bit if (b.bits >> i) & 1 else 0) for i, row in enumerate(m.rows)
    ]
    echelon = Echelon(augmented)
    x = 0
    for pivot, row in echelon.rows.items():
        if pivot == m.ncols:
            return None
        if row & rhs_bit:
            x |= 1 << pivot
    return F2Vector(m.ncols, x)
