"""Exact linear algebra over GF(2) with matrix rows packed into Python ints."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import CompositionNotZero, DimensionMismatch


def iter_bits(value: int) -> Iterator[int]:
    """Yield the positions of the set bits of value, lowest first."""
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


@dataclass(frozen=True)
class GF2Matrix:
    """Matrix over GF(2). Bit j of rows[i] is the entry (i, j).

    A matrix stands for a linear map from a space of dimension n_cols to a space
    of dimension n_rows; column j is the image of the j-th basis vector.
    """

    n_rows: int
    n_cols: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError(f"Negative matrix shape {self.n_rows}x{self.n_cols}")
        if len(self.rows) != self.n_rows:
            raise ValueError(f"Expected {self.n_rows} rows, got {len(self.rows)}")
        outside = ~((1 << self.n_cols) - 1)
        if any(row < 0 or row & outside for row in self.rows):
            raise ValueError("Row has entries beyond the last column")

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "GF2Matrix":
        return cls(n_rows, n_cols, (0,) * n_rows)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], n_cols: Optional[int] = None) -> "GF2Matrix":
        if n_cols is None:
            n_cols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != n_cols:
                raise ValueError("Ragged matrix rows")
            packed = 0
            for j, bit in enumerate(row):
                if bit not in (0, 1):
                    raise ValueError(f"Entry {bit!r} is not a bit")
                if bit:
                    packed |= 1 << j
            rows.append(packed)
        return cls(len(rows), n_cols, tuple(rows))

    @classmethod
    def from_columns(cls, n_rows: int, columns: Sequence[int]) -> "GF2Matrix":
        rows = [0] * n_rows
        for j, column in enumerate(columns):
            for i in iter_bits(column):
                if i >= n_rows:
                    raise ValueError(f"Column {j} has an entry beyond row {n_rows - 1}")
                rows[i] |= 1 << j
        return cls(n_rows, len(columns), tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def columns(self) -> List[int]:
        cols = [0] * self.n_cols
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                cols[j] |= 1 << i
        return cols

    def apply(self, vector: int) -> int:
        """Image of a column vector given as a bitmask over the columns."""
        image = 0
        for i, row in enumerate(self.rows):
            if bin(row & vector).count("1") & 1:
                image |= 1 << i
        return image

    def compose(self, other: "GF2Matrix") -> "GF2Matrix":
        """The matrix of self after other."""
        if self.n_cols != other.n_rows:
            raise DimensionMismatch(
                f"Cannot compose {self.n_rows}x{self.n_cols} after {other.n_rows}x{other.n_cols}"
            )
        rows = []
        for row in self.rows:
            acc = 0
            for j in iter_bits(row):
                acc ^= other.rows[j]
            rows.append(acc)
        return GF2Matrix(self.n_rows, other.n_cols, tuple(rows))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def to_lists(self) -> List[List[int]]:
        return [[self.entry(i, j) for j in range(self.n_cols)] for i in range(self.n_rows)]


def _xor_basis(vectors: Sequence[int]) -> Dict[int, int]:
    basis: Dict[int, int] = {}
    for vec in vectors:
        while vec:
            low = vec & -vec
            if low in basis:
                vec ^= basis[low]
            else:
                basis[low] = vec
                break
    return basis


def rank(m: GF2Matrix) -> int:
    """Row rank over GF(2)."""
    return len(_xor_basis(m.rows))


def _reduced_echelon(m: GF2Matrix) -> Dict[int, int]:
    # pivot column -> row; every row is zero in every other pivot column
    pivots: Dict[int, int] = {}
    for row in m.rows:
        for col, prow in pivots.items():
            if (row >> col) & 1:
                row ^= prow
        if not row:
            continue
        col = (row & -row).bit_length() - 1
        for other in pivots:
            if (pivots[other] >> col) & 1:
                pivots[other] ^= row
        pivots[col] = row
    return pivots


def kernel_basis(m: GF2Matrix) -> List[int]:
    """Basis of the null space; each vector is a bitmask over the columns."""
    pivots = _reduced_echelon(m)
    basis = []
    for free in range(m.n_cols):
        if free in pivots:
            continue
        vec = 1 << free
        for col, prow in pivots.items():
            if (prow >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def solve(m: GF2Matrix, target: int) -> Optional[int]:
    """Some x with m.apply(x) == target, or None when target is outside the image."""
    basis: Dict[int, Tuple[int, int]] = {}
    for j, column in enumerate(m.columns()):
        combo = 1 << j
        while column:
            low = column & -column
            if low not in basis:
                basis[low] = (column, combo)
                break
            bcol, bcombo = basis[low]
            column ^= bcol
            combo ^= bcombo
    solution = 0
    while target:
        low = target & -target
        if low not in basis:
            return None
        bcol, bcombo = basis[low]
        target ^= bcol
        solution ^= bcombo
    return solution


def homology_dim(d_out: GF2Matrix, d_in: GF2Matrix) -> int:
    """dim ker(d_out) - rank(d_in) at the space between d_in and d_out."""
    if d_out.n_cols != d_in.n_rows:
        raise DimensionMismatch(
            f"Differentials do not meet: d_out has {d_out.n_cols} columns, d_in has {d_in.n_rows} rows"
        )
    if not d_out.compose(d_in).is_zero():
        raise CompositionNotZero("d_out after d_in is not zero")
    middle = d_in.n_rows
    result = middle - rank(d_out) - rank(d_in)
    logging.debug(f"Homology of a {middle}-dimensional term: {result}")
    return result
