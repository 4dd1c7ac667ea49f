"""Degreewise dimensions (truncated Poincaré series) and their products."""

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class GradedDims:
    """Dimensions in degrees 0..cap."""

    dims: Tuple[int, ...]

    def __post_init__(self):
        if not self.dims:
            raise ValueError("GradedDims needs at least degree 0")
        if any(d < 0 for d in self.dims):
            raise ValueError(f"Negative dimension in {self.dims}")

    @property
    def cap(self) -> int:
        return len(self.dims) - 1

    def __getitem__(self, degree: int) -> int:
        if degree < 0 or degree > self.cap:
            raise IndexError(f"Degree {degree} outside 0..{self.cap}")
        return self.dims[degree]

    @classmethod
    def from_function(cls, cap: int, count: Callable[[int], int]) -> "GradedDims":
        return cls(tuple(count(n) for n in range(cap + 1)))

    @classmethod
    def unit(cls, cap: int) -> "GradedDims":
        return cls((1,) + (0,) * cap)

    def truncate(self, cap: int) -> "GradedDims":
        if cap > self.cap:
            raise ValueError(f"Cannot extend dimensions known to {self.cap} up to {cap}")
        return GradedDims(self.dims[: cap + 1])

    def first_difference(self, other: "GradedDims") -> Optional[int]:
        """Lowest degree where the two disagree, compared up to the smaller cap."""
        for degree in range(min(self.cap, other.cap) + 1):
            if self.dims[degree] != other.dims[degree]:
                return degree
        return None

    def agrees_with(self, other: "GradedDims") -> bool:
        return self.first_difference(other) is None

    def __str__(self) -> str:
        return " ".join(str(d) for d in self.dims)


def generator_series(degree: int, height: Optional[int], cap: int) -> GradedDims:
    """Series of P[g] (height None) or P[g]/(g^height) for a generator of the given degree."""
    dims = [0] * (cap + 1)
    power = 0
    while power * degree <= cap and (height is None or power < height):
        dims[power * degree] += 1
        power += 1
    return GradedDims(tuple(dims))


def series_product(left: GradedDims, right: GradedDims, cap: Optional[int] = None) -> GradedDims:
    if cap is None:
        cap = min(left.cap, right.cap)
    dims = [0] * (cap + 1)
    for i in range(cap + 1):
        if left.dims[i] == 0:
            continue
        for j in range(cap + 1 - i):
            dims[i + j] += left.dims[i] * right.dims[j]
    return GradedDims(tuple(dims))


def tensor_series(factors: Iterable[GradedDims], cap: int) -> GradedDims:
    result = GradedDims.unit(cap)
    for factor in factors:
        result = series_product(result, factor, cap)
    return result


def free_series(generators: Sequence[Tuple[int, Optional[int]]], cap: int) -> GradedDims:
    """Series of a tensor product of truncated polynomial algebras on (degree, height) pairs."""
    return tensor_series((generator_series(d, h, cap) for d, h in generators), cap)


def exponent_vectors(
    degrees: Sequence[int], heights: Sequence[Optional[int]], n: int
) -> List[Tuple[int, ...]]:
    """Exponent vectors of weighted degree n with e_i < heights[i], in lexicographic order."""
    found: List[Tuple[int, ...]] = []
    prefix: List[int] = []

    def extend(k: int, remaining: int) -> None:
        if k == len(degrees):
            if remaining == 0:
                found.append(tuple(prefix))
            return
        exponent = 0
        while exponent * degrees[k] <= remaining and (heights[k] is None or exponent < heights[k]):
            prefix.append(exponent)
            extend(k + 1, remaining - exponent * degrees[k])
            prefix.pop()
            exponent += 1

    if n >= 0:
        extend(0, n)
    return sorted(found)
