"""An explicit free resolution of F_2 over H^*(DI(4)) and the Ext it computes.

The complex is (P[x7]/(x7^4) (x) E[y11, z13]) (x) (P[a6]/(a6^4) (x) Gamma[b10, t24, e26]).
A basis element is the tuple (i, j, k, a, b, t, e): the exponents of x, y, z and
of the hatted a6, then bitmasks over n selecting the divided powers gamma_{2^n} of
b10, t24 and e26. The differential raises internal degree by one.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from .errors import DegreeInhomogeneous, InducedDifferentialNonzero
from .gf2 import GF2Matrix, homology_dim
from .graded import GradedDims
from .model import VerificationReport

Basis = Tuple[int, int, int, int, int, int, int]
Chain = FrozenSet[Basis]

X_HEIGHT = 4
HAT_A_POWERS = 4
WEIGHTS = (7, 11, 13, 6, 10, 24, 26)
DIVIDED = {"b": 4, "t": 5, "e": 6}

FACTORS: Dict[str, Callable[[Basis], bool]] = {
    "xazte": lambda m: m[1] == 0 and m[4] == 0,
    "yb": lambda m: m[0] == 0 and m[2] == 0 and m[3] == 0 and m[5] == 0 and m[6] == 0,
}


def degree(m: Basis) -> int:
    return sum(w * v for w, v in zip(WEIGHTS, m))


def product(u: Basis, v: Basis) -> Optional[Basis]:
    """Product of two basis elements, or None when it vanishes.

    Powers of the hatted a6 multiply like divided powers: a^p a^q is a^(p|q) when the
    binary digits of p and q are disjoint and zero otherwise.
    """
    if u[0] + v[0] >= X_HEIGHT:
        return None
    if u[1] & v[1] or u[2] & v[2] or u[3] & v[3] or u[4] & v[4] or u[5] & v[5] or u[6] & v[6]:
        return None
    return (u[0] + v[0], u[1] | v[1], u[2] | v[2], u[3] | v[3], u[4] | v[4], u[5] | v[5], u[6] | v[6])


def _basis_vector(i=0, j=0, k=0, a=0, b=0, t=0, e=0) -> Basis:
    return (i, j, k, a, b, t, e)


def letter_differential(family: str, n: int, tail: str = "t") -> Basis:
    """d of the letter gamma_{2^n} of a divided family, or of the hatted a6 powers 1 and 2."""
    below = (1 << n) - 1
    if family == "a":
        return _basis_vector(i=1) if n == 0 else _basis_vector(k=1)
    if family == "b":
        return _basis_vector(j=1, b=below)
    if family == "t":
        return _basis_vector(k=1, a=2, **{tail: below})
    if family == "e":
        return _basis_vector(i=3, a=1, e=below)
    raise ValueError(f"Unknown letter family {family!r}")


def _letters(m: Basis) -> List[Tuple[str, int, Basis]]:
    """The hatted letters of m with m divided by each of them."""
    letters = []
    for bit in (0, 1):
        if m[3] >> bit & 1:
            rest = list(m)
            rest[3] ^= 1 << bit
            letters.append(("a", bit, tuple(rest)))
    for family, slot in DIVIDED.items():
        mask = m[slot]
        n = 0
        while mask >> n:
            if mask >> n & 1:
                rest = list(m)
                rest[slot] ^= 1 << n
                letters.append((family, n, tuple(rest)))
            n += 1
    return letters


@dataclass
class Resolution:
    """The complex through internal degree cap + 1 with its differential."""

    cap: int
    tail: str = "t"
    basis: Dict[int, List[Basis]] = field(default_factory=dict, repr=False)
    _index: Dict[int, Dict[Basis, int]] = field(default_factory=dict, repr=False)
    _matrices: Dict[int, GF2Matrix] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._check_degrees()
        for n in range(self.cap + 2):
            self.basis[n] = _enumerate(n)
            self._index[n] = {m: k for k, m in enumerate(self.basis[n])}
        logging.debug(
            f"Resolution through {self.cap + 1}: {sum(len(b) for b in self.basis.values())} basis elements"
        )

    def _check_degrees(self) -> None:
        for family, weight in (("a", 6), ("b", 10), ("t", 24), ("e", 26)):
            n = 0
            while (1 << n) <= max(self.cap, 1) and (family != "a" or n < 2):
                source = weight * (1 << n)
                image = degree(letter_differential(family, n, self.tail))
                if image != source + 1:
                    raise DegreeInhomogeneous(
                        f"d of gamma_{1 << n}({family}) has degree {image}, expected {source + 1}", n
                    )
                n += 1

    def differential(self, m: Basis) -> Chain:
        result: set = set()
        for family, n, rest in _letters(m):
            image = product(letter_differential(family, n, self.tail), rest)
            if image is not None:
                result ^= {image}
        return frozenset(result)

    def matrix(self, n: int) -> GF2Matrix:
        """d from degree n to degree n + 1."""
        if n not in self._matrices:
            source = self.basis.get(n, [])
            target = self._index.get(n + 1, {})
            columns = []
            for m in source:
                column = 0
                for image in self.differential(m):
                    column |= 1 << target[image]
                columns.append(column)
            self._matrices[n] = GF2Matrix.from_columns(len(target), columns)
        return self._matrices[n]

    def restricted_matrix(self, n: int, keep: Callable[[Basis], bool]) -> GF2Matrix:
        source = [m for m in self.basis.get(n, []) if keep(m)]
        target = {m: k for k, m in enumerate(x for x in self.basis.get(n + 1, []) if keep(x))}
        columns = []
        for m in source:
            column = 0
            for image in self.differential(m):
                column |= 1 << target[image]
            columns.append(column)
        return GF2Matrix.from_columns(len(target), columns)


def _enumerate(n: int) -> List[Basis]:
    found = []
    for e in range(n // 26 + 1):
        for t in range((n - 26 * e) // 24 + 1):
            for b in range((n - 26 * e - 24 * t) // 10 + 1):
                for a in range(HAT_A_POWERS):
                    for k in (0, 1):
                        for j in (0, 1):
                            rest = n - 26 * e - 24 * t - 10 * b - 6 * a - 13 * k - 11 * j
                            if rest >= 0 and rest % 7 == 0 and rest // 7 < X_HEIGHT:
                                found.append((rest // 7, j, k, a, b, t, e))
    return sorted(found)


def build_resolution(cap: int, tail: str = "t") -> Resolution:
    """The complex through degree cap + 1; tail names the divided family in d(gamma(t))."""
    return Resolution(cap, tail)


def _homology(resolution: Resolution, cap: int, keep: Optional[Callable[[Basis], bool]] = None) -> GradedDims:
    dims = []
    for n in range(cap + 1):
        if keep is None:
            d_out, d_in = resolution.matrix(n), resolution.matrix(n - 1)
        else:
            d_out, d_in = resolution.restricted_matrix(n, keep), resolution.restricted_matrix(n - 1, keep)
        dims.append(homology_dim(d_out, d_in))
    return GradedDims(tuple(dims))


def verify_resolution(cap: int) -> VerificationReport:
    """d(d) = 0 and homology one-dimensional in degree 0, through cap."""
    report = VerificationReport("resolution", cap)
    resolution = build_resolution(cap)
    for n in range(cap):
        if not resolution.matrix(n + 1).compose(resolution.matrix(n)).is_zero():
            report.fail(n, f"d(d) from degree {n}")
    if not report.passed:
        return report
    homology = _homology(resolution, cap)
    degree_found = homology.first_difference(GradedDims.unit(cap))
    if degree_found is not None:
        report.fail(degree_found, f"homology {homology[degree_found]} in degree {degree_found}")
    return report


def factor_homology(cap: int, factor: str) -> GradedDims:
    """Homology of one of the two tensor factors: 'xazte' or 'yb'."""
    try:
        keep = FACTORS[factor]
    except KeyError:
        raise ValueError(f"Unknown factor {factor!r}; expected one of {sorted(FACTORS)}")
    return _homology(build_resolution(cap), cap, keep)


def _is_divided_part(m: Basis) -> bool:
    return m[0] == 0 and m[1] == 0 and m[2] == 0


def ext_dims(cap: int) -> GradedDims:
    """Dimensions of the divided part, once the induced differential is seen to vanish."""
    resolution = build_resolution(cap)
    dims = []
    for n in range(cap + 1):
        divided = [m for m in resolution.basis[n] if _is_divided_part(m)]
        for m in divided:
            survivors = [image for image in resolution.differential(m) if _is_divided_part(image)]
            if survivors:
                raise InducedDifferentialNonzero(
                    f"d{m} has terms {survivors} outside the augmentation ideal", n
                )
        dims.append(len(divided))
    return GradedDims(tuple(dims))
