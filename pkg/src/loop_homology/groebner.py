"""Degree-truncated Groebner bases for graded commutative rings over GF(2).

Monomials are exponent vectors over the ring's variables in listed order. The
monomial order is graded lexicographic: weighted degree first, then the exponent
vector compared from the first variable on.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CapExceeded, InhomogeneousRelation
from .graded import GradedDims, exponent_vectors
from .model import ZERO, CommutativeRing, Element, Monomial


def monomial_key(ring: CommutativeRing, monomial: Monomial) -> Tuple[int, Monomial]:
    return ring.degree(monomial), monomial


def leading_monomial(ring: CommutativeRing, poly: Element) -> Monomial:
    return max(poly, key=lambda m: monomial_key(ring, m))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def shift(poly: Element, monomial: Monomial) -> Element:
    return frozenset(tuple(x + y for x, y in zip(m, monomial)) for m in poly)


def poly_multiply(left: Element, right: Element) -> Element:
    result: set = set()
    for u in left:
        for v in right:
            result ^= {tuple(x + y for x, y in zip(u, v))}
    return frozenset(result)


def power_relation(ring: CommutativeRing, i: int, height: int) -> Element:
    return frozenset({tuple(height if k == i else 0 for k in range(len(ring.variables)))})


def defining_relations(ring: CommutativeRing) -> List[Element]:
    """Declared relations plus v^h for every variable of finite height."""
    relations = [rel for rel in ring.relations if rel]
    for i, var in enumerate(ring.variables):
        if var.height is not None:
            relations.append(power_relation(ring, i, var.height))
    for rel in relations:
        degrees = {ring.degree(m) for m in rel}
        if len(degrees) > 1:
            raise InhomogeneousRelation(
                f"Relation {ring.format(rel)} of {ring.name} mixes degrees {sorted(degrees)}"
            )
    return relations


def reduce_polynomial(ring: CommutativeRing, poly: Element, basis: Sequence[Element]) -> Element:
    """Full reduction: no monomial of the result is divisible by a leading monomial of the basis."""
    leads = [(leading_monomial(ring, g), g) for g in basis]
    remainder: set = set()
    work = set(poly)
    while work:
        top = max(work, key=lambda m: monomial_key(ring, m))
        for lead, g in leads:
            if divides(lead, top):
                work ^= shift(g, monomial_quotient(top, lead))
                break
        else:
            work.discard(top)
            remainder.add(top)
    return frozenset(remainder)


def groebner_basis(ring: CommutativeRing, cap: int) -> List[Element]:
    """Buchberger's algorithm, discarding S-polynomials of degree above cap.

    The result is a Groebner basis of the ideal in every degree <= cap.
    """
    key = f"groebner:{cap}"
    if key in ring.memo:
        return ring.memo[key]
    basis: List[Element] = []
    pairs: List[Tuple[int, int]] = []

    def add_to_basis(poly: Element) -> None:
        basis.append(poly)
        new = len(basis) - 1
        pairs.extend((old, new) for old in range(new))

    for rel in sorted(defining_relations(ring), key=lambda r: monomial_key(ring, leading_monomial(ring, r))):
        if ring.degree(next(iter(rel))) > cap:
            continue
        reduced = reduce_polynomial(ring, rel, basis)
        if reduced:
            add_to_basis(reduced)

    while pairs:
        pairs.sort(key=lambda p: ring.degree(
            monomial_lcm(leading_monomial(ring, basis[p[0]]), leading_monomial(ring, basis[p[1]]))
        ))
        i, j = pairs.pop(0)
        lead_i = leading_monomial(ring, basis[i])
        lead_j = leading_monomial(ring, basis[j])
        lcm = monomial_lcm(lead_i, lead_j)
        if ring.degree(lcm) > cap:
            continue
        # coprime leading monomials reduce to zero
        if all(x == 0 or y == 0 for x, y in zip(lead_i, lead_j)):
            continue
        s_poly = shift(basis[i], monomial_quotient(lcm, lead_i)) ^ shift(basis[j], monomial_quotient(lcm, lead_j))
        reduced = reduce_polynomial(ring, s_poly, basis)
        if reduced:
            logging.debug(f"{ring.name}: new basis element in degree {ring.degree(lcm)}")
            add_to_basis(reduced)

    logging.debug(f"{ring.name}: Groebner basis of {len(basis)} elements through degree {cap}")
    ring.memo[key] = basis
    return basis


@dataclass
class QuotientRing:
    """The quotient of a commutative ring by its relations, known through degree cap."""

    ring: CommutativeRing
    cap: int
    basis: List[Element] = field(init=False, repr=False)
    leading: List[Monomial] = field(init=False, repr=False)
    _standard: Dict[int, List[Monomial]] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.basis = groebner_basis(self.ring, self.cap)
        self.leading = [leading_monomial(self.ring, g) for g in self.basis]

    def _check(self, n: int) -> None:
        if n > self.cap:
            raise CapExceeded(f"Degree {n} is above the truncation degree {self.cap} of {self.ring.name}")

    def standard_monomials(self, n: int) -> List[Monomial]:
        self._check(n)
        if n not in self._standard:
            degrees = [v.degree for v in self.ring.variables]
            candidates = exponent_vectors(degrees, [None] * len(degrees), n)
            self._standard[n] = [
                m for m in candidates if not any(divides(lead, m) for lead in self.leading)
            ]
        return self._standard[n]

    def reduce(self, poly: Element) -> Element:
        for m in poly:
            self._check(self.ring.degree(m))
        return reduce_polynomial(self.ring, poly, self.basis)

    def multiply(self, left: Element, right: Element) -> Element:
        return self.reduce(poly_multiply(left, right))

    def dims(self, cap: Optional[int] = None) -> GradedDims:
        cap = self.cap if cap is None else cap
        return GradedDims.from_function(cap, lambda n: len(self.standard_monomials(n)))

    def format(self, poly: Element) -> str:
        return self.ring.format(poly)


def quotient_ring(ring: CommutativeRing, cap: int) -> QuotientRing:
    key = f"quotient:{cap}"
    if key not in ring.memo:
        ring.memo[key] = QuotientRing(ring, cap)
    return ring.memo[key]


def commutative_quotient_basis(ring: CommutativeRing, n: int, cap: Optional[int] = None) -> List[Monomial]:
    """Standard monomials of degree n in the quotient truncated at cap (default n)."""
    return quotient_ring(ring, n if cap is None else cap).standard_monomials(n)


def is_zero_in_quotient(ring: CommutativeRing, poly: Element, cap: int) -> bool:
    return quotient_ring(ring, cap).reduce(poly) == ZERO
