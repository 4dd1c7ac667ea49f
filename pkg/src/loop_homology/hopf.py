"""Coproducts on presented algebras, bialgebra checks, primitives and degreewise duals."""

import logging
from typing import Dict, FrozenSet, List, Tuple

from .algebra import basis_in_degree, multiply_monomials
from .errors import CapExceeded
from .gf2 import GF2Matrix, iter_bits, kernel_basis
from .groebner import quotient_ring
from .model import (
    ZERO,
    CoalgebraData,
    CommutativeRing,
    CoproductSpec,
    Element,
    Monomial,
    Presentation,
    Tensor,
    VerificationReport,
    format_monomial,
)

Triple = FrozenSet[Tuple[Monomial, Monomial, Monomial]]


def format_tensor_in(pres: Presentation, tensor: Tensor) -> str:
    if not tensor:
        return "0"
    return " + ".join(
        f"{pres.format_monomial(a)} (x) {pres.format_monomial(b)}" for a, b in sorted(tensor, reverse=True)
    )


def tensor_multiply(pres: Presentation, left: Tensor, right: Tensor) -> Tensor:
    """(a (x) b)(c (x) d) = ac (x) bd in the tensor square of the algebra."""
    result: set = set()
    for a, b in left:
        for c, d in right:
            first = multiply_monomials(pres, a, c)
            if not first:
                continue
            second = multiply_monomials(pres, b, d)
            for x in first:
                for y in second:
                    result ^= {(x, y)}
    return frozenset(result)


def generator_coproduct(pres: Presentation, cop: CoproductSpec, i: int) -> Tensor:
    gen = pres.generator(i)
    unit = pres.unit()
    return frozenset({(gen, unit), (unit, gen)}) ^ cop.reduced.get(i, frozenset())


def coproduct_monomial(pres: Presentation, cop: CoproductSpec, monomial: Monomial) -> Tensor:
    cache = cop.cache("monomial")
    if monomial not in cache:
        first = next((k for k, e in enumerate(monomial) if e), None)
        if first is None:
            cache[monomial] = frozenset({(monomial, monomial)})
        else:
            rest = list(monomial)
            rest[first] -= 1
            cache[monomial] = tensor_multiply(
                pres, generator_coproduct(pres, cop, first), coproduct_monomial(pres, cop, tuple(rest))
            )
    return cache[monomial]


def coproduct(e: Element, pres: Presentation, cop: CoproductSpec, cap: int) -> Tensor:
    """Full coproduct of e, extended multiplicatively from the generators."""
    result: set = set()
    for monomial in e:
        if pres.degree(monomial) > cap:
            raise CapExceeded(f"{pres.format_monomial(monomial)} lies above degree {cap}")
        result ^= coproduct_monomial(pres, cop, monomial)
    return frozenset(result)


def reduced_coproduct(e: Element, pres: Presentation, cop: CoproductSpec) -> Tensor:
    unit = pres.unit()
    full: set = set()
    for monomial in e:
        full ^= coproduct_monomial(pres, cop, monomial)
    return frozenset((a, b) for a, b in full if a != unit and b != unit)


def coproduct_of_word(pres: Presentation, cop: CoproductSpec, letters: Tuple[int, ...]) -> Tensor:
    result = frozenset({(pres.unit(), pres.unit())})
    for letter in letters:
        result = tensor_multiply(pres, result, generator_coproduct(pres, cop, letter))
    return result


def _apply_left(pres: Presentation, cop: CoproductSpec, tensor: Tensor) -> Triple:
    result: set = set()
    for a, b in tensor:
        for x, y in coproduct_monomial(pres, cop, a):
            result ^= {(x, y, b)}
    return frozenset(result)


def _apply_right(pres: Presentation, cop: CoproductSpec, tensor: Tensor) -> Triple:
    result: set = set()
    for a, b in tensor:
        for x, y in coproduct_monomial(pres, cop, b):
            result ^= {(a, x, y)}
    return frozenset(result)


def verify_bialgebra(pres: Presentation, cop: CoproductSpec, cap: int) -> VerificationReport:
    """Relations respected by the coproduct, coassociativity and counit, through degree cap."""
    report = VerificationReport("bialgebra", cap)
    gens = pres.generators
    for i in range(pres.size):
        for j in range(i + 1, pres.size):
            degree = gens[i].degree + gens[j].degree
            if degree > cap:
                continue
            di = generator_coproduct(pres, cop, i)
            dj = generator_coproduct(pres, cop, j)
            left = tensor_multiply(pres, dj, di) ^ tensor_multiply(pres, di, dj)
            right = coproduct(pres.commutator(i, j), pres, cop, cap)
            if left != right:
                report.fail(degree, f"[{gens[i].name},{gens[j].name}]",
                            f"coproducts differ by {format_tensor_in(pres, left ^ right)}")
    for i, gen in enumerate(gens):
        if gen.height is None or gen.height * gen.degree > cap:
            continue
        power = coproduct_of_word(pres, cop, (i,) * gen.height)
        if power:
            report.fail(gen.height * gen.degree, f"{gen.name}^{gen.height}",
                        f"coproduct of the power is {format_tensor_in(pres, power)}")

    unit = pres.unit()
    for n in range(1, cap + 1):
        for monomial in basis_in_degree(pres, n):
            delta = coproduct_monomial(pres, cop, monomial)
            if _apply_left(pres, cop, delta) != _apply_right(pres, cop, delta):
                report.fail(n, pres.format_monomial(monomial), "not coassociative")
            left_counit: set = set()
            right_counit: set = set()
            for a, b in delta:
                if a == unit:
                    left_counit ^= {b}
                if b == unit:
                    right_counit ^= {a}
            if left_counit != {monomial} or right_counit != {monomial}:
                report.fail(n, pres.format_monomial(monomial), "counit fails")
    report.failures.sort(key=lambda f: f.degree)
    logging.debug(f"Bialgebra check of {pres.name} through {cap}: {len(report.failures)} failures")
    return report


def primitives_in_degree(pres: Presentation, cop: CoproductSpec, n: int) -> List[Element]:
    """Basis of the kernel of the reduced coproduct on degree n."""
    basis = basis_in_degree(pres, n)
    rows: Dict[Tuple[Monomial, Monomial], int] = {}
    columns = []
    for monomial in basis:
        column = 0
        for pair in reduced_coproduct(frozenset({monomial}), pres, cop):
            column |= 1 << rows.setdefault(pair, len(rows))
        columns.append(column)
    matrix = GF2Matrix.from_columns(len(rows), columns)
    return [frozenset(basis[k] for k in iter_bits(vec)) for vec in kernel_basis(matrix)]


def dual_product(pres: Presentation, cop: CoproductSpec, u: Monomial, v: Monomial) -> Element:
    """Product of dual basis classes: the z with u (x) v in Delta(z), as an Element of the z."""
    n = pres.degree(u) + pres.degree(v)
    return frozenset(z for z in basis_in_degree(pres, n) if (u, v) in coproduct_monomial(pres, cop, z))


def coalgebra_from_presentation(pres: Presentation, cop: CoproductSpec, cap: int) -> CoalgebraData:
    """The coalgebra underlying a presented Hopf algebra, on its PBW basis through cap."""
    monomials: List[Monomial] = []
    for n in range(cap + 1):
        monomials.extend(basis_in_degree(pres, n))
    position = {m: k for k, m in enumerate(monomials)}
    reduced = {
        k: frozenset((position[a], position[b]) for a, b in reduced_coproduct(frozenset({m}), pres, cop))
        for k, m in enumerate(monomials)
    }
    return CoalgebraData(
        name=pres.name,
        labels=[pres.format_monomial(m) for m in monomials],
        degrees=[pres.degree(m) for m in monomials],
        reduced=reduced,
        cap=cap,
    )


def dual_structure_constants(ring: CommutativeRing, cap: int) -> CoalgebraData:
    """Coalgebra dual to the standard-monomial basis of the quotient ring through cap.

    The coefficient of x (x) y in the reduced coproduct of the dual of z is the
    coefficient of z in the product xy.
    """
    quotient = quotient_ring(ring, cap)
    monomials: List[Monomial] = []
    for n in range(cap + 1):
        monomials.extend(quotient.standard_monomials(n))
    position = {m: k for k, m in enumerate(monomials)}
    reduced: Dict[int, set] = {k: set() for k in range(len(monomials))}
    for x in monomials[1:]:
        for y in monomials[1:]:
            if ring.degree(x) + ring.degree(y) > cap:
                continue
            for z in quotient.multiply(frozenset({x}), frozenset({y})):
                reduced[position[z]] ^= {(position[x], position[y])}
    coalg = CoalgebraData(
        name=ring.name,
        labels=[format_monomial(ring.names, m) for m in monomials],
        degrees=[ring.degree(m) for m in monomials],
        reduced={k: frozenset(v) for k, v in reduced.items()},
        cap=cap,
    )
    logging.debug(f"Dual coalgebra of {ring.name}: {len(monomials)} basis elements through {cap}")
    return coalg


def check_coassociativity(coalg: CoalgebraData) -> VerificationReport:
    """(reduced (x) id) reduced = (id (x) reduced) reduced on every basis element."""
    report = VerificationReport("coassociativity", coalg.cap)
    for z, pairs in coalg.reduced.items():
        left: set = set()
        right: set = set()
        for a, b in pairs:
            for x, y in coalg.reduced.get(a, ()):
                left ^= {(x, y, b)}
            for x, y in coalg.reduced.get(b, ()):
                right ^= {(a, x, y)}
        if left != right:
            report.fail(coalg.degrees[z], coalg.labels[z])
    report.failures.sort(key=lambda f: f.degree)
    return report


def is_primitive(e: Element, pres: Presentation, cop: CoproductSpec) -> bool:
    return reduced_coproduct(e, pres, cop) == ZERO
