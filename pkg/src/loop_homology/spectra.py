"""Homology of derivations on presented algebras and the Bockstein page runner."""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence

from .algebra import basis_in_degree, basis_index, multiply, poincare, word_normal_form
from .errors import DifferentialNotSquareZero, RelationNotPreserved, StageMismatch
from .gf2 import GF2Matrix, homology_dim
from .graded import GradedDims
from .model import ZERO, BSSSchedule, DerivationSpec, Element, Monomial, Presentation, SteenrodSpec


def derivation_from_steenrod(spec: SteenrodSpec, k: int) -> DerivationSpec:
    """The differential given on generators by Sq^k_*; only k = 1 lowers degree by one."""
    return DerivationSpec({g: value for (square, g), value in spec.values.items() if square == k})


def _differentiate_monomial(pres: Presentation, d: DerivationSpec, monomial: Monomial) -> Element:
    cache = d.cache("monomial")
    if monomial not in cache:
        first = next((k for k, e in enumerate(monomial) if e), None)
        if first is None:
            cache[monomial] = ZERO
        else:
            rest = list(monomial)
            rest[first] -= 1
            rest_element = frozenset({tuple(rest)})
            # d(g m') = d(g) m' + g d(m')
            cache[monomial] = multiply(pres, d.values.get(first, ZERO), rest_element) ^ multiply(
                pres, frozenset({pres.generator(first)}), _differentiate_monomial(pres, d, tuple(rest))
            )
    return cache[monomial]


def differentiate(pres: Presentation, d: DerivationSpec, e: Element) -> Element:
    result: set = set()
    for monomial in e:
        result ^= _differentiate_monomial(pres, d, monomial)
    return frozenset(result)


def differentiate_word(pres: Presentation, d: DerivationSpec, letters: Sequence[int]) -> Element:
    """Leibniz rule applied letter by letter to an unreduced word."""
    result: set = set()
    for position, letter in enumerate(letters):
        head = word_normal_form(pres, letters[:position])
        tail = word_normal_form(pres, letters[position + 1:])
        result ^= multiply(pres, multiply(pres, head, d.values.get(letter, ZERO)), tail)
    return frozenset(result)


def validate_derivation(pres: Presentation, d: DerivationSpec, cap: int) -> None:
    """d squares to zero on generators and respects every relation of degree <= cap."""
    gens = pres.generators
    for i, gen in enumerate(gens):
        if gen.degree > cap:
            continue
        twice = differentiate(pres, d, d.values.get(i, ZERO))
        if twice:
            raise DifferentialNotSquareZero(
                f"d(d({gen.name})) = {pres.format(twice)} in {pres.name}", gen.degree
            )
    for i in range(pres.size):
        for j in range(i + 1, pres.size):
            degree = gens[i].degree + gens[j].degree
            if degree > cap:
                continue
            left = differentiate_word(pres, d, (j, i)) ^ differentiate_word(pres, d, (i, j))
            right = differentiate(pres, d, pres.commutator(i, j))
            if left != right:
                raise RelationNotPreserved(
                    f"d does not respect [{gens[i].name},{gens[j].name}] in {pres.name}: "
                    f"{pres.format(left)} against {pres.format(right)}",
                    degree,
                )
    for i, gen in enumerate(gens):
        if gen.height is None or gen.height * gen.degree > cap:
            continue
        power = differentiate_word(pres, d, (i,) * gen.height)
        if power:
            raise RelationNotPreserved(
                f"d({gen.name}^{gen.height}) = {pres.format(power)} in {pres.name}", gen.height * gen.degree
            )


def derivation_matrix(pres: Presentation, d: DerivationSpec, n: int) -> GF2Matrix:
    """Matrix of d from degree n to degree n - 1 in the PBW bases."""
    source = basis_in_degree(pres, n)
    target = basis_index(pres, n - 1)
    columns = []
    for monomial in source:
        column = 0
        for image in _differentiate_monomial(pres, d, monomial):
            column |= 1 << target[image]
        columns.append(column)
    return GF2Matrix.from_columns(len(target), columns)


def homology_of_derivation(pres: Presentation, d: DerivationSpec, cap: int) -> GradedDims:
    """Degreewise homology of (pres, d) through cap."""
    validate_derivation(pres, d, cap + 1)
    dims = []
    d_out = derivation_matrix(pres, d, 0)
    for n in range(cap + 1):
        d_in = derivation_matrix(pres, d, n + 1)
        dims.append(homology_dim(d_out, d_in))
        d_out = d_in
    logging.debug(f"Homology of {pres.name} through {cap}: {dims}")
    return GradedDims(tuple(dims))


@dataclass
class PageReport:
    label: str
    homology: GradedDims


@dataclass
class BSSResult:
    pages: List[PageReport] = field(default_factory=list)
    einf: GradedDims = field(default_factory=lambda: GradedDims.unit(0))

    @property
    def einf_is_unit(self) -> bool:
        return self.einf.agrees_with(GradedDims.unit(self.einf.cap))


def run_bss(schedule: BSSSchedule, cap: int) -> BSSResult:
    """Homology of each page, checked against the Poincare dims of the page after it."""
    result = BSSResult()
    stages = schedule.stages
    for position, stage in enumerate(stages):
        homology = homology_of_derivation(stage.presentation, stage.derivation, cap)
        logging.info(f"BSS page {stage.label}: homology {homology}")
        result.pages.append(PageReport(stage.label, homology))
        if position + 1 < len(stages):
            following = poincare(stages[position + 1].presentation, cap)
            degree = homology.first_difference(following)
            if degree is not None:
                raise StageMismatch(stage.label, degree, following[degree], homology[degree])
        result.einf = homology
    return result
