"""The mod 2 Steenrod algebra in its admissible basis and its dual action on homology.

Sq^k_* lowers degree by k and is extended to products by the Cartan formula. A
cohomology composite Sq^a Sq^b acts on homology by applying Sq^b_* first and then
Sq^a_*, so an admissible word is applied from its last entry to its first.
"""

import logging
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .algebra import basis_in_degree, multiply
from .errors import CapExceeded
from .hopf import coproduct_monomial, coproduct
from .model import (
    ZERO,
    CommutativeRing,
    CoproductSpec,
    Element,
    Monomial,
    Presentation,
    SteenrodSpec,
    VerificationReport,
)

Actions = Dict[int, Element]


def choose_mod2(n: int, k: int) -> int:
    """Binomial coefficient mod 2 (Lucas): 1 exactly when the bits of k are a subset of those of n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return int(k & ~n == 0)


def is_admissible(word: Sequence[int]) -> bool:
    return all(word[i] >= 2 * word[i + 1] for i in range(len(word) - 1))


@lru_cache(maxsize=None)
def _reduce(word: Tuple[int, ...]) -> FrozenSet[Tuple[int, ...]]:
    word = tuple(i for i in word if i)
    for index in range(len(word) - 1):
        a, b = word[index], word[index + 1]
        if a < 2 * b:
            result: set = set()
            for j in range(a // 2 + 1):
                if choose_mod2(b - j - 1, a - 2 * j):
                    result ^= _reduce(word[:index] + (a + b - j, j) + word[index + 2:])
            return frozenset(result)
    return frozenset({word})


def adem_reduce(word: Sequence[int], cap: int) -> FrozenSet[Tuple[int, ...]]:
    """Admissible expansion of Sq^{i1}...Sq^{ik} via the Adem relations."""
    if sum(word) > cap:
        raise CapExceeded(f"Steenrod word {tuple(word)} has degree {sum(word)} above {cap}")
    return _reduce(tuple(word))


def _generator_actions(spec: SteenrodSpec, pres: Presentation, i: int) -> Actions:
    actions: Actions = {0: frozenset({pres.generator(i)})}
    for (k, g), value in spec.values.items():
        if g == i and value:
            actions[k] = value
    return actions


def _cartan(pres: Presentation, left: Actions, right: Actions) -> Actions:
    result: Dict[int, set] = {}
    for i, x in left.items():
        for j, y in right.items():
            product = multiply(pres, x, y)
            if product:
                result.setdefault(i + j, set()).symmetric_difference_update(product)
    return {k: frozenset(v) for k, v in result.items() if v}


def act_all(pres: Presentation, spec: SteenrodSpec, monomial: Monomial) -> Actions:
    """Every nonzero Sq^k_*(monomial), k >= 0, keyed by k."""
    cache = spec.cache("act")
    if monomial not in cache:
        first = next((k for k, e in enumerate(monomial) if e), None)
        if first is None:
            cache[monomial] = {0: frozenset({monomial})}
        else:
            rest = list(monomial)
            rest[first] -= 1
            cache[monomial] = _cartan(
                pres, _generator_actions(spec, pres, first), act_all(pres, spec, tuple(rest))
            )
    return cache[monomial]


def _act(k: int, e: Element, pres: Presentation, spec: SteenrodSpec) -> Element:
    result: set = set()
    for monomial in e:
        result ^= act_all(pres, spec, monomial).get(k, ZERO)
    return frozenset(result)


def act(k: int, e: Element, pres: Presentation, spec: SteenrodSpec, cap: int) -> Element:
    """Sq^k_*(e) by the homology Cartan formula."""
    for monomial in e:
        if pres.degree(monomial) > cap:
            raise CapExceeded(f"{pres.format_monomial(monomial)} lies above degree {cap}")
    return _act(k, e, pres, spec)


def act_word(word: Sequence[int], e: Element, pres: Presentation, spec: SteenrodSpec) -> Element:
    """Action of the cohomology composite Sq^{w1}...Sq^{wr}: Sq^{wr}_* is applied first."""
    for k in reversed(word):
        e = _act(k, e, pres, spec)
    return e


def _act_sequence(pres: Presentation, spec: SteenrodSpec, letters: Iterable[int]) -> Actions:
    result: Actions = {0: frozenset({pres.unit()})}
    for letter in letters:
        result = _cartan(pres, result, _generator_actions(spec, pres, letter))
    return result


def _act_element(pres: Presentation, spec: SteenrodSpec, e: Element) -> Actions:
    result: Dict[int, set] = {}
    for monomial in e:
        for k, value in act_all(pres, spec, monomial).items():
            result.setdefault(k, set()).symmetric_difference_update(value)
    return {k: frozenset(v) for k, v in result.items() if v}


def _differing(left: Actions, right: Actions) -> List[int]:
    return sorted(k for k in set(left) | set(right) if left.get(k, ZERO) != right.get(k, ZERO))


def verify_steenrod_module(
    pres: Presentation, cop: CoproductSpec, spec: SteenrodSpec, cap: int
) -> VerificationReport:
    """Relations respected, dual Adem relations and coproduct compatibility, through degree cap."""
    report = VerificationReport("steenrod", cap)
    gens = pres.generators
    for i in range(pres.size):
        for j in range(i + 1, pres.size):
            degree = gens[i].degree + gens[j].degree
            if degree > cap:
                continue
            left = _act_sequence(pres, spec, (j, i))
            swapped = _act_sequence(pres, spec, (i, j))
            both = {k: left.get(k, ZERO) ^ swapped.get(k, ZERO) for k in set(left) | set(swapped)}
            both = {k: v for k, v in both.items() if v}
            right = _act_element(pres, spec, pres.commutator(i, j))
            for k in _differing(both, right):
                report.fail(degree, f"[{gens[i].name},{gens[j].name}]",
                            f"Sq{k} gives {pres.format(both.get(k, ZERO))} against {pres.format(right.get(k, ZERO))}")
    for i, gen in enumerate(gens):
        if gen.height is None or gen.height * gen.degree > cap:
            continue
        power = _act_sequence(pres, spec, (i,) * gen.height)
        for k in sorted(power):
            report.fail(gen.height * gen.degree, f"{gen.name}^{gen.height}", f"Sq{k} gives {pres.format(power[k])}")

    for n in range(2, cap + 1):
        pairs = [(a, b) for b in range(1, n + 1) for a in range(1, n + 1 - b) if a < 2 * b]
        for monomial in basis_in_degree(pres, n):
            e = frozenset({monomial})
            for a, b in pairs:
                composite = act_word((a, b), e, pres, spec)
                admissible: set = set()
                for word in adem_reduce((a, b), cap):
                    admissible ^= act_word(word, e, pres, spec)
                if composite != frozenset(admissible):
                    report.fail(n, f"Sq{a}Sq{b} on {pres.format_monomial(monomial)}",
                                f"composite {pres.format(composite)}, admissible form {pres.format(frozenset(admissible))}")

    for n in range(1, cap + 1):
        for monomial in basis_in_degree(pres, n):
            lhs: Dict[int, set] = {}
            for k, value in act_all(pres, spec, monomial).items():
                lhs[k] = set(coproduct(value, pres, cop, cap))
            rhs: Dict[int, set] = {}
            for x, y in coproduct_monomial(pres, cop, monomial):
                for i, u in act_all(pres, spec, x).items():
                    for j, v in act_all(pres, spec, y).items():
                        bucket = rhs.setdefault(i + j, set())
                        for p in u:
                            for q in v:
                                bucket ^= {(p, q)}
            lhs_clean = {k: frozenset(v) for k, v in lhs.items() if v}
            rhs_clean = {k: frozenset(v) for k, v in rhs.items() if v}
            for k in _differing(lhs_clean, rhs_clean):
                report.fail(n, pres.format_monomial(monomial), f"Sq{k} does not commute with the coproduct")

    report.failures.sort(key=lambda f: f.degree)
    logging.debug(f"Steenrod check of {pres.name} through {cap}: {len(report.failures)} failures")
    return report


def check_cohomology_operations(ring: CommutativeRing) -> VerificationReport:
    """Each recorded Sq^k(v) is homogeneous of degree deg(v) + k, and zero when k > deg(v)."""
    top = max((ring.degree(m) for value in ring.operations.values() for m in value), default=0)
    report = VerificationReport("cohomology-operations", top)
    for (k, v), value in sorted(ring.operations.items()):
        var = ring.variables[v]
        expected = var.degree + k
        wrong = [m for m in value if ring.degree(m) != expected]
        if wrong or (k > var.degree and value):
            report.fail(expected, f"Sq{k}({var.name})", f"value {ring.format(value)}")
    return report
