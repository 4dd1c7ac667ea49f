"""PBW normal forms, bases and confluence for presented graded algebras over GF(2).

Products are computed by moving generators leftward with the rules
g_j g_i -> g_i g_j + c_ij (i < j) and g^height -> 0. Results are memoised on the
presentation, so a Presentation must not be mutated after first use.
"""

import logging
from typing import List, Sequence, Tuple

from .errors import RewritingLoop
from .graded import GradedDims, exponent_vectors
from .model import ZERO, Element, Monomial, Presentation, VerificationReport

_IN_PROGRESS = object()


def word_of(monomial: Monomial) -> Tuple[int, ...]:
    """The monomial as a word of generator indices in normal order."""
    letters: List[int] = []
    for i, exponent in enumerate(monomial):
        letters.extend([i] * exponent)
    return tuple(letters)


def _left_multiply(pres: Presentation, i: int, monomial: Monomial) -> Element:
    cache = pres.cache("left")
    key = (i, monomial)
    cached = cache.get(key)
    if cached is _IN_PROGRESS:
        raise RewritingLoop(
            f"Rewriting {pres.names[i]} * {pres.format_monomial(monomial)} does not terminate"
        )
    if cached is not None:
        return cached
    cache[key] = _IN_PROGRESS
    try:
        result = _left_multiply_uncached(pres, i, monomial)
    except BaseException:
        del cache[key]
        raise
    cache[key] = result
    return result


def _left_multiply_uncached(pres: Presentation, i: int, monomial: Monomial) -> Element:
    first = next((k for k, e in enumerate(monomial) if e), None)
    if first is None or first > i:
        new = list(monomial)
        new[i] = 1
        return frozenset({tuple(new)})
    if first == i:
        exponent = monomial[i] + 1
        height = pres.generators[i].height
        if height is not None and exponent >= height:
            return ZERO
        new = list(monomial)
        new[i] = exponent
        return frozenset({tuple(new)})
    # g_i g_first = g_first g_i + c
    rest = list(monomial)
    rest[first] -= 1
    rest_monomial = tuple(rest)
    moved = left_multiply(pres, first, _left_multiply(pres, i, rest_monomial))
    correction = multiply(pres, pres.commutator(first, i), frozenset({rest_monomial}))
    return moved ^ correction


def left_multiply(pres: Presentation, i: int, element: Element) -> Element:
    result: set = set()
    for monomial in element:
        result ^= _left_multiply(pres, i, monomial)
    return frozenset(result)


def multiply_monomials(pres: Presentation, left: Monomial, right: Monomial) -> Element:
    cache = pres.cache("mul")
    key = (left, right)
    if key not in cache:
        result = frozenset({right})
        for letter in reversed(word_of(left)):
            result = left_multiply(pres, letter, result)
        cache[key] = result
    return cache[key]


def multiply(pres: Presentation, left: Element, right: Element) -> Element:
    result: set = set()
    for u in left:
        for v in right:
            result ^= multiply_monomials(pres, u, v)
    return frozenset(result)


def word_normal_form(pres: Presentation, letters: Sequence[int]) -> Element:
    result = frozenset({pres.unit()})
    for letter in reversed(letters):
        result = left_multiply(pres, letter, result)
    return result


def normal_form(word: Sequence[str], pres: Presentation) -> Element:
    """Image of a word of generator names in the PBW basis."""
    return word_normal_form(pres, [pres.index(name) for name in word])


def basis_in_degree(pres: Presentation, n: int) -> List[Monomial]:
    """Exponent vectors of degree n respecting heights, in lexicographic order."""
    cache = pres.cache("basis")
    if n not in cache:
        cache[n] = exponent_vectors(
            [g.degree for g in pres.generators], [g.height for g in pres.generators], n
        )
    return cache[n]


def basis_index(pres: Presentation, n: int) -> dict:
    cache = pres.cache("basis_index")
    if n not in cache:
        cache[n] = {m: k for k, m in enumerate(basis_in_degree(pres, n))}
    return cache[n]


def poincare(pres: Presentation, cap: int) -> GradedDims:
    return GradedDims.from_function(cap, lambda n: len(basis_in_degree(pres, n)))


def overlap_words(pres: Presentation, cap: int) -> List[Tuple[int, ...]]:
    """Ambiguities of the rewriting system: g_k g_j g_i with k > j > i, g^h g_i and g_k g^h."""
    gens = pres.generators
    size = pres.size
    words = []
    for k in range(size):
        for j in range(k):
            for i in range(j):
                words.append((k, j, i))
    for g, gen in enumerate(gens):
        if gen.height is None:
            continue
        for i in range(g):
            words.append((g,) * gen.height + (i,))
        for k in range(g + 1, size):
            words.append((k,) + (g,) * gen.height)
    words = [w for w in words if sum(gens[x].degree for x in w) <= cap]
    return sorted(words, key=lambda w: (sum(gens[x].degree for x in w), w))


def _resolve_overlap(pres: Presentation, word: Tuple[int, ...]) -> Tuple[Element, Element]:
    head, second, last = word[0], word[1], word[-1]
    if len(word) == 3 and head > second > last:
        left = word_normal_form(pres, (second, head, last)) ^ multiply(
            pres, pres.commutator(second, head), frozenset({pres.generator(last)})
        )
        right = word_normal_form(pres, (head, last, second)) ^ multiply(
            pres, frozenset({pres.generator(head)}), pres.commutator(last, second)
        )
        return left, right
    if head == second:
        # g^h g_i: the height rule on the left, a swap on the right
        g, i = head, last
        power = word_normal_form(pres, word[1:-1])
        right = word_normal_form(pres, word[1:-1] + (i, g)) ^ multiply(pres, power, pres.commutator(i, g))
        return ZERO, right
    # g_k g^h: a swap on the left, the height rule on the right
    k, g = head, second
    power = word_normal_form(pres, word[2:])
    left = word_normal_form(pres, (g, k) + word[2:]) ^ multiply(pres, pres.commutator(g, k), power)
    return left, ZERO


def check_confluence(pres: Presentation, cap: int) -> VerificationReport:
    """Resolve every overlap of degree <= cap both ways and compare normal forms."""
    report = VerificationReport("confluence", cap)
    words = overlap_words(pres, cap)
    logging.debug(f"Checking {len(words)} overlaps of {pres.name} up to degree {cap}")
    for word in words:
        left, right = _resolve_overlap(pres, word)
        if left != right:
            degree = sum(pres.generators[x].degree for x in word)
            witness = "*".join(pres.names[x] for x in word)
            report.fail(degree, witness, f"reductions differ by {pres.format(left ^ right)}")
    return report


def check_associativity(pres: Presentation, cap: int) -> VerificationReport:
    """(uv)w = u(vw) on all triples of positive-degree basis monomials with total degree <= cap."""
    report = VerificationReport("associativity", cap)
    for du in range(1, cap + 1):
        for dv in range(1, cap + 1 - du):
            for dw in range(1, cap + 1 - du - dv):
                for u in basis_in_degree(pres, du):
                    for v in basis_in_degree(pres, dv):
                        uv = multiply_monomials(pres, u, v)
                        for w in basis_in_degree(pres, dw):
                            first = multiply(pres, uv, frozenset({w}))
                            second = multiply(pres, frozenset({u}), multiply_monomials(pres, v, w))
                            if first != second:
                                witness = "*".join(pres.format_monomial(x) for x in (u, v, w))
                                report.fail(du + dv + dw, witness)
    return report
