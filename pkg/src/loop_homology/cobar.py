"""The cobar complex of a connected coalgebra over GF(2) and its homology (Cotor).

A cobar word is a tuple of coalgebra basis indices of positive degree. Letters are
desuspended, so a word has degree sum(deg - 1). The differential replaces one
letter at a time by the pairs of its reduced coproduct; it lowers degree by one.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .errors import CapExceeded, DegreeMismatch, NotACycle, UnknownLetter
from .gf2 import GF2Matrix, homology_dim, iter_bits, solve
from .graded import GradedDims
from .model import CoalgebraData, VerificationReport

Word = Tuple[int, ...]
Chain = FrozenSet[Word]


def word_degree(word: Word, coalg: CoalgebraData) -> int:
    return sum(coalg.degrees[letter] - 1 for letter in word)


def parse_word(labels: Sequence[str], coalg: CoalgebraData) -> Word:
    return tuple(coalg.index(label) for label in labels)


def format_chain(chain: Chain, coalg: CoalgebraData) -> str:
    if not chain:
        return "0"
    return " + ".join("[" + "|".join(coalg.labels[x] for x in word) + "]" for word in sorted(chain))


def _letters(coalg: CoalgebraData) -> List[int]:
    letters = [i for i, degree in enumerate(coalg.degrees) if degree > 0]
    low = [coalg.labels[i] for i in letters if coalg.degrees[i] < 2]
    if low:
        raise DegreeMismatch(f"{coalg.name} has classes {low} of degree 1; cobar words would not be finite")
    return letters


def words_in_degree(coalg: CoalgebraData, n: int) -> List[Word]:
    """All cobar words of degree n, sorted."""
    cache = coalg.memo.setdefault("words", {})
    if n in cache:
        return cache[n]
    if n + 1 > coalg.cap:
        raise CapExceeded(f"Cobar degree {n} needs {coalg.name} through degree {n + 1}")
    found: List[Word] = [()] if n == 0 else []
    for letter in _letters(coalg):
        weight = coalg.degrees[letter] - 1
        if weight <= n:
            found.extend((letter,) + tail for tail in words_in_degree(coalg, n - weight))
    cache[n] = sorted(found)
    return cache[n]


def cobar_differential(w: Chain, coalg: CoalgebraData) -> Chain:
    result: set = set()
    for word in w:
        for position, letter in enumerate(word):
            if letter < 0 or letter >= len(coalg.labels) or coalg.degrees[letter] == 0:
                raise UnknownLetter(f"{letter!r} is not a letter of {coalg.name}")
            for x, y in coalg.reduced.get(letter, ()):
                result ^= {word[:position] + (x, y) + word[position + 1:]}
    return frozenset(result)


def cobar_matrix(coalg: CoalgebraData, n: int) -> GF2Matrix:
    """Matrix of the differential from degree n to degree n - 1."""
    source = words_in_degree(coalg, n)
    target = {w: k for k, w in enumerate(words_in_degree(coalg, n - 1))} if n > 0 else {}
    columns = []
    for word in source:
        column = 0
        for image in cobar_differential(frozenset({word}), coalg):
            column |= 1 << target[image]
        columns.append(column)
    return GF2Matrix.from_columns(len(target), columns)


def cotor(coalg: CoalgebraData, cap: int) -> GradedDims:
    """Homology of the cobar complex in degrees 0..cap; needs the coalgebra through cap + 2."""
    if cap + 2 > coalg.cap:
        raise CapExceeded(f"Cotor through {cap} needs {coalg.name} through {cap + 2}, known to {coalg.cap}")
    dims = []
    d_out = cobar_matrix(coalg, 0)
    for n in range(cap + 1):
        d_in = cobar_matrix(coalg, n + 1)
        dims.append(homology_dim(d_out, d_in))
        d_out = d_in
        logging.debug(f"Cotor of {coalg.name} in degree {n}: {dims[-1]} ({d_in.n_cols} words above)")
    return GradedDims(tuple(dims))


@dataclass
class BoundaryVerdict:
    is_boundary: bool
    witness: Optional[Chain] = None


def _degree_of_chain(w: Chain, coalg: CoalgebraData) -> int:
    degrees = {word_degree(word, coalg) for word in w}
    if len(degrees) != 1:
        raise DegreeMismatch(f"Cobar chain {format_chain(w, coalg)} is not homogeneous")
    return degrees.pop()


def is_boundary(w: Chain, coalg: CoalgebraData, cap: int) -> BoundaryVerdict:
    """Solve d(x) = w in the degree above w."""
    if not w:
        return BoundaryVerdict(True, frozenset())
    n = _degree_of_chain(w, coalg)
    if n > cap:
        raise CapExceeded(f"Chain of degree {n} lies above {cap}")
    if cobar_differential(w, coalg):
        raise NotACycle(f"{format_chain(w, coalg)} is not a cycle")
    index = {word: k for k, word in enumerate(words_in_degree(coalg, n))}
    target = 0
    for word in w:
        target |= 1 << index[word]
    above = words_in_degree(coalg, n + 1)
    solution = solve(cobar_matrix(coalg, n + 1), target)
    if solution is None:
        return BoundaryVerdict(False)
    return BoundaryVerdict(True, frozenset(above[k] for k in iter_bits(solution)))


def is_permanent(label: str, coalg: CoalgebraData, cap: int) -> bool:
    """A one-letter word that is a cycle and not a boundary."""
    word = frozenset({(coalg.index(label),)})
    if cobar_differential(word, coalg):
        return False
    return not is_boundary(word, coalg, cap).is_boundary


def check_square_zero(coalg: CoalgebraData, cap: int) -> VerificationReport:
    report = VerificationReport("cobar-square-zero", cap)
    for n in range(2, cap + 1):
        if not cobar_matrix(coalg, n - 1).compose(cobar_matrix(coalg, n)).is_zero():
            report.fail(n, f"d(d) in degree {n}")
    return report


def chain_from_labels(words: Sequence[Sequence[str]], coalg: CoalgebraData) -> Chain:
    result: set = set()
    for labels in words:
        result ^= {parse_word(labels, coalg)}
    return frozenset(result)

