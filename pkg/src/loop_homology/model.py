from dataclasses import dataclass, field
from enum import Enum, auto
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import UnknownGenerator, UnknownLetter
from .graded import GradedDims

# Exponent vector over the ordered generators of a presentation or ring
Monomial = Tuple[int, ...]
# GF(2) sum of monomials; addition is symmetric difference
Element = FrozenSet[Monomial]
Tensor = FrozenSet[Tuple[Monomial, Monomial]]

ZERO: Element = frozenset()


def format_monomial(names: Sequence[str], monomial: Monomial) -> str:
    factors = []
    for name, exponent in zip(names, monomial):
        if exponent == 1:
            factors.append(name)
        elif exponent > 1:
            factors.append(f"{name}^{exponent}")
    return "*".join(factors) if factors else "1"


def format_element(names: Sequence[str], element: Element) -> str:
    if not element:
        return "0"
    return " + ".join(format_monomial(names, m) for m in sorted(element, reverse=True))


def format_tensor(names: Sequence[str], tensor: Tensor) -> str:
    if not tensor:
        return "0"
    return " + ".join(
        f"{format_monomial(names, left)} (x) {format_monomial(names, right)}"
        for left, right in sorted(tensor, reverse=True)
    )


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    height: Optional[int] = None  # None means polynomial


@dataclass
class Presentation:
    """Graded algebra on ordered generators with commutator rewriting rules.

    commutators[(i, j)] with i < j holds c with g_i g_j + g_j g_i = c. Absent
    pairs commute. Generators are kept in ascending degree, ties in listed order.
    """

    name: str
    generators: List[GeneratorSpec]
    commutators: Dict[Tuple[int, int], Element] = field(default_factory=dict)
    memo: Dict[str, dict] = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def build(cls, name: str, generators: Sequence[GeneratorSpec]) -> "Presentation":
        ordered = sorted(generators, key=lambda g: g.degree)
        return cls(name, ordered)

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    @property
    def size(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        for i, gen in enumerate(self.generators):
            if gen.name == name:
                return i
        raise UnknownGenerator(f"Unknown generator {name!r} in {self.name}")

    def unit(self) -> Monomial:
        return (0,) * self.size

    def generator(self, i: int) -> Monomial:
        return tuple(1 if k == i else 0 for k in range(self.size))

    def degree(self, monomial: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(monomial, self.generators))

    def commutator(self, i: int, j: int) -> Element:
        if i > j:
            i, j = j, i
        return self.commutators.get((i, j), ZERO)

    def cache(self, name: str) -> dict:
        return self.memo.setdefault(name, {})

    def format(self, element: Element) -> str:
        return format_element(self.names, element)

    def format_monomial(self, monomial: Monomial) -> str:
        return format_monomial(self.names, monomial)


@dataclass
class CoproductSpec:
    """Reduced coproducts of generators; absent generators are primitive."""

    reduced: Dict[int, Tensor] = field(default_factory=dict)
    memo: Dict[str, dict] = field(default_factory=dict, repr=False, compare=False)

    def cache(self, name: str) -> dict:
        return self.memo.setdefault(name, {})


@dataclass
class SteenrodSpec:
    """Values Sq^k_*(g) keyed by (k, generator index); unstated values are zero."""

    values: Dict[Tuple[int, int], Element] = field(default_factory=dict)
    memo: Dict[str, dict] = field(default_factory=dict, repr=False, compare=False)

    def cache(self, name: str) -> dict:
        return self.memo.setdefault(name, {})


@dataclass
class DerivationSpec:
    """Differential of degree -1 given on generators and extended by Leibniz."""

    values: Dict[int, Element] = field(default_factory=dict)
    memo: Dict[str, dict] = field(default_factory=dict, repr=False, compare=False)

    def cache(self, name: str) -> dict:
        return self.memo.setdefault(name, {})


@dataclass
class BSSStage:
    label: str
    presentation: Presentation
    derivation: DerivationSpec
    steenrod_square: Optional[int] = None  # page built from Sq^k_* of the base algebra


@dataclass
class BSSSchedule:
    stages: List[BSSStage] = field(default_factory=list)
    expect_unit: bool = False


@dataclass
class CommutativeRing:
    """Polynomial ring on graded variables (listed order) modulo homogeneous relations."""

    name: str
    variables: List[GeneratorSpec]
    relations: List[Element] = field(default_factory=list)
    # cohomology operations Sq^k(v), keyed by (k, variable index); degree rises by k
    operations: Dict[Tuple[int, int], Element] = field(default_factory=dict)
    memo: Dict[str, object] = field(default_factory=dict, repr=False, compare=False)

    @property
    def names(self) -> List[str]:
        return [v.name for v in self.variables]

    def index(self, name: str) -> int:
        for i, var in enumerate(self.variables):
            if var.name == name:
                return i
        raise UnknownGenerator(f"Unknown variable {name!r} in {self.name}")

    def degree(self, monomial: Monomial) -> int:
        return sum(e * v.degree for e, v in zip(monomial, self.variables))

    def reordered(self, order: Sequence[str]) -> "CommutativeRing":
        """The same ring with variables listed in the given order."""
        perm = [self.index(name) for name in order]
        if sorted(perm) != list(range(len(self.variables))):
            raise ValueError(f"{order} is not a permutation of {self.names}")

        def move(m: Monomial) -> Monomial:
            return tuple(m[p] for p in perm)

        return CommutativeRing(
            name=self.name,
            variables=[self.variables[p] for p in perm],
            relations=[frozenset(move(m) for m in rel) for rel in self.relations],
            operations={(k, perm.index(v)): frozenset(move(m) for m in val)
                        for (k, v), val in self.operations.items()},
        )

    def format(self, element: Element) -> str:
        return format_element(self.names, element)


@dataclass
class CoalgebraData:
    """Connected coalgebra given degreewise: index 0 is the unit."""

    name: str
    labels: List[str]
    degrees: List[int]
    reduced: Dict[int, FrozenSet[Tuple[int, int]]]
    cap: int
    memo: Dict[str, dict] = field(default_factory=dict, repr=False, compare=False)

    def basis_in_degree(self, n: int) -> List[int]:
        by_degree = self.memo.setdefault("by_degree", {})
        if not by_degree:
            for i, d in enumerate(self.degrees):
                by_degree.setdefault(d, []).append(i)
        return by_degree.get(n, [])

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLetter(f"Unknown coalgebra basis element {label!r} in {self.name}")

    def dims(self) -> GradedDims:
        return GradedDims.from_function(self.cap, lambda n: len(self.basis_in_degree(n)))


@dataclass
class Failure:
    degree: int
    witness: str
    detail: str = ""


@dataclass
class VerificationReport:
    check: str
    cap: int
    failures: List[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Optional[Failure]:
        if not self.failures:
            return None
        return min(self.failures, key=lambda f: f.degree)

    def fail(self, degree: int, witness: str, detail: str = "") -> None:
        self.failures.append(Failure(degree, witness, detail))


class FixtureKind(Enum):
    ALGEBRA = auto()
    RING = auto()


@dataclass(frozen=True)
class ProductFactor:
    kind: str  # "P", "E" or "Gamma"
    names: Tuple[str, ...]
    height: Optional[int] = None


@dataclass
class Fixture:
    name: str
    kind: FixtureKind
    anchor: str = ""
    presentation: Optional[Presentation] = None
    coproduct: CoproductSpec = field(default_factory=CoproductSpec)
    steenrod: SteenrodSpec = field(default_factory=SteenrodSpec)
    derivation: Optional[DerivationSpec] = None
    schedule: Optional[BSSSchedule] = None
    ring: Optional[CommutativeRing] = None
    expected_dims: Optional[GradedDims] = None
    expected_product: Optional[List[ProductFactor]] = None
    source: Optional[str] = field(default=None, compare=False)


class CheckStatus(Enum):
    PASS = auto()
    FAIL = auto()
    SKIP = auto()


@dataclass
class CheckResult:
    suite: str
    check: str
    anchor: str
    status: CheckStatus
    degree: Optional[int] = None
    witness: Optional[str] = None
    millis: int = 0


@dataclass
class SuiteReport:
    suite: str
    results: List[CheckResult] = field(default_factory=list)
    millis: int = 0

    @property
    def passed(self) -> bool:
        return all(r.status != CheckStatus.FAIL for r in self.results)
