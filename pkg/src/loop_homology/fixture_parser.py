"""Reading and writing the line-oriented fixture format (*.alg).

A fixture starts with `algebra <name>` or `ring <name>`. Generators are declared
before use; every element is a sum of monomials `g1^e1*g2^e2` with `0` and `1`
allowed. `stage <label>` lines open Bockstein pages that run to the next stage.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .errors import DegreeMismatch, InhomogeneousRelation, ParseError, UnknownGenerator
from .graded import GradedDims, generator_series, tensor_series
from .model import (
    ZERO,
    BSSSchedule,
    BSSStage,
    CommutativeRing,
    CoproductSpec,
    DerivationSpec,
    Element,
    Fixture,
    FixtureKind,
    GeneratorSpec,
    Monomial,
    Presentation,
    ProductFactor,
    format_element,
    format_tensor,
)
from .spectra import derivation_from_steenrod

_FACTOR = re.compile(r"^(P|E|Gamma)\[([^\]]*)\](?:/\((\w+)\^(\d+)\))?$")
_TENSOR = re.compile(r"\s*\(x\)\s*")
_WORD = re.compile(r"\S+")
_STAGE_KEYWORDS = {"generator", "comm", "differential", "expect"}


@dataclass
class _Line:
    number: int
    text: str
    tokens: List[str]
    offsets: List[int]

    @classmethod
    def of(cls, number: int, text: str) -> "_Line":
        words = list(_WORD.finditer(text))
        return cls(number, text, [w.group() for w in words], [w.start() for w in words])

    def column(self, token: Optional[str] = None, at: Optional[int] = None) -> int:
        """1-based column of tokens[at], else of the first whole occurrence of token after any '='."""
        if at is not None:
            return self.offsets[at] + 1
        if not token:
            return 1
        pattern = re.compile(rf"(?<!\w){re.escape(token)}(?!\w)")
        match = pattern.search(self.text, self.text.find("=") + 1) or pattern.search(self.text)
        return match.start() + 1 if match else 1

    def error(self, message: str, token: Optional[str] = None, at: Optional[int] = None) -> ParseError:
        return ParseError(message, self.number, self.column(token, at))

    def rhs(self) -> str:
        if "=" not in self.text:
            raise self.error(f"expected '=' in {self.tokens[0]!r} line")
        return self.text.split("=", 1)[1].strip()


@dataclass
class _Section:
    label: Optional[str] = None
    steenrod_square: Optional[int] = None
    line: Optional[_Line] = None
    generators: List[_Line] = field(default_factory=list)
    body: List[_Line] = field(default_factory=list)


class _Symbols:
    """Generator names, degrees and heights used while parsing elements."""

    def __init__(self, names: Sequence[str], degrees: Sequence[int], heights: Sequence[Optional[int]]):
        self.names = list(names)
        self.degrees = list(degrees)
        self.heights = list(heights)

    @classmethod
    def of_presentation(cls, pres: Presentation) -> "_Symbols":
        gens = pres.generators
        return cls([g.name for g in gens], [g.degree for g in gens], [g.height for g in gens])

    @classmethod
    def of_ring(cls, ring: CommutativeRing) -> "_Symbols":
        # exponents in a ring are unrestricted; heights enter as relations
        return cls(ring.names, [v.degree for v in ring.variables], [None] * len(ring.variables))

    def index(self, name: str, line: _Line, at: Optional[int] = None) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownGenerator(
                f"line {line.number}, column {line.column(name, at)}: unknown generator {name!r}"
            )

    def degree(self, monomial: Monomial) -> int:
        return sum(e * d for e, d in zip(monomial, self.degrees))

    def monomial(self, token: str, line: _Line) -> Monomial:
        exponents = [0] * len(self.names)
        if token == "1":
            return tuple(exponents)
        for factor in token.split("*"):
            name, _, power = factor.partition("^")
            if not name:
                raise line.error(f"malformed monomial {token!r}", token)
            try:
                exponent = int(power) if power else 1
            except ValueError:
                raise line.error(f"exponent {power!r} is not an integer", token)
            if exponent < 1:
                raise line.error(f"exponent {exponent} must be positive", token)
            exponents[self.index(name, line)] += exponent
        for name, exponent, height in zip(self.names, exponents, self.heights):
            if height is not None and exponent >= height:
                raise line.error(f"{name}^{exponent} exceeds the height {height}", token)
        return tuple(exponents)

    def element(self, text: str, line: _Line) -> Element:
        text = text.strip()
        if not text:
            raise line.error("missing element")
        if text == "0":
            return ZERO
        result: set = set()
        for term in text.split("+"):
            result ^= {self.monomial(term.strip(), line)}
        return frozenset(result)

    def homogeneous_degree(self, element: Element, line: _Line) -> Optional[int]:
        degrees = sorted({self.degree(m) for m in element})
        if len(degrees) > 1:
            raise InhomogeneousRelation(
                f"line {line.number}: {line.rhs()} mixes degrees {' vs '.join(str(d) for d in reversed(degrees))}"
            )
        return degrees[0] if degrees else None

    def expect_degree(self, element: Element, expected: int, line: _Line, what: str) -> None:
        found = self.homogeneous_degree(element, line)
        if found is not None and found != expected:
            raise DegreeMismatch(f"line {line.number}: {what} has degree {found}, expected {expected}")


def _parse_int(line: _Line, at: int) -> int:
    token = line.tokens[at]
    try:
        return int(token)
    except ValueError:
        raise line.error(f"{token!r} is not an integer", at=at)


def _parse_generator(line: _Line) -> GeneratorSpec:
    tokens = line.tokens
    if len(tokens) < 4 or tokens[2] != "deg":
        raise line.error("expected 'generator <name> deg <d> [poly | nil <h>]'")
    degree = _parse_int(line, 3)
    if degree < 1:
        raise DegreeMismatch(f"line {line.number}: generator {tokens[1]} needs positive degree, got {degree}")
    rest = tokens[4:]
    if not rest or rest == ["poly"]:
        return GeneratorSpec(tokens[1], degree)
    if len(rest) == 2 and rest[0] == "nil":
        height = _parse_int(line, 5)
        if height < 2:
            raise line.error(f"height {height} must be at least 2", at=5)
        return GeneratorSpec(tokens[1], degree, height)
    raise line.error(f"unexpected {' '.join(rest)!r} after the degree", at=4)


def _unique_generators(lines: List[_Line]) -> List[GeneratorSpec]:
    gens: List[GeneratorSpec] = []
    for line in lines:
        gen = _parse_generator(line)
        if any(g.name == gen.name for g in gens):
            raise line.error(f"generator {gen.name} declared twice", at=1)
        gens.append(gen)
    return gens


def parse_product(expression: str, line_number: int = 0) -> List[ProductFactor]:
    """Factors of an expression like `P[a2]/(a2^2) (x) P[a4,b10] (x) E[x3,x5]`."""
    factors = []
    for text in _TENSOR.split(expression.strip()):
        match = _FACTOR.match(text.strip())
        if not match:
            raise ParseError(f"cannot read factor {text!r}", line_number, 1)
        kind, names, truncated, height = match.groups()
        name_list = tuple(n.strip() for n in names.split(",") if n.strip())
        if not name_list:
            raise ParseError(f"factor {text!r} has no generators", line_number, 1)
        if truncated is not None:
            if kind != "P" or name_list != (truncated,):
                raise ParseError(f"truncation in {text!r} must be P[v]/(v^h)", line_number, 1)
            factors.append(ProductFactor(kind, name_list, int(height)))
        else:
            factors.append(ProductFactor(kind, name_list))
    return factors


def format_product(factors: Sequence[ProductFactor]) -> str:
    parts = []
    for factor in factors:
        text = f"{factor.kind}[{','.join(factor.names)}]"
        if factor.height is not None:
            text += f"/({factor.names[0]}^{factor.height})"
        parts.append(text)
    return " (x) ".join(parts)


def product_series(factors: Sequence[ProductFactor], degree_of: Callable[[str], int], cap: int) -> GradedDims:
    """Poincare dims of a tensor product of P, truncated P, E and Gamma factors."""
    series = []
    for factor in factors:
        for name in factor.names:
            if factor.kind == "E":
                height: Optional[int] = 2
            elif factor.kind == "P":
                height = factor.height
            else:
                height = None  # a divided power algebra has the series of a polynomial one
            series.append(generator_series(degree_of(name), height, cap))
    return tensor_series(series, cap)


def expected_product_dims(fixture: Fixture, cap: int) -> Optional[GradedDims]:
    if fixture.expected_product is None:
        return None
    pres = fixture.presentation
    return product_series(fixture.expected_product, lambda name: pres.generators[pres.index(name)].degree, cap)


def _split_lines(text: str) -> List[_Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if content.strip():
            lines.append(_Line.of(number, content))
    return lines


def _sections(lines: List[_Line]) -> List[_Section]:
    sections = [_Section()]
    for line in lines:
        keyword = line.tokens[0]
        if keyword == "stage":
            if len(line.tokens) == 2:
                sections.append(_Section(line.tokens[1], line=line))
            elif len(line.tokens) == 4 and line.tokens[2] == "steenrod":
                sections.append(_Section(line.tokens[1], _parse_int(line, 3), line))
            else:
                raise line.error("expected 'stage <label> [steenrod <k>]'")
        elif keyword == "generator":
            if sections[-1].steenrod_square is not None:
                raise line.error("a steenrod stage takes no generators", at=0)
            sections[-1].generators.append(line)
        else:
            if sections[-1].label is not None and keyword not in _STAGE_KEYWORDS:
                raise line.error(f"{keyword!r} is not allowed inside a stage", at=0)
            sections[-1].body.append(line)
    return sections


def _parse_comm(line: _Line, pres: Presentation, symbols: _Symbols) -> None:
    if len(line.tokens) < 4 or line.tokens[3] != "=":
        raise line.error("expected 'comm <g> <h> = <element>'")
    i = symbols.index(line.tokens[1], line, 1)
    j = symbols.index(line.tokens[2], line, 2)
    if i == j:
        raise line.error("a generator commutes with itself", at=2)
    value = symbols.element(line.rhs(), line)
    symbols.expect_degree(value, symbols.degrees[i] + symbols.degrees[j], line, "commutator")
    key = (min(i, j), max(i, j))
    if key in pres.commutators:
        raise line.error(f"commutator of {line.tokens[1]} and {line.tokens[2]} given twice")
    if value:
        pres.commutators[key] = value


def _parse_differential(line: _Line, values: Dict[int, Element], symbols: _Symbols) -> None:
    if len(line.tokens) < 3 or line.tokens[2] != "=":
        raise line.error("expected 'differential <g> = <element>'")
    g = symbols.index(line.tokens[1], line, 1)
    value = symbols.element(line.rhs(), line)
    symbols.expect_degree(value, symbols.degrees[g] - 1, line, f"d({line.tokens[1]})")
    if g in values:
        raise line.error(f"differential of {line.tokens[1]} given twice", at=1)
    if value:
        values[g] = value


def _parse_steenrod(line: _Line, values: Dict[Tuple[int, int], Element], symbols: _Symbols, sign: int) -> None:
    if len(line.tokens) < 4 or line.tokens[3] != "=":
        raise line.error("expected 'steenrod <k> <g> = <element>'")
    k = _parse_int(line, 1)
    if k < 1:
        raise line.error(f"Sq{k} must have k >= 1", at=1)
    g = symbols.index(line.tokens[2], line, 2)
    expected = symbols.degrees[g] + sign * k
    if expected < 0:
        raise DegreeMismatch(f"line {line.number}: Sq{k} of {line.tokens[2]} would have negative degree")
    value = symbols.element(line.rhs(), line)
    symbols.expect_degree(value, expected, line, f"Sq{k}({line.tokens[2]})")
    if (k, g) in values:
        raise line.error(f"Sq{k} of {line.tokens[2]} given twice", at=2)
    if value:
        values[(k, g)] = value


def _parse_coproduct(line: _Line, cop: CoproductSpec, symbols: _Symbols) -> None:
    if len(line.tokens) < 3 or line.tokens[2] != "=":
        raise line.error("expected 'coproduct <g> = <m> (x) <m> + ...'")
    g = symbols.index(line.tokens[1], line, 1)
    text = line.rhs()
    if g in cop.reduced:
        raise line.error(f"coproduct of {line.tokens[1]} given twice", at=1)
    if text == "0":
        return
    tensor: set = set()
    for term in text.split("+"):
        parts = _TENSOR.split(term.strip())
        if len(parts) != 2:
            raise line.error(f"expected '<m> (x) <m>' in {term.strip()!r}")
        left = symbols.monomial(parts[0].strip(), line)
        right = symbols.monomial(parts[1].strip(), line)
        dl, dr = symbols.degree(left), symbols.degree(right)
        if dl < 1 or dr < 1 or dl + dr != symbols.degrees[g]:
            raise DegreeMismatch(
                f"line {line.number}: {term.strip()} has bidegree ({dl}, {dr}), "
                f"not a reduced term of degree {symbols.degrees[g]}"
            )
        tensor ^= {(left, right)}
    if tensor:
        cop.reduced[g] = frozenset(tensor)


def _parse_expect(line: _Line, fixture: Fixture) -> bool:
    """Record an expectation; returns True for `expect einf unit`."""
    tokens = line.tokens
    if len(tokens) >= 3 and tokens[1] == "dims":
        fixture.expected_dims = GradedDims(tuple(_parse_int(line, k) for k in range(2, len(tokens))))
    elif len(tokens) >= 3 and tokens[1] == "product":
        fixture.expected_product = parse_product(line.text.split("product", 1)[1], line.number)
    elif tokens[1:] == ["einf", "unit"]:
        return True
    else:
        raise line.error("expected 'expect dims ...', 'expect product ...' or 'expect einf unit'")
    return False


def _load_ring(name: str, main: _Section, fixture: Fixture) -> None:
    ring = CommutativeRing(name, _unique_generators(main.generators))
    symbols = _Symbols.of_ring(ring)
    for line in main.body:
        keyword = line.tokens[0]
        if keyword == "relation":
            text = line.text.split("relation", 1)[1]
            sides = text.split("=")
            if len(sides) > 2:
                raise line.error("a relation has at most one '='")
            relation: set = set()
            for side in sides:
                relation ^= symbols.element(side, line)
            value = frozenset(relation)
            degrees = sorted({ring.degree(m) for m in value})
            if len(degrees) > 1:
                raise InhomogeneousRelation(
                    f"line {line.number}: relation mixes degrees {' vs '.join(str(d) for d in reversed(degrees))}"
                )
            if value:
                ring.relations.append(value)
        elif keyword == "steenrod":
            _parse_steenrod(line, ring.operations, symbols, +1)
        elif keyword == "anchor":
            fixture.anchor = line.text.split("anchor", 1)[1].strip()
        elif keyword == "expect":
            if _parse_expect(line, fixture) or fixture.expected_product is not None:
                raise line.error("a ring fixture only expects dims", at=0)
        else:
            raise line.error(f"unknown directive {keyword!r} in a ring fixture", at=0)
    fixture.ring = ring


def _load_algebra(name: str, sections: List[_Section], fixture: Fixture) -> None:
    main = sections[0]
    pres = Presentation.build(name, _unique_generators(main.generators))
    symbols = _Symbols.of_presentation(pres)
    derivation: Dict[int, Element] = {}
    expect_unit = False
    for line in main.body:
        keyword = line.tokens[0]
        if keyword == "comm":
            _parse_comm(line, pres, symbols)
        elif keyword == "coproduct":
            _parse_coproduct(line, fixture.coproduct, symbols)
        elif keyword == "steenrod":
            _parse_steenrod(line, fixture.steenrod.values, symbols, -1)
        elif keyword == "differential":
            _parse_differential(line, derivation, symbols)
        elif keyword == "anchor":
            fixture.anchor = line.text.split("anchor", 1)[1].strip()
        elif keyword == "expect":
            expect_unit |= _parse_expect(line, fixture)
        else:
            raise line.error(f"unknown directive {keyword!r}", at=0)
    fixture.presentation = pres
    if derivation:
        fixture.derivation = DerivationSpec(derivation)
    if fixture.expected_product is not None:
        for factor in fixture.expected_product:
            for factor_name in factor.names:
                pres.index(factor_name)

    stages: List[BSSStage] = []
    for section in sections[1:]:
        if section.steenrod_square is not None:
            if section.body and any(line.tokens[0] != "expect" for line in section.body):
                raise section.line.error("a steenrod stage takes no directives")
            stage = BSSStage(
                section.label, pres, derivation_from_steenrod(fixture.steenrod, section.steenrod_square),
                section.steenrod_square,
            )
        else:
            page = Presentation.build(f"{name}:{section.label}", _unique_generators(section.generators))
            page_symbols = _Symbols.of_presentation(page)
            values: Dict[int, Element] = {}
            for line in section.body:
                if line.tokens[0] == "comm":
                    _parse_comm(line, page, page_symbols)
                elif line.tokens[0] == "differential":
                    _parse_differential(line, values, page_symbols)
            stage = BSSStage(section.label, page, DerivationSpec(values))
        for line in section.body:
            if line.tokens[0] == "expect":
                expect_unit |= _parse_expect(line, fixture)
        stages.append(stage)
    if stages:
        fixture.schedule = BSSSchedule(stages, expect_unit)
    elif expect_unit:
        raise ParseError("'expect einf unit' needs at least one stage", 0, 1)


def load_presentation(text: str, source: Optional[str] = None) -> Fixture:
    """Parse and validate fixture text."""
    lines = _split_lines(text)
    if not lines:
        raise ParseError("empty fixture", 1, 1)
    header = lines[0]
    if len(header.tokens) != 2 or header.tokens[0] not in ("algebra", "ring"):
        raise header.error("expected 'algebra <name>' or 'ring <name>'")
    name = header.tokens[1]
    sections = _sections(lines[1:])
    if header.tokens[0] == "ring":
        if len(sections) > 1:
            raise sections[1].line.error("a ring fixture has no stages")
        fixture = Fixture(name, FixtureKind.RING, source=source)
        _load_ring(name, sections[0], fixture)
    else:
        fixture = Fixture(name, FixtureKind.ALGEBRA, source=source)
        _load_algebra(name, sections, fixture)
    logging.debug(f"Loaded fixture {name} from {source or 'text'}")
    return fixture


def load_fixture(path: Union[str, Path]) -> Fixture:
    path = Path(path)
    return load_presentation(path.read_text(), str(path))


def _generator_line(gen: GeneratorSpec) -> str:
    kind = "poly" if gen.height is None else f"nil {gen.height}"
    return f"generator {gen.name} deg {gen.degree} {kind}"


def _algebra_body(pres: Presentation, derivation: Optional[DerivationSpec]) -> List[str]:
    names = pres.names
    lines = [_generator_line(gen) for gen in pres.generators]
    for (i, j), value in sorted(pres.commutators.items()):
        lines.append(f"comm {names[i]} {names[j]} = {pres.format(value)}")
    if derivation is not None:
        for g, value in sorted(derivation.values.items()):
            lines.append(f"differential {names[g]} = {pres.format(value)}")
    return lines


def dump_fixture(fixture: Fixture) -> str:
    """Canonical text of a fixture; loading it gives back an equal fixture."""
    if fixture.kind == FixtureKind.RING:
        ring = fixture.ring
        lines = [f"ring {fixture.name}"]
        if fixture.anchor:
            lines.append(f"anchor {fixture.anchor}")
        lines.extend(_generator_line(v) for v in ring.variables)
        lines.extend(f"relation {ring.format(rel)}" for rel in ring.relations)
        for (k, v), value in sorted(ring.operations.items()):
            lines.append(f"steenrod {k} {ring.names[v]} = {ring.format(value)}")
        if fixture.expected_dims is not None:
            lines.append(f"expect dims {fixture.expected_dims}")
        return "\n".join(lines) + "\n"

    pres = fixture.presentation
    names = pres.names
    lines = [f"algebra {fixture.name}"]
    if fixture.anchor:
        lines.append(f"anchor {fixture.anchor}")
    lines.extend(_algebra_body(pres, fixture.derivation))
    for g, tensor in sorted(fixture.coproduct.reduced.items()):
        lines.append(f"coproduct {names[g]} = {format_tensor(names, tensor)}")
    for (k, g), value in sorted(fixture.steenrod.values.items()):
        lines.append(f"steenrod {k} {names[g]} = {format_element(names, value)}")
    if fixture.expected_dims is not None:
        lines.append(f"expect dims {fixture.expected_dims}")
    if fixture.expected_product is not None:
        lines.append(f"expect product {format_product(fixture.expected_product)}")
    if fixture.schedule is not None:
        if fixture.schedule.expect_unit:
            lines.append("expect einf unit")
        for stage in fixture.schedule.stages:
            if stage.steenrod_square is not None:
                lines.append(f"stage {stage.label} steenrod {stage.steenrod_square}")
            else:
                lines.append(f"stage {stage.label}")
                lines.extend(_algebra_body(stage.presentation, stage.derivation))
    return "\n".join(lines) + "\n"
