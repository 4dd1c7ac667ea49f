"""Lookup of the fixtures shipped with the package."""

from functools import lru_cache
from pathlib import Path
from typing import List

from .errors import UnknownSymbol
from .fixture_parser import load_fixture
from .hopf import coalgebra_from_presentation, dual_structure_constants
from .model import CoalgebraData, Fixture, FixtureKind

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURE_DIR / f"{name.replace('-', '_')}.alg"


def fixture_names() -> List[str]:
    return sorted(path.stem.replace("_", "-") for path in FIXTURE_DIR.glob("*.alg"))


@lru_cache(maxsize=None)
def shipped_fixture(name: str) -> Fixture:
    """A shipped fixture by name; loaded once per process, so engine caches are shared."""
    path = fixture_path(name)
    if not path.is_file():
        raise UnknownSymbol(f"No shipped fixture named {name!r}; known: {', '.join(fixture_names())}")
    return load_fixture(path)


def coalgebra_of(fixture: Fixture, cap: int) -> CoalgebraData:
    """The dual coalgebra of a ring fixture, or the underlying coalgebra of an algebra fixture."""
    if fixture.kind == FixtureKind.RING:
        return dual_structure_constants(fixture.ring, cap)
    return coalgebra_from_presentation(fixture.presentation, fixture.coproduct, cap)


@lru_cache(maxsize=None)
def shipped_coalgebra(name: str, cap: int) -> CoalgebraData:
    return coalgebra_of(shipped_fixture(name), cap)
