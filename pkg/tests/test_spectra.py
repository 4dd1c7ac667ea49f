import sys
import os

# Add src directory to path before any local imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

# fmt: off
import pytest  # noqa: E402

from loop_homology.algebra import normal_form, poincare  # noqa: E402
from loop_homology.errors import DifferentialNotSquareZero, RelationNotPreserved, StageMismatch  # noqa: E402
from loop_homology.fixture_parser import load_presentation  # noqa: E402
from loop_homology.registry import shipped_fixture  # noqa: E402
from loop_homology.spectra import (  # noqa: E402
    derivation_from_steenrod,
    differentiate,
    homology_of_derivation,
    run_bss,
    validate_derivation,
)
# fmt: on

KOSZUL = """
algebra koszul
generator a deg 2 poly
generator x deg 3 nil 2
differential x = a
"""


def test_acyclic_koszul_pair():
    """E[x3] (x) P[a2] with d(x) = a is acyclic."""
    fixture = load_presentation(KOSZUL)
    assert homology_of_derivation(fixture.presentation, fixture.derivation, 12).dims == (1,) + (0,) * 12


def test_leibniz_rule():
    """d(x a) = a^2."""
    fixture = load_presentation(KOSZUL)
    pres = fixture.presentation
    assert pres.format(differentiate(pres, fixture.derivation, normal_form(["a", "x"], pres))) == "a^2"


def test_serre_page_gives_omega_g2():
    """d(b5) = a2^2 on P[a2,a4,b5] leaves H_*(Omega G2)."""
    page = shipped_fixture("serre-g2")
    homology = homology_of_derivation(page.presentation, page.derivation, 20)
    assert homology == poincare(shipped_fixture("omega-g2").presentation, 20)
    assert homology[10] == 2


def test_theorem1_bockstein_pages():
    """Every page of the theorem-1 schedule matches the next and E-infinity is F2."""
    schedule = shipped_fixture("omega-bg2q").schedule
    result = run_bss(schedule, 24)
    assert [page.label for page in result.pages] == ["sq1", "r2", "r2+1"]
    assert result.einf_is_unit


def test_theorem2_bockstein_pages():
    """Same for the theorem-2 schedule."""
    result = run_bss(shipped_fixture("omega-bsol").schedule, 30)
    assert [page.label for page in result.pages] == ["sq1", "r4-1", "r4", "r4+1"]
    assert result.einf_is_unit


def test_sq1_page_in_degree_11():
    """Sq1_* homology of H_*(Omega BG2(q)) has dimension 2 in degree 11."""
    stage = shipped_fixture("omega-bg2q").schedule.stages[0]
    assert stage.steenrod_square == 1
    assert homology_of_derivation(stage.presentation, stage.derivation, 11)[11] == 2


def test_derivation_from_steenrod():
    """Only the Sq1 values become the differential."""
    fixture = shipped_fixture("omega-bg2q")
    d = derivation_from_steenrod(fixture.steenrod, 1)
    pres = fixture.presentation
    assert {pres.names[g] for g in d.values} == {"z6"}


def test_square_nonzero_differential():
    """d(d(x)) != 0 is reported with the degree of x."""
    fixture = load_presentation(
        "algebra bad\ngenerator c deg 1 poly\ngenerator b deg 2 poly\ngenerator x deg 3 poly\n"
        "differential b = c\ndifferential x = b\n"
    )
    with pytest.raises(DifferentialNotSquareZero) as err:
        validate_derivation(fixture.presentation, fixture.derivation, 6)
    assert err.value.degree == 3


def test_height_relation_not_preserved():
    """d(b^3) = b^2 a2 breaks the relation b^3 = 0."""
    fixture = load_presentation(
        "algebra bad\ngenerator a deg 2 nil 2\ngenerator b deg 3 nil 3\ndifferential b = a\n"
    )
    with pytest.raises(RelationNotPreserved) as err:
        validate_derivation(fixture.presentation, fixture.derivation, 12)
    assert err.value.degree == 9


def test_stage_mismatch():
    """A page whose homology disagrees with the next page stops the run."""
    fixture = load_presentation(
        "algebra pages\ngenerator a deg 2 poly\n"
        "stage first\ngenerator a deg 2 poly\ngenerator x deg 3 nil 2\ndifferential x = a\n"
        "stage second\ngenerator c deg 5 nil 2\n"
    )
    with pytest.raises(StageMismatch) as err:
        run_bss(fixture.schedule, 8)
    assert err.value.label == "first"
    assert err.value.degree == 5
