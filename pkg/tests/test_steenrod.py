import sys
import os

# Add src directory to path before any local imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

# fmt: off
import pytest  # noqa: E402
from hypothesis import given, settings, strategies as st  # noqa: E402

from loop_homology.algebra import basis_in_degree, multiply, normal_form  # noqa: E402
from loop_homology.errors import CapExceeded  # noqa: E402
from loop_homology.model import CommutativeRing, GeneratorSpec  # noqa: E402
from loop_homology.registry import shipped_fixture  # noqa: E402
from loop_homology.steenrod import (  # noqa: E402
    act,
    act_word,
    adem_reduce,
    check_cohomology_operations,
    choose_mod2,
    is_admissible,
    verify_steenrod_module,
)
# fmt: on

THEOREM1 = shipped_fixture("omega-bg2q")


def test_choose_mod2():
    """Binomial coefficients mod 2 by Lucas' theorem."""
    assert choose_mod2(5, 1) == 1
    assert choose_mod2(5, 2) == 0
    assert choose_mod2(6, 2) == 1
    assert choose_mod2(4, 2) == 0
    assert choose_mod2(3, 5) == 0
    assert choose_mod2(-1, 0) == 0


def test_adem_relations():
    """Sq1Sq1 = 0, Sq1Sq2 = Sq3, Sq2Sq2 = Sq3Sq1, Sq2Sq3 = Sq5 + Sq4Sq1."""
    assert adem_reduce((1, 1), 10) == frozenset()
    assert adem_reduce((1, 2), 10) == frozenset({(3,)})
    assert adem_reduce((2, 2), 10) == frozenset({(3, 1)})
    assert adem_reduce((2, 3), 10) == frozenset({(5,), (4, 1)})


def test_admissible_words_are_fixed():
    """Admissible words reduce to themselves."""
    assert is_admissible((4, 2, 1))
    assert not is_admissible((2, 2))
    assert adem_reduce((4, 2, 1), 10) == frozenset({(4, 2, 1)})


def test_adem_cap():
    """Words above the cap are refused."""
    with pytest.raises(CapExceeded):
        adem_reduce((4, 4), 6)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_adem_output_is_admissible(word):
    """Every term of the reduction is admissible and of the same degree."""
    for term in adem_reduce(word, 30):
        assert is_admissible(term)
        assert sum(term) == sum(word)


def test_stated_action():
    """Sq2_* b10 = a4^2 and Cartan kills Sq2_* a4^2."""
    pres, spec = THEOREM1.presentation, THEOREM1.steenrod
    assert pres.format(act(2, normal_form(["b10"], pres), pres, spec, 20)) == "a4^2"
    assert act(2, normal_form(["a4", "a4"], pres), pres, spec, 20) == frozenset()


def test_cartan_on_omega_su3():
    """Sq4_*(a4^2) = a2^2 when a2 is polynomial."""
    fixture = shipped_fixture("omega-su3")
    pres = fixture.presentation
    assert pres.format(act(4, normal_form(["a4", "a4"], pres), pres, fixture.steenrod, 8)) == "a2^2"


def test_composite_applies_last_square_first():
    """Sq2Sq1 sends z6 to x3 while Sq1Sq2 kills it."""
    pres, spec = THEOREM1.presentation, THEOREM1.steenrod
    z6 = normal_form(["z6"], pres)
    assert pres.format(act_word((2, 1), z6, pres, spec)) == "x3"
    assert act_word((1, 2), z6, pres, spec) == frozenset()


def test_act_cap():
    """Acting above the cap is refused."""
    pres, spec = THEOREM1.presentation, THEOREM1.steenrod
    with pytest.raises(CapExceeded):
        act(2, normal_form(["b10"], pres), pres, spec, 8)


def test_theorem1_steenrod_module():
    """The Sq_* table of H_*(Omega BG2(q)) passes every check through degree 20."""
    report = verify_steenrod_module(THEOREM1.presentation, THEOREM1.coproduct, THEOREM1.steenrod, 20)
    assert report.passed


def test_theorem2_steenrod_module():
    """The Sq_* table of H_*(Omega BSol(q)) passes through degree 28."""
    fixture = shipped_fixture("omega-bsol")
    assert verify_steenrod_module(fixture.presentation, fixture.coproduct, fixture.steenrod, 28).passed


def test_dropped_square_is_caught():
    """Setting Sq2_* b10 = 0 breaks the relation [a4,z6] in degree 10."""
    fixture = shipped_fixture("omega-bg2q-corrupt-steenrod")
    report = verify_steenrod_module(fixture.presentation, fixture.coproduct, fixture.steenrod, 16)
    assert not report.passed
    assert report.first_failure.degree == 10
    assert report.first_failure.witness == "[a4,z6]"


def test_classical_homology_modules():
    """H_*(G2), H_*(SU(3)) and H_*(DI(4)) are consistent modules."""
    for name, cap in (("g2-homology", 14), ("su3-homology", 8), ("di4-homology", 30)):
        fixture = shipped_fixture(name)
        report = verify_steenrod_module(fixture.presentation, fixture.coproduct, fixture.steenrod, cap)
        assert report.passed, name


def test_cohomology_operations():
    """Recorded operations must raise degree by k."""
    assert check_cohomology_operations(shipped_fixture("bg2-cohomology").ring).passed
    ring = CommutativeRing(
        "bad",
        [GeneratorSpec("u4", 4), GeneratorSpec("t7", 7)],
        operations={(2, 0): frozenset({(0, 1)})},
    )
    report = check_cohomology_operations(ring)
    assert not report.passed
    assert report.first_failure.witness == "Sq2(u4)"


@st.composite
def monomials(draw, pres, max_degree):
    degree = draw(st.integers(1, max_degree).filter(lambda n: basis_in_degree(pres, n)))
    return draw(st.sampled_from(basis_in_degree(pres, degree)))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_cartan_formula_on_products(data):
    """Sq^k_*(uv) = sum of Sq^i_* u Sq^j_* v computed two ways."""
    pres, spec = THEOREM1.presentation, THEOREM1.steenrod
    u = frozenset({data.draw(monomials(pres, 8))})
    v = frozenset({data.draw(monomials(pres, 8))})
    product = multiply(pres, u, v)
    k = data.draw(st.integers(1, 6))
    expected: set = set()
    for i in range(k + 1):
        expected ^= multiply(pres, act(i, u, pres, spec, 16), act(k - i, v, pres, spec, 16))
    assert act(k, product, pres, spec, 16) == frozenset(expected)
