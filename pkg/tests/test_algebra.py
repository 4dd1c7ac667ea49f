import sys
import os

# Add src directory to path before any local imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

# fmt: off
import pytest  # noqa: E402
from hypothesis import given, settings, strategies as st  # noqa: E402

from loop_homology import algebra  # noqa: E402
from loop_homology.algebra import (  # noqa: E402
    basis_in_degree,
    check_associativity,
    check_confluence,
    left_multiply,
    multiply,
    multiply_monomials,
    normal_form,
    overlap_words,
    poincare,
    word_of,
)
from loop_homology.errors import RewritingLoop, UnknownGenerator  # noqa: E402
from loop_homology.fixture_parser import load_presentation  # noqa: E402
from loop_homology.registry import shipped_fixture  # noqa: E402
# fmt: on

THEOREM1 = shipped_fixture("omega-bg2q").presentation


def test_swap_rule_adds_commutator():
    """z6 a2 rewrites to a2 z6 + a4^2."""
    assert THEOREM1.format(normal_form(["z6", "a2"], THEOREM1)) == "a2*z6 + a4^2"


def test_swap_rule_with_two_correction_terms():
    """z6 a4 rewrites to a4 z6 + b10 + a2 a4^2."""
    assert THEOREM1.format(normal_form(["z6", "a4"], THEOREM1)) == "a2*a4^2 + a4*z6 + b10"


def test_height_rule():
    """Exterior and truncated generators square to zero."""
    assert normal_form(["z6", "z6"], THEOREM1) == frozenset()
    assert normal_form(["a2", "a2"], THEOREM1) == frozenset()
    assert THEOREM1.format(normal_form(["a4", "a4"], THEOREM1)) == "a4^2"


def test_commuting_generators_sort():
    """Generators without a commutator simply sort."""
    assert THEOREM1.format(normal_form(["b10", "x3", "a2"], THEOREM1)) == "a2*x3*b10"


def test_unknown_generator():
    """Words must use declared names."""
    with pytest.raises(UnknownGenerator):
        normal_form(["w7"], THEOREM1)


def test_theorem1_poincare_dims():
    """PBW dims of H_*(Omega BG2(q)) in degrees 0..10."""
    assert str(poincare(THEOREM1, 10)) == "1 0 1 1 1 2 2 2 3 3 4"


def test_theorem1_spot_values():
    """Degree 5, 8 and 10 have 2, 3 and 4 basis monomials."""
    dims = poincare(THEOREM1, 10)
    assert (dims[5], dims[8], dims[10]) == (2, 3, 4)


def test_theorem1_is_confluent():
    """Every overlap through degree 24 resolves."""
    report = check_confluence(THEOREM1, 24)
    assert report.passed


def test_theorem2_is_confluent():
    """Every overlap of H_*(Omega BSol(q)) through degree 30 resolves."""
    assert check_confluence(shipped_fixture("omega-bsol").presentation, 30).passed


def test_dropped_commutator_breaks_confluence():
    """Without [b10,z6] the overlap z6 z6 a4 in degree 16 fails."""
    pres = shipped_fixture("omega-bg2q-corrupt-confluence").presentation
    report = check_confluence(pres, 20)
    assert not report.passed
    first = report.first_failure
    assert first.degree == 16
    assert first.witness == "z6*z6*a4"


def test_confluence_is_vacuous_at_zero():
    """No overlap lives in degree 0."""
    assert check_confluence(THEOREM1, 0).passed


def test_overlap_words_are_sorted_by_degree():
    """Overlaps come out in ascending degree."""
    words = overlap_words(THEOREM1, 20)
    degrees = [sum(THEOREM1.generators[x].degree for x in w) for w in words]
    assert degrees == sorted(degrees)
    assert (4, 4, 2) in words  # z6 z6 a4


def test_associativity_small_cap():
    """(uv)w = u(vw) through degree 14."""
    assert check_associativity(THEOREM1, 14).passed


def test_unit_algebra():
    """No generators gives the ground field."""
    pres = load_presentation("algebra unit\n").presentation
    assert str(poincare(pres, 3)) == "1 0 0 0"
    assert check_confluence(pres, 3).passed


def test_reentrant_rewrite_is_reported():
    """A rewrite that needs itself raises RewritingLoop."""
    pres = load_presentation("algebra loop\ngenerator a deg 1 poly\ngenerator b deg 1 poly\n").presentation
    pres.cache("left")[(1, (1, 0))] = algebra._IN_PROGRESS
    with pytest.raises(RewritingLoop):
        left_multiply(pres, 1, frozenset({(1, 0)}))


def test_word_of():
    """Monomials expand to ascending words."""
    assert word_of((1, 0, 2)) == (0, 2, 2)


@st.composite
def basis_monomials(draw, pres, max_degree=12):
    degree = draw(st.integers(1, max_degree).filter(lambda n: basis_in_degree(pres, n)))
    return draw(st.sampled_from(basis_in_degree(pres, degree)))


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_normal_form_is_idempotent(data):
    """A basis monomial is its own normal form."""
    m = data.draw(basis_monomials(THEOREM1))
    assert normal_form([THEOREM1.names[x] for x in word_of(m)], THEOREM1) == frozenset({m})


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_random_triples_associate(data):
    """Products of random basis monomials associate."""
    u, v, w = (data.draw(basis_monomials(THEOREM1, 8)) for _ in range(3))
    left = multiply(THEOREM1, multiply_monomials(THEOREM1, u, v), frozenset({w}))
    right = multiply(THEOREM1, frozenset({u}), multiply_monomials(THEOREM1, v, w))
    assert left == right
