import sys
import os

# Add src directory to path before any local imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

# fmt: off
import pytest  # noqa: E402
from hypothesis import given, settings, strategies as st  # noqa: E402

from loop_homology.errors import CapExceeded, InhomogeneousRelation  # noqa: E402
from loop_homology.fixture_parser import load_presentation  # noqa: E402
from loop_homology.graded import exponent_vectors  # noqa: E402
from loop_homology.groebner import (  # noqa: E402
    commutative_quotient_basis,
    defining_relations,
    groebner_basis,
    is_zero_in_quotient,
    leading_monomial,
    poly_multiply,
    quotient_ring,
    reduce_polynomial,
)
from loop_homology.model import CommutativeRing, GeneratorSpec  # noqa: E402
from loop_homology.registry import shipped_fixture  # noqa: E402
# fmt: on

BG2Q = shipped_fixture("bg2q-cohomology").ring


def test_bg2q_dims():
    """H^*(BG2(q)) has dims 1 0 0 1 1 1 2 2 2 3 3 through degree 10."""
    assert str(quotient_ring(BG2Q, 10).dims()) == "1 0 0 1 1 1 2 2 2 3 3"


def test_bg2q_degree_ten_basis():
    """The standard monomials of degree 10 are u6 u4, y3 t7 and y3^2 u4."""
    basis = commutative_quotient_basis(BG2Q, 10)
    assert sorted(BG2Q.format(frozenset({m})) for m in basis) == ["u6*u4", "y3*t7", "y3^2*u4"]


def test_bg2q_leading_term():
    """The first relation leads with y5^2 in graded lex order."""
    first = BG2Q.relations[0]
    assert BG2Q.format(frozenset({leading_monomial(BG2Q, first)})) == "y5^2"


def test_relations_vanish():
    """Both defining relations reduce to zero."""
    for rel in BG2Q.relations:
        assert is_zero_in_quotient(BG2Q, rel, 12)


def test_dims_independent_of_variable_order():
    """Listing the variables differently gives the same dims."""
    other = BG2Q.reordered(["u4", "u6", "t7", "y3", "y5"])
    assert quotient_ring(other, 14).dims() == quotient_ring(BG2Q, 14).dims()


def test_truncated_polynomial_variable():
    """nil 3 on a degree-2 variable kills x^3."""
    ring = load_presentation("ring trunc\ngenerator x deg 2 nil 3\n").ring
    assert str(quotient_ring(ring, 8).dims()) == "1 0 1 0 1 0 0 0 0"


def test_polynomial_ring_has_no_basis():
    """A free polynomial ring needs no Groebner basis elements."""
    ring = shipped_fixture("bg2-cohomology").ring
    assert groebner_basis(ring, 20) == []
    assert quotient_ring(ring, 12).dims()[12] == 2  # u4^3 and u6^2


def test_standard_monomials_above_cap():
    """Degrees above the truncation are refused."""
    with pytest.raises(CapExceeded):
        quotient_ring(BG2Q, 6).standard_monomials(7)


def test_inhomogeneous_relation():
    """Relations must be homogeneous."""
    ring = CommutativeRing(
        "bad",
        [GeneratorSpec("a", 2), GeneratorSpec("b", 3)],
        relations=[frozenset({(1, 0), (0, 1)})],
    )
    with pytest.raises(InhomogeneousRelation):
        defining_relations(ring)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_multiples_of_relations_vanish(data):
    """Every multiple of a relation lies in the ideal through the cap."""
    cap = 16
    rel = data.draw(st.sampled_from(BG2Q.relations))
    room = cap - BG2Q.degree(next(iter(rel)))
    degrees = [v.degree for v in BG2Q.variables]
    n = data.draw(st.integers(0, room).filter(lambda k: exponent_vectors(degrees, [None] * 5, k)))
    m = data.draw(st.sampled_from(exponent_vectors(degrees, [None] * 5, n)))
    assert is_zero_in_quotient(BG2Q, poly_multiply(rel, frozenset({m})), cap)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_reduction_is_idempotent(data):
    """Reducing twice changes nothing."""
    basis = groebner_basis(BG2Q, 14)
    degrees = [v.degree for v in BG2Q.variables]
    n = data.draw(st.integers(3, 14))
    monomials = exponent_vectors(degrees, [None] * 5, n)
    chosen = data.draw(st.sets(st.sampled_from(monomials), min_size=1)) if monomials else set()
    once = reduce_polynomial(BG2Q, frozenset(chosen), basis)
    assert reduce_polynomial(BG2Q, once, basis) == once
