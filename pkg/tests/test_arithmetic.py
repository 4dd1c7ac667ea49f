import sys
import os

# Add src directory to path before any local imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

# fmt: off
import pytest  # noqa: E402
from hypothesis import given  # noqa: E402
from hypothesis import strategies as st  # noqa: E402

from loop_homology.arithmetic import bockstein_exponents, check_range, nu2  # noqa: E402
from loop_homology.errors import EvenInput  # noqa: E402
# fmt: on


def test_nu2():
    """Largest power of two dividing m."""
    assert [nu2(m) for m in (1, 2, 3, 8, 12, 80, -4)] == [0, 1, 0, 3, 2, 4, 2]
    with pytest.raises(ValueError):
        nu2(0)


def test_known_exponents():
    """(r2, r4, r6, r14) for q = 3, 5, 7."""
    assert bockstein_exponents(3).as_tuple() == (3, 4, 3, 3)
    assert bockstein_exponents(5).as_tuple() == (3, 4, 3, 3)
    assert bockstein_exponents(7).as_tuple() == (4, 5, 4, 4)


def test_k():
    """q = 4k - 1 or q = 4k + 1."""
    assert [bockstein_exponents(q).k for q in (3, 5, 7, 9, 11)] == [1, 1, 2, 2, 3]


def test_even_or_small_q_rejected():
    """q must be odd and at least 3."""
    for q in (4, 1, -3):
        with pytest.raises(EvenInput):
            bockstein_exponents(q)


@given(st.integers(min_value=1, max_value=10 ** 6))
def test_identities_hold_for_odd_q(half):
    """r2 = r6 = r14 = nu2(k) + 3 and r4 = r2 + 1."""
    assert bockstein_exponents(2 * half + 1).identity_failures() == []


def test_check_range():
    """No failures over the first hundred odd q."""
    assert check_range(range(3, 200, 2)) == []
