import sys
import os

# Add src directory to path before any local imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

# fmt: off
import pytest  # noqa: E402

from loop_homology.graded import (  # noqa: E402
    GradedDims,
    exponent_vectors,
    free_series,
    generator_series,
    series_product,
    tensor_series,
)
# fmt: on


def test_generator_series():
    """P[x2] and P[x3]/(x3^2) through degree 6."""
    assert generator_series(2, None, 6).dims == (1, 0, 1, 0, 1, 0, 1)
    assert generator_series(3, 2, 6).dims == (1, 0, 0, 1, 0, 0, 0)


def test_series_product_of_exterior_algebras():
    """E[x3] (x) E[x5] has classes in degrees 0, 3, 5, 8."""
    e3 = generator_series(3, 2, 9)
    e5 = generator_series(5, 2, 9)
    assert series_product(e3, e5).dims == (1, 0, 0, 1, 0, 1, 0, 0, 1, 0)


def test_theorem1_product_series():
    """P[a2]/(a2^2) (x) P[a4,b10] (x) E[x3,x5] (x) P[z6]/(z6^2) through 10."""
    dims = free_series([(2, 2), (4, None), (10, None), (3, 2), (5, 2), (6, 2)], 10)
    assert str(dims) == "1 0 1 1 1 2 2 2 3 3 4"


def test_unit_and_truncate():
    """The unit series and truncation."""
    assert GradedDims.unit(3).dims == (1, 0, 0, 0)
    assert GradedDims((1, 2, 3)).truncate(1).dims == (1, 2)
    with pytest.raises(ValueError):
        GradedDims((1, 2)).truncate(4)


def test_first_difference_uses_smaller_cap():
    """Comparison stops at the shorter series."""
    assert GradedDims((1, 0, 2)).first_difference(GradedDims((1, 0))) is None
    assert GradedDims((1, 0, 2)).first_difference(GradedDims((1, 1, 2))) == 1
    assert GradedDims((1, 0, 2)).agrees_with(GradedDims((1, 0, 2, 5)))


def test_invalid_dims():
    """Empty or negative series are rejected."""
    with pytest.raises(ValueError):
        GradedDims(())
    with pytest.raises(ValueError):
        GradedDims((1, -1))


def test_tensor_series_empty_is_unit():
    """No factors gives the ground field."""
    assert tensor_series([], 4) == GradedDims.unit(4)


def test_exponent_vectors():
    """Weighted compositions of 6 over degrees 2 and 3 with heights."""
    assert exponent_vectors([2, 3], [None, None], 6) == [(0, 2), (3, 0)]
    assert exponent_vectors([2, 3], [2, None], 6) == [(0, 2)]
    assert exponent_vectors([2], [None], -1) == []
