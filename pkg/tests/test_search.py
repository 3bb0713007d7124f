import numpy as np
import pytest
from hypothesis import given, strategies as st

from chebineq.search import dual_grid, golden_section, local_minima


@given(st.floats(-0.9, 0.9))
def test_golden_section_quadratic(m):
    x, fx = golden_section(lambda t: (t - m) ** 2, [-1.0], [1.0])
    assert x[0] == pytest.approx(m, abs=1e-7)
    assert fx[0] <= 1e-14


def test_golden_section_end_minimum():
    x, fx = golden_section(lambda t: t, [0.25], [0.75])
    assert x[0] == 0.25 and fx[0] == 0.25


def test_golden_section_vectorised():
    f = lambda t: np.cos(3 * t)
    x, fx = golden_section(f, [0.5, 2.5], [1.5, 3.5])
    np.testing.assert_allclose(x, [np.pi / 3, np.pi], atol=1e-7)
    np.testing.assert_allclose(fx, [-1.0, -1.0], atol=1e-14)


@given(st.floats(-1.0, 0.5), st.integers(2, 300))
def test_dual_grid(lo, size):
    hi = lo + 0.5
    g = dual_grid(lo, hi, size)
    assert g[0] == lo and g[-1] == hi
    assert np.all(np.diff(g) > 0)
    assert len(g) <= 2 * size


def test_dual_grid_clusters_near_ends():
    g = dual_grid(-1.0, 1.0, 101)
    # the theta half puts a point within 1e-3 of the end
    assert np.sort(1 - g)[1] < 1e-3


def test_local_minima():
    v = np.array([3.0, 1.0, 2.0, 0.5, 0.5, 4.0, 3.0])
    assert list(local_minima(v)) == [1, 3, 4, 6]
    assert list(local_minima(np.array([1.0]))) == [0]
    assert list(local_minima(np.array([0.0, 1.0]))) == [0]
