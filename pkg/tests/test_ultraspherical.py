import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import eval_chebyt, eval_gegenbauer, poch

from chebineq.core import eval_cheb
from chebineq.ultraspherical import (
    CHEBYSHEV_T,
    ParameterError,
    connection_coeffs,
    corollary1_check,
    eval_ultra,
    find_counterexample,
    increment,
    value_at_one,
)


def connection_oracle(mu, lam, n):
    """Closed-form Gegenbauer connection coefficients."""
    c = np.zeros(n + 1)
    for j in range(n // 2 + 1):
        m = n - 2 * j
        c[m] = ((lam + m) / lam * poch(mu - lam, j) * poch(mu, n - j)
                / (math.factorial(j) * poch(lam + 1, n - j)))
    return c


@given(st.floats(0.1, 6.0), st.integers(0, 40), st.floats(-1.0, 1.0))
def test_values_match_scipy(lam, n, x):
    v, _ = eval_ultra(lam, n, x)
    ref = eval_gegenbauer(n, lam, x)
    assert v == pytest.approx(ref, rel=1e-10, abs=1e-10 * value_at_one(lam, n))


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("n", [1, 6, 15])
def test_derivative_finite_differences(lam, n, rng):
    xs = rng.uniform(-0.95, 0.95, 40)
    h = 1e-6
    fd = (eval_gegenbauer(n, lam, xs + h) - eval_gegenbauer(n, lam, xs - h)) / (2 * h)
    _, d = eval_ultra(lam, n, xs)
    np.testing.assert_allclose(d, fd, rtol=1e-6, atol=1e-6 * value_at_one(lam, n) * n * n)


def test_chebyshev_branch(rng):
    xs = rng.uniform(-1, 1, 50)
    v, d = eval_ultra(CHEBYSHEV_T, 7, xs)
    np.testing.assert_allclose(v, eval_chebyt(7, xs), atol=1e-13)
    np.testing.assert_allclose(d, eval_cheb(7, xs).t1, atol=1e-13)
    assert value_at_one(CHEBYSHEV_T, 7) == 1.0


@pytest.mark.parametrize("n", [1, 2, 10, 50, 100])
def test_u_is_scaled_derivative(n, rng):
    xs = rng.uniform(-1, 1, 200)
    u, _ = eval_ultra(1.0, n - 1, xs)
    t1 = eval_cheb(n, xs).t1
    np.testing.assert_allclose(n * u, t1, rtol=1e-10, atol=1e-10 * n * n)


def test_value_at_one():
    for lam in (0.5, 1.0, 2.0, 3.5):
        for n in (0, 1, 5, 12):
            assert value_at_one(lam, n) == pytest.approx(eval_gegenbauer(n, lam, 1.0), rel=1e-13)


def test_parameter_errors():
    with pytest.raises(ParameterError):
        eval_ultra(-0.5, 3, 0.1)
    with pytest.raises(ParameterError):
        eval_ultra(math.nan, 3, 0.1)
    with pytest.raises(ParameterError):
        find_counterexample(1.0, 10)


@pytest.mark.parametrize("mu,lam", [(2, 1), (1.5, 1), (3, 2), (2.5, 0.5)])
@pytest.mark.parametrize("n", [0, 1, 5, 16, 32])
def test_connection_matches_closed_form(mu, lam, n):
    exp = connection_coeffs(mu, lam, n)
    ref = connection_oracle(mu, lam, n)
    np.testing.assert_allclose(exp.coeffs, ref, rtol=1e-9, atol=1e-9 * np.max(np.abs(ref)))
    assert np.all(exp.coeffs >= -1e-12)
    assert exp.residual <= 1e-10


def test_connection_parity_zeros():
    c = connection_coeffs(3, 2, 11).coeffs
    assert np.all(c[0::2] == 0.0)


def test_connection_expansion_evaluates(rng):
    exp = connection_coeffs(2.0, 1.0, 9)
    xs = rng.uniform(-1, 1, 30)
    np.testing.assert_allclose(exp(xs), eval_gegenbauer(9, 2.0, xs), rtol=1e-10, atol=1e-10)


def test_connection_degree_cap():
    with pytest.raises(ValueError):
        connection_coeffs(2, 1, 65)


def test_increment_examples():
    assert increment(CHEBYSHEV_T, 5, 0.0) == pytest.approx(-4.0, abs=1e-13)
    # D is zero at x = 1 for every polynomial
    assert increment(2.0, 7, 1.0) == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize("lam", [1.0, 1.25, 1.5, 2.0, 3.0, 5.0])
@pytest.mark.parametrize("n", [0, 1, 2, 7, 18, 30])
def test_increment_inequality_holds(lam, n):
    rep = corollary1_check(lam, n, grid=2001)
    assert rep.passed
    # affine polynomials have D = 0 exactly
    assert rep.identically_zero == (n <= 1)


def test_increment_note_below_one():
    rep = corollary1_check(0.5, 6, grid=501)
    assert rep.notes


def test_counterexamples():
    hit = find_counterexample(CHEBYSHEV_T, 10)
    assert (hit.n, hit.x) == (5, 0.0)
    assert hit.value == pytest.approx(-4.0, abs=1e-12)
    hit = find_counterexample(0.5, 10)
    assert hit is not None and hit.value < 0
    # smallest n with a failure is reported first
    assert find_counterexample(CHEBYSHEV_T, 4) is None
