import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.polynomial import Chebyshev

from chebineq.core import node_system
from chebineq.hermite import (
    Certificate,
    CertificateError,
    CertificateReport,
    HermiteScheme,
    build_certificate,
    derivs_at_nodes,
    hermite_interp,
    l_functional,
    lk_f1_closed,
    lk_f3_closed,
    lk_fa_closed,
    lk_fa_coefficients,
    node_values_closed,
    verify_certificate,
)
from chebineq.inequalities import InequalityFn, Kind, fa_parameter, witness_index


def interp_poly(n, p, x):
    s = HermiteScheme(n)
    xk = s.xk
    return hermite_interp(s, p(xk), p.deriv()(xk), (p(1.0), p(-1.0)), x)


def product_basis(n, k, x):
    # l_k as a product over the other zeros of T_n'
    xk = node_system(n).interior
    others = np.delete(xk, k - 1)
    x = np.atleast_1d(x)
    return np.prod((x[:, None] - others) / (xk[k - 1] - others), axis=1)


def test_basis_example():
    s = HermiteScheme(4)
    expected = (32 * 0.729 - 16 * 0.9) / (0.9 * -16)
    assert s.lagrange_basis(2, 0.9) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("n", [2, 4, 7, 16, 64])
def test_basis_kronecker(n):
    s = HermiteScheme(n)
    np.testing.assert_allclose(s.basis_matrix(s.xk), np.eye(n - 1), atol=1e-10)


@pytest.mark.parametrize("n", [5, 12, 25])
def test_basis_matches_product_form(n, rng):
    s = HermiteScheme(n)
    xs = np.concatenate([rng.uniform(-1, 1, 200), s.xk + 1e-12, s.xk - 3e-9, [-1.0, 1.0]])
    for k in range(1, n):
        np.testing.assert_allclose(s.lagrange_basis(k, xs), product_basis(n, k, xs), atol=1e-11)


def test_basis_index_check():
    s = HermiteScheme(5)
    with pytest.raises(IndexError):
        s.lagrange_basis(0, 0.1)
    with pytest.raises(IndexError):
        s.lagrange_basis(5, 0.1)


def test_basis_scalar_return():
    assert isinstance(HermiteScheme(6).lagrange_basis(3, 0.2), float)


def test_l_functional_constant():
    s = HermiteScheme(6)
    xs = np.linspace(-1, 1, 11)
    for k in range(1, 6):
        np.testing.assert_allclose(l_functional(s, k, 1.0, 0.0, xs), 1 - s.xk[k - 1] * xs)


@pytest.mark.parametrize("n", [4, 7, 12, 20])
def test_hermite_reproduces_degree_2n_minus_1(n, rng):
    xs = np.linspace(-1, 1, 401)
    for _ in range(200):
        p = Chebyshev(rng.uniform(-1, 1, 2 * n))
        ref = p(xs)
        err = np.max(np.abs(interp_poly(n, p, xs) - ref)) / np.max(np.abs(ref))
        assert err <= 1e-8


@pytest.mark.parametrize("n", [4, 12, 20])
def test_hermite_misses_degree_2n(n, rng):
    xs = np.linspace(-1, 1, 401)
    coef = rng.uniform(-1, 1, 2 * n + 1)
    coef[-1] = 1.0
    p = Chebyshev(coef)
    assert np.max(np.abs(interp_poly(n, p, xs) - p(xs))) > 1e-3


def test_hermite_constant_and_conditions(rng):
    n = 9
    s = HermiteScheme(n)
    xs = np.linspace(-1, 1, 51)
    one = hermite_interp(s, np.ones(n - 1), np.zeros(n - 1), (1.0, 1.0), xs)
    np.testing.assert_allclose(one, 1.0, atol=1e-13)

    # interpolation conditions for a function that is not a polynomial
    f, df = np.exp, np.exp
    nodes = s.nodes.nodes
    h = lambda x: hermite_interp(s, f(s.xk), df(s.xk), (f(1.0), f(-1.0)), x)
    np.testing.assert_allclose(h(nodes), f(nodes), atol=1e-12)
    eps = 1e-6
    fd = (h(s.xk + eps) - h(s.xk - eps)) / (2 * eps)
    np.testing.assert_allclose(fd, df(s.xk), atol=1e-7)


def test_hermite_dimension_checks():
    s = HermiteScheme(5)
    with pytest.raises(ValueError):
        hermite_interp(s, np.ones(3), np.ones(4), (1, 1), 0.0)
    with pytest.raises(ValueError):
        hermite_interp(s, np.ones(4), np.ones(4), (1,), 0.0)


@pytest.mark.parametrize("n", range(4, 65))
def test_node_values(n):
    xs = node_system(n).nodes
    f1, f3 = node_values_closed(n)
    np.testing.assert_allclose(InequalityFn(Kind.F1, n)(xs), f1, atol=1e-11)
    np.testing.assert_allclose(InequalityFn(Kind.F3, n)(xs), f3, atol=1e-11)


@pytest.mark.parametrize("n", range(4, 65, 3))
def test_node_derivatives_finite_differences(n):
    xk = node_system(n).interior
    d1, d3 = derivs_at_nodes(n)
    h = 1e-7
    for kind, ref in ((Kind.F1, d1), (Kind.F3, d3)):
        fn = InequalityFn(kind, n)
        fd = (fn(xk + h) - fn(xk - h)) / (2 * h)
        np.testing.assert_allclose(fd, ref, atol=1e-6 * max(1.0, np.max(np.abs(ref))))


@pytest.mark.parametrize("n", range(4, 65))
def test_node_derivatives_analytic(n):
    # the analytic derivative carries ~n^2 eps of theta rounding at the nodes
    d1, d3 = derivs_at_nodes(n)
    xk = node_system(n).interior
    for kind, ref in ((Kind.F1, d1), (Kind.F3, d3)):
        got = InequalityFn(kind, n).derivative(xk)
        assert np.max(np.abs(got - ref) / np.maximum(1, np.abs(ref))) <= 1e-15 * n * n * 10


def test_node_derivative_example():
    d1, d3 = derivs_at_nodes(4)
    assert d1[1] == pytest.approx(2.0, abs=1e-15)
    assert d3[1] == pytest.approx(0.0, abs=1e-15)
    assert np.all(np.sign(d1) == np.where(np.arange(1, 4) % 2 == 0, 1, -1))


@given(st.integers(4, 64), st.data())
def test_closed_forms_match_generic(n, data):
    s = HermiteScheme(n)
    f1v, f3v = node_values_closed(n)
    d1, d3 = derivs_at_nodes(n)
    k = data.draw(st.integers(1, n - 1))
    a = data.draw(st.floats(0.0, 1.0))
    xs = np.array(data.draw(st.lists(st.floats(-1, 1), min_size=1, max_size=8)))
    xk = s.xk[k - 1]
    g1 = s.l_functional(k, f1v[k], d1[k - 1], xs)
    g3 = s.l_functional(k, f3v[k], d3[k - 1], xs)
    np.testing.assert_allclose(lk_f1_closed(xk, k, xs), g1, atol=1e-12)
    np.testing.assert_allclose(lk_f3_closed(xk, k, xs), g3, atol=1e-12)
    np.testing.assert_allclose(lk_fa_closed(xk, k, a, xs), (1 + a) * g1 - g3, atol=1e-12)
    c0, c1 = lk_fa_coefficients(xk, k, a)
    np.testing.assert_allclose(c0 + c1 * xs, lk_fa_closed(xk, k, a, xs), atol=1e-12)


@pytest.mark.parametrize("n", [4, 5, 12, 13, 32, 33, 63, 64])
def test_certificate_sharp(n):
    cert = build_certificate(n)
    assert cert.a == fa_parameter(n)
    assert cert.vanishing_indices() == [witness_index(n)]
    rep = verify_certificate(cert)
    assert rep.passed, rep.notes
    assert rep.reconstruction_error <= 1e-10
    assert rep.witness_value == pytest.approx(0.0, abs=1e-10)


def test_certificate_even_terms_positive_on_closed_interval():
    n = 12
    cert = build_certificate(n)
    xs = np.linspace(-1, 1, 2001)
    for t in cert.terms:
        if t.k % 2 == 0:
            assert np.all(t.value(xs) > 0)
        elif t.k < n - 2:
            assert np.all(t.value(xs[xs <= 0]) >= 0)
            assert np.all(t.value(xs[(xs > -1) & (xs <= 0)]) > 0)


def test_certificate_boundary_coefficient():
    assert build_certificate(12).boundary_coeff == pytest.approx(2 * math.cos(math.pi / 12) / 12**4)
    assert build_certificate(13).boundary_coeff == 0.0


@pytest.mark.parametrize("n,a", [(12, math.cos(math.pi / 12) - 0.01), (13, 0.5), (20, 0.3)])
def test_certificate_witness_below_sharp(n, a):
    rep = verify_certificate(build_certificate(n, a))
    assert rep.witness_value == pytest.approx(a + rep.witness_x, abs=1e-10)
    assert rep.witness_value < 0
    assert not rep.passed


def test_certificate_example_n12():
    n = 12
    a = math.cos(math.pi / n) - 0.01
    rep = verify_certificate(build_certificate(n, a))
    assert rep.witness_value == pytest.approx(-0.01, abs=1e-10)
    assert rep.witness_leak <= 1e-10


def test_certificate_reconstruction_failure():
    cert = build_certificate(8)
    broken = Certificate(cert.n, cert.a, cert.scheme, cert.boundary_coeff * 2 + 1e-3, cert.terms)
    with pytest.raises(CertificateError) as exc:
        verify_certificate(broken)
    assert -1 <= exc.value.worst_x <= 1


def test_certificate_serialization():
    cert = build_certificate(13)
    d = cert.to_dict()
    assert {"n", "a", "boundary_coefficient", "terms"} <= set(d)
    assert len(d["terms"]) == 12
    assert d["terms"][10]["vanishing"] and d["terms"][10]["sign_region"] is None
    rep = verify_certificate(cert, grid=501)
    assert CertificateReport.from_dict(rep.to_dict()) == rep
