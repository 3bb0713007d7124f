"""Hermite interpolation at the Chebyshev extrema and the positivity certificate.

The interpolant matches values at all ``n + 1`` nodes ``x_k = cos(k pi/n)`` and
derivatives at the ``n - 1`` interior ones.  For a polynomial of degree at most
``2n - 1`` it is exact, which turns ``FA(a) = (1 + a) F1 - F3`` into

    FA(a)(x) = a (1 + (-1)^n) (1 - x) T_n'(x)^2 / n^4
               + (1 - x^2) sum_k l_k(x)^2 / (1 - x_k^2)^2 * L_k(FA; x)

with each ``L_k`` affine in ``x``.  The sign of every ``L_k`` on the relevant
region is what proves ``FA >= 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import check_degree, eval_cheb, node_second_derivatives, node_system
from .inequalities import InequalityFn, Kind, fa_parameter, witness_index

TOL_RECONSTRUCT = 1e-10
TOL_VANISH = 1e-14
TOL_SIGN = 1e-14
SIGN_GRID_STEP = 1e-3


class CertificateError(RuntimeError):
    def __init__(self, message: str, worst_x: float):
        super().__init__(message)
        self.worst_x = worst_x


class HermiteScheme:
    """Node data and the Lagrange basis for interpolation at the zeros of ``T_n'``."""

    def __init__(self, n: int):
        self.n = check_degree(n, 2)
        self.nodes = node_system(n)
        self.xk = np.asarray(self.nodes.nodes[1:-1])
        self.theta_k = np.arange(1, n) * math.pi / n
        self.basis_denoms = node_second_derivatives(n)

    def lagrange_basis(self, k: int, x):
        """``l_k(x) = T_n'(x) / ((x - x_k) T_n''(x_k))``.

        Within half a node spacing (in theta) of ``x_k`` the quotient is taken
        in trigonometric form, ``sin(n d) / sin(d / 2)`` with ``d = theta -
        theta_k``, which has no cancellation and equals ``2n`` at ``d = 0``.
        """
        if not 1 <= k <= self.n - 1:
            raise IndexError(f"basis index {k} outside 1..{self.n - 1}")
        n = self.n
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        xk = self.xk[k - 1]
        thk = self.theta_k[k - 1]
        theta = np.arccos(x)
        d = theta - thk
        near = np.abs(d) < math.pi / (2 * n)
        out = np.empty_like(x)
        if np.any(near):
            dn = d[near]
            th = theta[near]
            safe = np.where(dn == 0, 1.0, dn)
            ratio = np.where(dn == 0, 2.0 * n, np.sin(n * safe) / np.sin(safe / 2))
            # T'(x) / (x - x_k) = n (-1)^k ratio / (-2 sin(theta) sin((theta + theta_k)/2))
            sign = -1.0 if k % 2 else 1.0
            q = n * sign * ratio / (-2 * np.sin(th) * np.sin((th + thk) / 2))
            out[near] = q / self.basis_denoms[k - 1]
        far = ~near
        if np.any(far):
            xf = x[far]
            out[far] = eval_cheb(n, xf).t1 / ((xf - xk) * self.basis_denoms[k - 1])
        return float(out[0]) if scalar else out

    def basis_matrix(self, x) -> np.ndarray:
        """Rows ``l_1(x), ..., l_{n-1}(x)``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return np.array([self.lagrange_basis(k, x) for k in range(1, self.n)])

    def weights(self, x) -> np.ndarray:
        """Rows ``l_k(x)^2 / (1 - x_k^2)^2``."""
        w = (1 - self.xk) * (1 + self.xk)
        return self.basis_matrix(x) ** 2 / (w**2)[:, None]

    def l_functional(self, k: int, fval, fderiv, x):
        xk = self.xk[k - 1]
        return (1 - xk * x) * fval + (1 - xk) * (1 + xk) * (x - xk) * fderiv


def l_functional(scheme: HermiteScheme, k: int, fval, fderiv, x):
    """``L_k(f; x) = (1 - x_k x) f(x_k) + (1 - x_k^2)(x - x_k) f'(x_k)``."""
    return scheme.l_functional(k, fval, fderiv, x)


def hermite_interp(scheme: HermiteScheme, f_values, f_derivs, f_at_endpoints, x):
    """Evaluate the Hermite interpolant.

    ``f_values`` and ``f_derivs`` are taken at the interior nodes ``x_1..x_{n-1}``,
    ``f_at_endpoints`` is ``(f(1), f(-1))``.
    """
    n = scheme.n
    f_values = np.asarray(f_values, dtype=float)
    f_derivs = np.asarray(f_derivs, dtype=float)
    if f_values.shape != (n - 1,) or f_derivs.shape != (n - 1,):
        raise ValueError(f"expected {n - 1} interior values and derivatives, got "
                         f"{f_values.shape} and {f_derivs.shape}")
    if len(f_at_endpoints) != 2:
        raise ValueError("f_at_endpoints must be the pair (f(1), f(-1))")
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    f0, fn = f_at_endpoints
    t1 = eval_cheb(n, x).t1
    boundary = t1**2 / (2.0 * n**4) * ((1 + x) * f0 + (1 - x) * fn)
    xk = scheme.xk[:, None]
    lk = (1 - xk * x) * f_values[:, None] + (1 - xk) * (1 + xk) * (x - xk) * f_derivs[:, None]
    inner = np.sum(scheme.weights(x) * lk, axis=0)
    out = boundary + (1 - x) * (1 + x) * inner
    return float(out[0]) if scalar else out


# closed forms at the nodes


def node_values_closed(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``F1(x_k)`` and ``F3(x_k)`` for ``k = 0..n``."""
    n = check_degree(n, 2)
    xs = node_system(n).nodes
    k = np.arange(n + 1)
    sgn = np.where(k % 2 == 0, 1.0, -1.0)
    f1 = 2 + sgn
    f3 = 1 - xs
    f1[0] = f3[0] = 0.0
    f1[-1] = f3[-1] = 2.0 * (1 + (-1) ** n)
    return f1, f3


def derivs_at_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``F1'(x_k)`` and ``F3'(x_k)`` at the interior nodes ``k = 1..n-1``."""
    n = check_degree(n, 2)
    xk = node_system(n).nodes[1:-1]
    k = np.arange(1, n)
    sgn = np.where(k % 2 == 0, 1.0, -1.0)
    d1 = sgn * (xk + 2) / ((1 - xk) * (1 + xk))
    d3 = sgn / (1 + xk) - 1
    return d1, d3


def lk_f1_closed(xk: float, k: int, x):
    if k % 2 == 0:
        return (1 - xk) * (3 + 2 * x + xk)
    return (1 + xk) * (1 + xk - 2 * x)


def lk_f3_closed(xk: float, k: int, x):
    if k % 2 == 0:
        return (1 - xk) * (1 + xk * xk - 2 * xk * x)
    return (1 - xk) * (1 + xk) * (1 + xk - 2 * x)


def lk_fa_coefficients(xk: float, k: int, a: float) -> tuple[float, float]:
    """``(c0, c1)`` with ``L_k(FA; x) = c0 + c1 x``."""
    if k % 2 == 0:
        slope = 2 * (1 - xk) * (1 + a + xk)
        return slope + (1 - xk) * (a - xk) * (1 + xk), slope
    g = (a + xk) * (1 + xk)
    return g * (1 + xk), -2 * g


def lk_fa_closed(xk: float, k: int, a: float, x):
    if k % 2 == 0:
        return (1 - xk) * (2 * (1 + x) * (1 + a + xk) + (a - xk) * (1 + xk))
    return (a + xk) * (1 + xk) * (1 + xk - 2 * x)


@dataclass(frozen=True)
class Region:
    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    def __str__(self):
        return f"{'[' if self.lo_closed else '('}{self.lo:g}, {self.hi:g}{']' if self.hi_closed else ')'}"


@dataclass(frozen=True)
class CertificateTerm:
    k: int
    parity: str
    xk: float
    a: float
    c0: float
    c1: float
    vanishing: bool
    sign_region: Region | None
    empirical_region: Region | None

    def value(self, x):
        """``L_k(FA; x)`` from the closed form."""
        return lk_fa_closed(self.xk, self.k, self.a, x)


def _empirical_region(c0: float, c1: float) -> Region | None:
    # where c0 + c1 x > 0 inside [-1, 1]
    lo, hi = -1.0, 1.0
    if c1 == 0:
        return Region(lo, hi, True, True) if c0 > 0 else None
    root = -c0 / c1
    if c1 > 0:
        if root >= hi:
            return None
        return Region(max(lo, root), hi, root < lo, True)
    if root <= lo:
        return None
    return Region(lo, min(hi, root), True, root > hi)


def _claimed_region(n: int, k: int) -> Region:
    # what the certificate argument needs from term k
    if k % 2 == 0:
        if n % 2 == 0:
            return Region(-1.0, 1.0, True, True)
        return Region(-1.0, 1.0, False, True)
    return Region(-1.0, 0.0, False, True)


@dataclass
class Certificate:
    n: int
    a: float
    scheme: HermiteScheme
    boundary_coeff: float
    terms: list[CertificateTerm]

    def boundary_term(self, x):
        t1 = eval_cheb(self.n, x).t1
        return self.boundary_coeff * (1 - x) * t1**2

    def contributions(self, x) -> np.ndarray:
        """Rows ``(1 - x^2) w_k(x) L_k(FA; x)``, one per term."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        lk = np.array([t.value(x) for t in self.terms])
        return (1 - x) * (1 + x) * self.scheme.weights(x) * lk

    def __call__(self, x):
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = self.boundary_term(x) + np.sum(self.contributions(x), axis=0)
        return float(out[0]) if scalar else out

    def vanishing_indices(self) -> list[int]:
        return [t.k for t in self.terms if t.vanishing]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "boundary_coefficient": self.boundary_coeff,
            "terms": [
                {
                    "k": t.k,
                    "parity": t.parity,
                    "x_k": t.xk,
                    "coefficients": [t.c0, t.c1],
                    "vanishing": t.vanishing,
                    "sign_region": None if t.sign_region is None else str(t.sign_region),
                    "empirical_region": None if t.empirical_region is None else str(t.empirical_region),
                }
                for t in self.terms
            ],
        }


def build_certificate(n: int, a: float | None = None) -> Certificate:
    """Decompose ``FA(a)`` over the Hermite scheme; ``a`` defaults to ``cos(pi/n)``
    for even ``n`` and ``cos(2 pi/n)`` for odd ``n``."""
    n = check_degree(n, 4)
    if a is None:
        a = fa_parameter(n)
    scheme = HermiteScheme(n)
    terms = []
    for k in range(1, n):
        xk = float(scheme.xk[k - 1])
        c0, c1 = lk_fa_coefficients(xk, k, a)
        vanishing = abs(c0) <= TOL_VANISH and abs(c1) <= TOL_VANISH
        terms.append(CertificateTerm(
            k=k,
            parity="even" if k % 2 == 0 else "odd",
            xk=xk,
            a=a,
            c0=c0,
            c1=c1,
            vanishing=vanishing,
            sign_region=None if vanishing else _claimed_region(n, k),
            empirical_region=_empirical_region(c0, c1),
        ))
    boundary = a * (1 + (-1) ** n) / n**4
    return Certificate(n, float(a), scheme, boundary, terms)


@dataclass
class CertificateReport:
    n: int
    a: float
    grid_points: int
    reconstruction_error: float
    worst_x: float
    vanishing: list[int]
    sign_failures: list[tuple[int, float, float]]
    witness_x: float
    witness_value: float
    witness_expected: float
    witness_leak: float
    passed: bool
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "grid_points": self.grid_points,
            "reconstruction_error": self.reconstruction_error,
            "worst_x": self.worst_x,
            "vanishing": list(self.vanishing),
            "sign_failures": [list(s) for s in self.sign_failures],
            "witness_x": self.witness_x,
            "witness_value": self.witness_value,
            "witness_expected": self.witness_expected,
            "witness_leak": self.witness_leak,
            "passed": self.passed,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CertificateReport":
        d = dict(d)
        d["sign_failures"] = [tuple(s) for s in d["sign_failures"]]
        return cls(**d)


def _sign_check(term: CertificateTerm) -> list[tuple[float, float]]:
    r = term.sign_region
    m = max(2, int(round((r.hi - r.lo) / SIGN_GRID_STEP)) + 1)
    xs = np.linspace(r.lo, r.hi, m)
    vals = np.asarray(term.value(xs), dtype=float)
    need_strict = np.ones(m, dtype=bool)
    need_strict[0] = r.lo_closed
    need_strict[-1] = r.hi_closed
    bad = np.where(need_strict, vals <= 0, vals < -TOL_SIGN)
    return [(float(x), float(v)) for x, v in zip(xs[bad], vals[bad])]


def verify_certificate(cert: Certificate, grid: int = 10_001) -> CertificateReport:
    """Reconstruction, per-term sign regions, and the equality / witness mechanism.

    Raises :class:`CertificateError` when the decomposition does not reproduce
    ``FA(a)`` to ``TOL_RECONSTRUCT``.
    """
    if grid < 2:
        raise ValueError("grid must have at least 2 points")
    n, a = cert.n, cert.a
    xs = np.union1d(np.linspace(-1.0, 1.0, grid), cert.scheme.nodes.nodes)
    direct = InequalityFn(Kind.FA, n, a)(xs)
    err = np.abs(cert(xs) - direct)
    worst = int(np.argmax(err))
    if err[worst] > TOL_RECONSTRUCT:
        raise CertificateError(
            f"reconstruction error {err[worst]:.3e} at x = {xs[worst]!r}", float(xs[worst]))

    failures = []
    for term in cert.terms:
        if term.sign_region is not None:
            failures += [(term.k, x, v) for x, v in _sign_check(term)]

    w = witness_index(n)
    xw = float(cert.scheme.xk[w - 1])
    contrib = cert.contributions(xw)[:, 0]
    leak = max(abs(cert.boundary_term(xw)), float(np.max(np.abs(np.delete(contrib, w - 1)))))
    value = float(cert.boundary_term(xw) + contrib.sum())
    expected = a + xw

    report = CertificateReport(
        n=n,
        a=a,
        grid_points=len(xs),
        reconstruction_error=float(err[worst]),
        worst_x=float(xs[worst]),
        vanishing=cert.vanishing_indices(),
        sign_failures=failures,
        witness_x=xw,
        witness_value=value,
        witness_expected=expected,
        witness_leak=leak,
        passed=False,
    )
    if abs(value - expected) > TOL_RECONSTRUCT:
        report.notes.append(f"witness value {value!r} differs from a + x_w = {expected!r}")
    if leak > TOL_RECONSTRUCT:
        report.notes.append(f"terms other than k={w} leak {leak:.3e} at the witness")
    if value < -TOL_RECONSTRUCT:
        report.notes.append(f"FA(a) is negative at x_{w} = {xw!r}: a is below the sharp value")
    report.passed = not failures and not report.notes
    return report
