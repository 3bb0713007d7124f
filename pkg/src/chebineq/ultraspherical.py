"""Gegenbauer polynomials and the finite-increment inequality.

Normalisation is the Gegenbauer one, ``C_m^1 = U_m`` so that
``T_n' = n C_{n-1}^1``.  ``lam = 0`` does not mean the (trivial) Gegenbauer
limit: it selects ``T_n`` itself, whose sign behaviour is the same up to a
positive factor.

For ``lam >= 1`` the increment ``D(x) = P(1) - P(x) - (1 - x) P'(x)`` is
non-negative on [0, 1]; for ``lam < 1`` it can fail.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import check_degree, eval_cheb
from .inequalities import TOL_EQUAL, VerificationReport, scan_nonneg

CHEBYSHEV_T = 0.0
MAX_CONNECTION_DEGREE = 64
COUNTEREXAMPLE_TOL = 1e-8


class ParameterError(ValueError):
    pass


def check_lambda(lam: float) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam <= -0.5:
        raise ParameterError(f"lambda must exceed -1/2, got {lam}")
    return lam


def _gegenbauer(lam: float, n: int, x: np.ndarray) -> np.ndarray:
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 2 * lam * x
    for m in range(2, n + 1):
        prev, cur = cur, (2 * (m + lam - 1) * x * cur - (m + 2 * lam - 2) * prev) / m
    return cur


def eval_ultra(lam: float, n: int, x):
    """``(C_n^lam(x), d/dx C_n^lam(x))``; ``lam = 0`` gives ``(T_n, T_n')``."""
    lam = check_lambda(lam)
    n = check_degree(n)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if lam == CHEBYSHEV_T:
        v = eval_cheb(n, x)
        value, deriv = v.t, v.t1
    else:
        value = _gegenbauer(lam, n, x)
        deriv = 2 * lam * _gegenbauer(lam + 1, n - 1, x) if n > 0 else np.zeros_like(x)
    if scalar:
        return float(value[0]), float(deriv[0])
    return value, deriv


def value_at_one(lam: float, n: int) -> float:
    """``C_n^lam(1) = prod_{j<n} (2 lam + j) / (j + 1)``."""
    if lam == CHEBYSHEV_T:
        return 1.0
    out = 1.0
    for j in range(n):
        out *= (2 * lam + j) / (j + 1)
    return out


@dataclass(frozen=True)
class ConnectionExpansion:
    mu: float
    lam: float
    n: int
    coeffs: np.ndarray
    residual: float

    def __call__(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        basis = np.array([eval_ultra(self.lam, m, x)[0] for m in range(self.n + 1)])
        return self.coeffs @ basis


def connection_coeffs(mu: float, lam: float, n: int) -> ConnectionExpansion:
    """Coefficients ``c_m`` with ``C_n^mu = sum_m c_m C_m^lam``.

    Solved from evaluations at ``n + 1`` Chebyshev points.  A relative solve
    residual above 1e-8 triggers a warning.
    """
    mu, lam = check_lambda(mu), check_lambda(lam)
    n = check_degree(n)
    if n > MAX_CONNECTION_DEGREE:
        raise ValueError(f"n={n} exceeds {MAX_CONNECTION_DEGREE}; the solve is ill-conditioned")
    half = (n + 1) // 2
    pos = np.cos((2 * np.arange(half) + 1) * np.pi / (2 * n + 2))
    mid = [0.0] if n % 2 == 0 else []
    pts = np.concatenate([pos, mid, -pos[::-1]])  # exactly mirrored pairs
    a = np.array([eval_ultra(lam, m, pts)[0] for m in range(n + 1)]).T
    b = eval_ultra(mu, n, pts)[0]
    # rows (f(x) +- f(-x)) / 2 split the system into even and odd blocks with exact zeros
    plus = np.r_[(a[:half] + a[::-1][:half]) / 2, a[half:half + len(mid)]]
    minus = (a[:half] - a[::-1][:half]) / 2
    rhs = np.r_[(b[:half] + b[::-1][:half]) / 2, b[half:half + len(mid)], (b[:half] - b[::-1][:half]) / 2]
    coeffs = np.linalg.solve(np.vstack([plus, minus]), rhs)
    scale = max(1.0, float(np.max(np.abs(b))))
    residual = float(np.max(np.abs(a @ coeffs - b))) / scale
    if residual > 1e-8:
        warnings.warn(f"connection solve residual {residual:.2e}", RuntimeWarning, stacklevel=2)
    return ConnectionExpansion(mu, lam, n, coeffs, residual)


def increment(lam: float, n: int, x):
    """``D(x) = P_n(1) - P_n(x) - (1 - x) P_n'(x)``."""
    value, deriv = eval_ultra(lam, n, x)
    return value_at_one(lam, n) - value - (1 - np.asarray(x)) * deriv


def _label(lam: float, n: int) -> str:
    if lam == CHEBYSHEV_T:
        return f"increment[T_{n}]"
    return f"increment[C_{n}^{lam:g}]"


def corollary1_check(lam: float, n: int, grid: int = 10_001) -> VerificationReport:
    """Scan ``D >= -1e-10 * P_n(1)`` on [0, 1]."""
    lam = check_lambda(lam)
    n = check_degree(n)
    scale = value_at_one(lam, n)
    report = scan_nonneg(lambda x: increment(lam, n, x), 0.0, 1.0, grid,
                         tol=1e-10 * scale, label=_label(lam, n),
                         tol_equal=TOL_EQUAL * max(1.0, scale))
    if lam < 1:
        report.notes.append("lambda < 1: the inequality is not claimed")
    return report


@dataclass(frozen=True)
class Counterexample:
    n: int
    x: float
    value: float


def find_counterexample(lam: float, n_max: int, points: int = 10_000):
    """First ``(n, x)``, smallest ``n`` then smallest ``x``, with ``D(x) < -1e-8``.

    Returns ``None`` when the scan over ``n = 2..n_max`` finds nothing.
    """
    lam = check_lambda(lam)
    if lam >= 1:
        raise ParameterError("counterexample search needs lambda < 1")
    n_max = check_degree(n_max, 2)
    xs = np.linspace(0.0, 1.0, points)
    for n in range(2, n_max + 1):
        d = increment(lam, n, xs)
        bad = np.flatnonzero(d < -COUNTEREXAMPLE_TOL)
        if len(bad):
            i = int(bad[0])
            return Counterexample(n, float(xs[i]), float(d[i]))
    return None
