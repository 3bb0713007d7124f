"""Chebyshev polynomials of the first kind: values, derivatives, nodes and zeros.

``T_n`` and ``T_n'`` are evaluated in trigonometric form, ``T_n''`` and
``T_n'''`` from the second and third order differential equations.  Within a
thin zone around ``x = +-1`` (``n^2 (1 - |x|) < ENDPOINT_ZONE``) the
derivatives come from a Taylor expansion about the endpoint instead, since the
ODE quotients lose all accuracy there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

ENDPOINT_ZONE = 0.25
TAYLOR_TERMS = 16
EPS_ODE = 1e-12
EPS_PELL = 1e-12
EPS_NODE = 1e-11


class DomainError(ValueError):
    """Argument outside [-1, 1]."""


class DegreeError(ValueError):
    """Polynomial degree below what an operation supports."""


class BracketError(RuntimeError):
    """A root bracket without a sign change; points at an evaluation bug."""


def check_degree(n: int, minimum: int = 0) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise DegreeError(f"degree must be an integer, got {n!r}")
    n = int(n)
    if n < minimum:
        raise DegreeError(f"degree n={n} is below the minimum {minimum}")
    return n


def parity(n: int) -> str:
    return "even" if n % 2 == 0 else "odd"


def endpoint_derivative(n: int, order: int, sign: int = 1) -> float:
    """``T_n^{(order)}(sign)`` for ``sign`` in {+1, -1}.

    At ``x = 1`` this is ``prod_{j<order} (n^2 - j^2) / (2j + 1)``; the value at
    ``-1`` picks up ``(-1)^(n + order)``.
    """
    value = 1.0
    for j in range(order):
        value *= (n * n - j * j) / (2 * j + 1)
    if sign < 0 and (n + order) % 2:
        value = -value
    return value


@dataclass(frozen=True)
class ChebValues:
    n: int
    x: np.ndarray | float
    t: np.ndarray | float
    t1: np.ndarray | float
    t2: np.ndarray | float
    t3: np.ndarray | float

    def _w(self):
        return (1 - self.x) * (1 + self.x)

    def ode_residual(self):
        n2 = self.n * self.n
        return self._w() * self.t2 - self.x * self.t1 + n2 * self.t

    def pell_residual(self):
        n2 = self.n * self.n
        return n2 * self.t**2 + self._w() * self.t1**2 - n2

    def ode3_residual(self):
        n2 = self.n * self.n
        return self._w() * self.t3 - 3 * self.x * self.t2 + (n2 - 1) * self.t1


def _taylor_at_end(n: int, order: int, x: np.ndarray, sign: int) -> np.ndarray:
    # sum_j T^{(order+j)}(sign) (x - sign)^j / j!, truncated; exact when n - order < TAYLOR_TERMS
    d = x - sign
    out = np.zeros_like(x)
    power = np.ones_like(x)
    for j in range(min(n - order, TAYLOR_TERMS) + 1):
        out += endpoint_derivative(n, order + j, sign) * power
        power = power * d / (j + 1)
    return out


def eval_cheb(n: int, x):
    """Evaluate ``T_n`` and its first three derivatives at ``x`` (scalar or array)."""
    n = check_degree(n)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(x) > 1) or np.any(np.isnan(x)):
        raise DomainError("eval_cheb needs |x| <= 1")

    n2 = float(n * n)
    theta = np.arccos(x)
    t = np.cos(n * theta)
    t1 = np.empty_like(x)
    t2 = np.empty_like(x)
    t3 = np.empty_like(x)

    zone = n2 * (1 - np.abs(x)) < ENDPOINT_ZONE
    inner = ~zone
    if np.any(inner):
        xi = x[inner]
        th = theta[inner]
        w = (1 - xi) * (1 + xi)
        d1 = n * np.sin(n * th) / np.sin(th)
        d2 = (xi * d1 - n2 * t[inner]) / w
        t1[inner] = d1
        t2[inner] = d2
        t3[inner] = (3 * xi * d2 - (n2 - 1) * d1) / w
    for sign in (1, -1):
        sel = zone & ((x > 0) if sign > 0 else (x <= 0))
        if np.any(sel):
            xs = x[sel]
            t1[sel] = _taylor_at_end(n, 1, xs, sign)
            t2[sel] = _taylor_at_end(n, 2, xs, sign)
            t3[sel] = _taylor_at_end(n, 3, xs, sign)

    if scalar:
        return ChebValues(n, float(x[0]), float(t[0]), float(t1[0]), float(t2[0]), float(t3[0]))
    return ChebValues(n, x, t, t1, t2, t3)


def cheb_recurrence(n: int, x):
    """``T_n`` and derivatives by the differentiated three-term recurrence.

    Independent of :func:`eval_cheb`; used as a cross-check.
    """
    x = np.asarray(x, dtype=float)
    p = [np.ones_like(x), np.zeros_like(x), np.zeros_like(x), np.zeros_like(x)]
    if n == 0:
        return tuple(p)
    q = [x.copy(), np.ones_like(x), np.zeros_like(x), np.zeros_like(x)]
    for _ in range(n - 1):
        r = [2 * x * q[0] - p[0]]
        for d in (1, 2, 3):
            r.append(2 * d * q[d - 1] + 2 * x * q[d] - p[d])
        p, q = q, r
    return tuple(q)


@dataclass(frozen=True)
class NodeSystem:
    """The points ``x_k = cos(k pi / n)``, ``k = 0..n``: zeros of ``(1 - x^2) T_n'``."""

    n: int
    nodes: np.ndarray
    signs: np.ndarray
    t1_first: float
    t1_last: float

    def __len__(self):
        return len(self.nodes)

    @property
    def interior(self) -> np.ndarray:
        return self.nodes[1:-1]


def node_system(n: int) -> NodeSystem:
    n = check_degree(n, 2)
    k = np.arange(n + 1)
    nodes = np.cos(k * np.pi / n)
    # exact at the ends and the symmetric midpoint
    nodes[0], nodes[-1] = 1.0, -1.0
    if n % 2 == 0:
        nodes[n // 2] = 0.0
    nodes[n // 2 + 1 :] = -nodes[: (n + 1) // 2][::-1]
    nodes.setflags(write=False)
    signs = np.where(k % 2 == 0, 1.0, -1.0)
    signs.setflags(write=False)
    return NodeSystem(n, nodes, signs, float(n * n), float((-1) ** (n + 1) * n * n))


def node_second_derivatives(n: int) -> np.ndarray:
    """``T_n''(x_k)`` for ``k = 1..n-1`` from the ODE at zeros of ``T_n'``."""
    k = np.arange(1, n)
    xk = node_system(n).nodes[1:-1]
    return np.where(k % 2 == 1, 1.0, -1.0) * n * n / ((1 - xk) * (1 + xk))


def _bisect(f, lo: float, hi: float) -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f = {flo}, {fhi}")
    return bisect(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=200)


def largest_zero_T2(n: int) -> float:
    """Largest zero of ``T_n''``; it sits in ``(cos(2 pi/n), cos(pi/n))``."""
    n = check_degree(n, 4)
    lo, hi = math.cos(2 * math.pi / n), math.cos(math.pi / n)
    tau = _bisect(lambda x: eval_cheb(n, x).t2, lo, hi)
    residual = abs(eval_cheb(n, tau).t2)
    if residual > EPS_ODE * n**4:
        raise BracketError(f"T_{n}''(tau) = {residual:.3e} is not a root")
    return tau


def zeros_T3_in(n: int, lo: float, hi: float) -> list[float]:
    """All zeros of ``T_n'''`` in the open interval ``(lo, hi)``.

    Scans sign changes on a theta grid of step ``pi / (8n)`` and bisects each.
    """
    n = check_degree(n)
    if not -1 <= lo < hi <= 1:
        raise DomainError(f"need -1 <= lo < hi <= 1, got ({lo}, {hi})")
    if n < 4:
        return []  # constant third derivative
    th_lo, th_hi = math.acos(hi), math.acos(lo)
    steps = max(2, math.ceil((th_hi - th_lo) / (math.pi / (8 * n))))
    xs = np.cos(np.linspace(th_hi, th_lo, steps + 1))  # increasing in x
    xs[0], xs[-1] = lo, hi
    vals = eval_cheb(n, xs).t3

    def f(x):
        return eval_cheb(n, x).t3

    # a zero sitting on an end of the open interval shows up as a rounding-level
    # value there and would otherwise bisect to a point next to the end
    floor = EPS_ODE * float(n) ** 6
    at_end = {lo: abs(vals[0]) <= floor, hi: abs(vals[-1]) <= floor}

    roots = []
    for i in range(len(xs) - 1):
        a, b = xs[i], xs[i + 1]
        va, vb = vals[i], vals[i + 1]
        if va == 0.0:
            if lo < a < hi:
                roots.append(float(a))
            continue
        if va * vb < 0:
            r = float(_bisect(f, a, b))
            if any(flag and abs(r - end) <= EPS_NODE for end, flag in at_end.items()):
                continue
            roots.append(r)
    return roots


def check_t3_relation(n: int, t: float) -> tuple[float, float]:
    """Residuals of the two relations that hold at a zero ``t`` of ``T_n'''``.

    Returns ``(r2, r32)`` where ``r2`` measures ``T'' = (n^2-1) T' / (3t)`` and
    ``r32`` measures ``T'/n^2 = -3t T / (n^2 - 1 - (n^2+2) t^2)``; ``r32`` is
    scaled by ``n^2`` so both are comparable with ``EPS_ODE * n^4``.
    """
    n = check_degree(n, 4)
    n2 = n * n
    denom = n2 - 1 - (n2 + 2) * t * t
    if not denom > 0:
        raise ValueError(f"n^2 - 1 - (n^2 + 2) t^2 = {denom} <= 0 at t = {t}")
    v = eval_cheb(n, t)
    r2 = abs(v.t2 - (n2 - 1) / (3 * t) * v.t1)
    r32 = abs(v.t1 / n2 + 3 * t * v.t / denom) * n2
    return r2, r32
