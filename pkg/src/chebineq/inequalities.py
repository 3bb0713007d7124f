"""The Robertson / Askey-Gasper family of Chebyshev inequalities.

Every member is a combination of ``T_n`` and ``T_n'`` (``PSI`` also uses
``T_n''``) with O(1) coefficients on [-1, 1]:

    F1 = T + 2 - (x + 2) T' / n^2                  (Robertson)
    F2 = T + (x + 3)/2 - 3 (x + 1) T' / (2 n^2)    (Askey-Gasper)
    F3 = (1 - x)(n^2 - T') / n^2
    G(a)  = F1 - a F3
    FA(a) = (1 + a) F1 - F3
    PHI = T + x + 1 - (2x + 1) T' / n^2
    PSI = n^2 - T' - (1 - x) T''

``G(a) >= 0`` on [-1, 1] holds exactly for ``a <= a(n)``, the sharp constant.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import check_degree, eval_cheb, node_system
from .search import dual_grid, golden_section, local_minima

TOL_EQUAL = 1e-10
TOL_EQUAL_CANDIDATE = 1e-6
TOL_VERIFY = 1e-10
DELTA_END = 1e-4
F3_GUARD = 1e-14
CLUSTER_WIDTH = 1e-6


class Kind(enum.Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    G = "G"
    PHI = "PHI"
    PSI = "PSI"
    FA = "FA"


@dataclass(frozen=True)
class InequalityFn:
    kind: Kind
    n: int
    a: float | None = None

    def __post_init__(self):
        check_degree(self.n, 1)
        if self.kind in (Kind.G, Kind.FA):
            if self.a is None or not math.isfinite(self.a):
                raise ValueError(f"{self.kind.value} needs a finite parameter a")
        elif self.a is not None:
            raise ValueError(f"{self.kind.value} takes no parameter")

    @property
    def label(self) -> str:
        if self.a is None:
            return f"{self.kind.value}[n={self.n}]"
        return f"{self.kind.value}(a={self.a!r})[n={self.n}]"

    def __call__(self, x):
        return eval_ineq(self, x)

    def derivative(self, x):
        return eval_ineq_deriv(self, x)


def eval_ineq(fn: InequalityFn, x):
    n2 = float(fn.n * fn.n)
    v = eval_cheb(fn.n, x)
    x = v.x
    f1 = v.t + 2 - (x + 2) / n2 * v.t1
    f3 = (1 - x) * (n2 - v.t1) / n2
    match fn.kind:
        case Kind.F1:
            return f1
        case Kind.F2:
            return v.t + (x + 3) / 2 - 3 * (x + 1) / (2 * n2) * v.t1
        case Kind.F3:
            return f3
        case Kind.G:
            return f1 - fn.a * f3
        case Kind.FA:
            return (1 + fn.a) * f1 - f3
        case Kind.PHI:
            return v.t + x + 1 - (2 * x + 1) / n2 * v.t1
        case Kind.PSI:
            return n2 - v.t1 - (1 - x) * v.t2
    raise AssertionError(fn.kind)


def eval_ineq_deriv(fn: InequalityFn, x):
    """Analytic ``d/dx`` of a family member, from ``T'``, ``T''`` and ``T'''``."""
    n2 = float(fn.n * fn.n)
    v = eval_cheb(fn.n, x)
    x = v.x
    d1 = (1 - 1 / n2) * v.t1 - (x + 2) / n2 * v.t2
    d3 = (v.t1 - (1 - x) * v.t2) / n2 - 1
    match fn.kind:
        case Kind.F1:
            return d1
        case Kind.F2:
            return (1 - 1.5 / n2) * v.t1 + 0.5 - 1.5 * (x + 1) / n2 * v.t2
        case Kind.F3:
            return d3
        case Kind.G:
            return d1 - fn.a * d3
        case Kind.FA:
            return (1 + fn.a) * d1 - d3
        case Kind.PHI:
            return (1 - 2 / n2) * v.t1 + 1 - (2 * x + 1) / n2 * v.t2
        case Kind.PSI:
            return (x - 1) * v.t3
    raise AssertionError(fn.kind)


def phi_at_zero(n: int) -> float:
    """``PHI(0)`` from its four-case table in ``n mod 4``.

    The rational entries are returned as single correctly rounded quotients.
    """
    n = check_degree(n, 1)
    r = n % 4
    if r == 0:
        return 2.0
    if r == 1:
        return (n - 1) / n
    if r == 2:
        return 0.0
    return (n + 1) / n


@dataclass(frozen=True)
class SharpConstant:
    n: int
    value: float
    branch: str  # "trivial", "even" or "odd"


def sharp_constant_closed(n: int) -> SharpConstant:
    n = check_degree(n, 2)
    if n == 2:
        return SharpConstant(n, 1.0, "trivial")
    if n == 3:
        return SharpConstant(n, 2.0, "trivial")
    if n % 2 == 0:
        return SharpConstant(n, 1 / (1 + math.cos(math.pi / n)), "even")
    return SharpConstant(n, 1 / (1 + math.cos(2 * math.pi / n)), "odd")


def fa_parameter(n: int) -> float:
    """The ``FA`` parameter matching ``a(n)``: ``cos(pi/n)`` or ``cos(2 pi/n)``."""
    n = check_degree(n, 4)
    return math.cos(math.pi / n) if n % 2 == 0 else math.cos(2 * math.pi / n)


def predicted_equality_points(n: int) -> list[float]:
    """Zeros of ``G(a(n))`` on [-1, 1] for ``n >= 4``, in increasing order."""
    n = check_degree(n, 4)
    if n % 2 == 0:
        return [-math.cos(math.pi / n), 1.0]
    return [-1.0, -math.cos(2 * math.pi / n), 1.0]


def default_grid(n: int) -> int:
    return 20 * n + 1


def ratio_minimum(n: int, grid: int | None = None) -> tuple[float, float]:
    """Infimum of ``F1 / F3`` on ``[-1, 1 - DELTA_END]`` and where it is attained.

    ``G(a) = F1 - a F3`` is affine and decreasing in ``a`` with ``F3 >= 0``, so
    this infimum is the largest admissible ``a``.
    """
    n = check_degree(n, 2)
    f1 = InequalityFn(Kind.F1, n)
    f3 = InequalityFn(Kind.F3, n)

    def ratio(x):
        den = f3(x)
        num = f1(x)
        out = np.full(np.shape(den), np.inf)
        ok = den >= F3_GUARD
        out[ok] = num[ok] / den[ok]
        return out

    hi = 1 - DELTA_END
    xs = dual_grid(-1.0, hi, max(grid or default_grid(n), 2001))
    vals = ratio(xs)
    idx = local_minima(vals)
    idx = idx[np.isfinite(vals[idx])]
    last = len(xs) - 1
    lo_b = xs[np.maximum(idx - 1, 0)]
    hi_b = xs[np.minimum(idx + 1, last)]
    xr, fr = golden_section(ratio, lo_b, hi_b)
    best = int(np.argmin(fr))
    return float(fr[best]), float(xr[best])


def sharp_constant_numeric(n: int, grid: int | None = None) -> float:
    return ratio_minimum(n, grid)[0]


@dataclass
class VerificationReport:
    label: str
    interval: tuple[float, float]
    grid_points: int
    min_value: float
    argmin: float
    equality_points: list[float]
    violations: list[tuple[float, float]]
    passed: bool
    identically_zero: bool = False
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "interval": list(self.interval),
            "grid_points": self.grid_points,
            "min_value": self.min_value,
            "argmin": self.argmin,
            "equality_points": list(self.equality_points),
            "violations": [list(v) for v in self.violations],
            "passed": self.passed,
            "identically_zero": self.identically_zero,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            label=d["label"],
            interval=tuple(d["interval"]),
            grid_points=d["grid_points"],
            min_value=d["min_value"],
            argmin=d["argmin"],
            equality_points=list(d["equality_points"]),
            violations=[tuple(v) for v in d["violations"]],
            passed=d["passed"],
            identically_zero=d["identically_zero"],
            notes=list(d["notes"]),
        )


def _clusters(xs, fs, width: float = CLUSTER_WIDTH, key=abs) -> list[tuple[float, float]]:
    # merge points closer than width, keep the representative minimising key(f)
    order = np.argsort(xs)
    groups: list[list[int]] = []
    for i in order:
        if groups and xs[i] - xs[groups[-1][-1]] <= width:
            groups[-1].append(i)
        else:
            groups.append([i])
    reps = []
    for g in groups:
        j = min(g, key=lambda i: key(fs[i]))
        reps.append((float(xs[j]), float(fs[j])))
    return reps


def scan_nonneg(f, lo: float, hi: float, grid: int, tol: float, label: str,
                tol_equal: float = TOL_EQUAL) -> VerificationReport:
    """Grid scan plus refinement of every sampled local minimum of ``f``."""
    if not -1 <= lo < hi <= 1:
        raise ValueError(f"need -1 <= lo < hi <= 1, got ({lo}, {hi})")
    if grid < 2:
        raise ValueError("grid must have at least 2 points")
    xs = dual_grid(lo, hi, grid)
    vals = np.asarray(f(xs), dtype=float)
    idx = local_minima(vals)
    last = len(xs) - 1
    xr, fr = golden_section(f, xs[np.maximum(idx - 1, 0)], xs[np.minimum(idx + 1, last)])

    allx = np.concatenate([xs, xr])
    allf = np.concatenate([vals, fr])
    k = int(np.argmin(allf))
    report = VerificationReport(
        label=label,
        interval=(float(lo), float(hi)),
        grid_points=len(xs),
        min_value=float(allf[k]),
        argmin=float(allx[k]),
        equality_points=[],
        violations=[],
        passed=bool(allf[k] >= -tol),
    )
    if np.mean(np.abs(vals) <= tol_equal) > 0.5:
        report.identically_zero = True
        report.notes.append("identically zero on the grid")
    else:
        eq = np.abs(fr) <= tol_equal
        points = [x for x, _ in _clusters(xr[eq], fr[eq])]
        for end, fend in ((lo, vals[0]), (hi, vals[-1])):
            if abs(fend) <= tol_equal:
                points = [end if abs(x - end) <= CLUSTER_WIDTH else x for x in points]
        report.equality_points = points
    bad = fr < -tol
    report.violations = _clusters(xr[bad], fr[bad], key=float)
    return report


def verify_nonneg(fn: InequalityFn, lo: float = -1.0, hi: float = 1.0,
                  grid: int | None = None, tol: float = TOL_VERIFY) -> VerificationReport:
    report = scan_nonneg(fn, lo, hi, grid or default_grid(fn.n), tol, fn.label)
    if fn.kind in (Kind.G, Kind.FA) and fn.n in (2, 3):
        report.notes.append("trivial case")
    return report


def witness_index(n: int) -> int:
    """Node where ``G(a)`` first goes negative once ``a > a(n)``."""
    return n - 1 if n % 2 == 0 else n - 2


def falsify_sharpness(n: int, delta: float) -> tuple[float, float]:
    """``(x, G(a(n) + delta; x))`` at the witness node; the value is negative."""
    n = check_degree(n, 4)
    if not delta > 0:
        raise ValueError("delta must be positive")
    x = float(node_system(n).nodes[witness_index(n)])
    a = sharp_constant_closed(n).value + delta
    return x, float(InequalityFn(Kind.G, n, a)(x))
