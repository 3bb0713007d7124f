"""Bracketed minimisation and grid helpers shared by the verifiers."""
from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2


def golden_section(f, lo, hi, iters: int = 80):
    """Vectorised golden-section search.

    ``f`` maps an array of abscissae to an array of values.  ``lo`` and ``hi``
    are arrays of bracket ends, each bracket assumed unimodal.  Returns
    ``(x, f(x))`` for the best point seen per bracket, bracket ends included,
    so minima sitting on an end are found exactly.
    """
    a = np.array(lo, dtype=float, ndmin=1)
    b = np.array(hi, dtype=float, ndmin=1)
    fa, fb = f(a), f(b)
    best_x = np.where(fa <= fb, a, b)
    best_f = np.minimum(fa, fb)

    c = a + INV_PHI2 * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        left = fc < fd
        # minimum in [a, d] when f(c) < f(d), else in [c, b]
        a, b = np.where(left, a, c), np.where(left, d, b)
        kept, kept_f = np.where(left, c, d), np.where(left, fc, fd)
        probe = np.where(left, a + INV_PHI2 * (b - a), a + INV_PHI * (b - a))
        fp = f(probe)
        c, fc = np.where(left, probe, kept), np.where(left, fp, kept_f)
        d, fd = np.where(left, kept, probe), np.where(left, kept_f, fp)
    for x, fx in ((c, fc), (d, fd)):
        better = fx < best_f
        best_x = np.where(better, x, best_x)
        best_f = np.where(better, fx, best_f)
    return best_x, best_f


def dual_grid(lo: float, hi: float, size: int) -> np.ndarray:
    """Sorted union of a uniform grid in ``x`` and one in ``theta = arccos x``."""
    xs = np.linspace(lo, hi, size)
    th = np.linspace(math.acos(hi), math.acos(lo), size)
    xt = np.clip(np.cos(th), lo, hi)
    return np.unique(np.concatenate([xs, xt, [lo, hi]]))


def local_minima(values: np.ndarray) -> np.ndarray:
    """Indices of sampled local minima, ends included (one-sided there)."""
    v = np.asarray(values)
    m = len(v)
    if m == 1:
        return np.array([0])
    left = np.empty(m, dtype=bool)
    right = np.empty(m, dtype=bool)
    left[0] = True
    left[1:] = v[1:] <= v[:-1]
    right[-1] = True
    right[:-1] = v[:-1] <= v[1:]
    return np.flatnonzero(left & right)
