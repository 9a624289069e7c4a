"""Internal quadrature helpers.

Thin wrappers around scipy's adaptive Gauss-Kronrod rule plus the two
truncation policies used everywhere in this package: improper integrals over
the line / R^n are cut at 12 standard widths of the dominating Gaussian
factor, and slowly decaying tails are integrated over doubling windows until
a rigorous bound on the remainder drops below a relative threshold.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

# absolute tolerance per adaptive integral; entropy defects at 1e-8 must be
# resolvable, so individual integrals are pushed well below that
EPSABS = 1e-12
EPSREL = 1e-11

TAIL_WIDTHS = 12.0  # Gaussian tails are analytically dominated past this


def quad_ab(f, a: float, b: float, limit: int = 200, points=None) -> tuple[float, float]:
    """Adaptive integral of f over [a, b]; returns (value, error estimate).

    ``points`` marks interior breakpoints (profile cutoffs and similar kinks)
    so the adaptive rule does not chase spurious roundoff around them.
    """
    if points is not None:
        points = [p for p in points if a < p < b]
        if not points:
            points = None
    val, err = quad(f, a, b, epsabs=EPSABS, epsrel=EPSREL, limit=limit, points=points)
    return val, err


def quad_log(f, a: float, b: float, limit: int = 200) -> tuple[float, float]:
    """Adaptive integral over [a, b] in the log variable (a, b > 0)."""
    val, err = quad(
        lambda s: f(math.exp(s)) * math.exp(s),
        math.log(a),
        math.log(b),
        epsabs=EPSABS,
        epsrel=EPSREL,
        limit=limit,
    )
    return val, err


def quad_doubling_tail(f, start: float, bound_fn, rel_tail: float = 1e-12,
                       running: float = 0.0, factor: float = 4.0,
                       max_windows: int = 200) -> tuple[float, float, float]:
    """Integrate f over [start, inf) on doubling windows in log scale.

    ``bound_fn(T)`` must return a rigorous upper bound for the remaining
    integral past T. Stops once that bound drops below rel_tail times the
    running total. Returns (value, quadrature error, final tail bound).
    """
    total = running
    acc = 0.0
    err = 0.0
    lo = start
    for _ in range(max_windows):
        hi = lo * factor
        v, e = quad_log(f, lo, hi)
        acc += v
        err += e
        total += v
        lo = hi
        b = bound_fn(lo)
        if b < rel_tail * max(total, 1e-300):
            return acc, err, b
    raise RuntimeError("tail integration exhausted its window budget")


@lru_cache(maxsize=32)
def leggauss(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Cached Gauss-Legendre nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(k)
    return x, w


def leggauss_ab(k: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [a, b]."""
    x, w = leggauss(k)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), w * half


def gaussian_cutoff(width: float, floor: float = 1.0) -> float:
    """Truncation radius for integrands dominated by exp(-(x/width)^2 / 2)."""
    return TAIL_WIDTHS * max(width, floor / TAIL_WIDTHS)
